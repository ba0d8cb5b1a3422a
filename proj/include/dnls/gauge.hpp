#pragma once

#include "dnls/potential.hpp"

namespace dnls {

// q(x) = exp(i eps int_x^inf |u|^2) u(x); the integral is a cumulative
// trapezoid from the right end of the grid.
PotentialSamples gauge_forward(const PotentialSamples& u);
// u(x) = exp(-i eps int_x^inf |q|^2) q(x), using |q| = |u|.
PotentialSamples gauge_inverse(const PotentialSamples& q);
// u(x) -> u(-x) with eps -> -eps. Requires a grid symmetric about 0.
PotentialSamples reflect_epsilon(const PotentialSamples& u);

} // namespace dnls
