#pragma once

#include "dnls/spectrum.hpp"

namespace dnls {

// Linear flow on scattering data: rho(lambda) -> exp(-4 i lambda^2 t) rho(lambda),
// lambda_j fixed, C_j -> exp(4 i lambda_j^2 t) C_j.
ScatteringData evolve(const ScatteringData& data, double t);

} // namespace dnls
