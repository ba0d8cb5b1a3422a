#pragma once

#include "dnls/grid.hpp"

#include <vector>

namespace dnls {

// Throws InvalidArgument unless eps is +1 or -1.
int check_epsilon(int eps);

// Samples of q (or u) on a uniform x-grid, tagged with the sign eps.
struct PotentialSamples {
    Grid grid;
    std::vector<cplx> values;
    int epsilon;

    // Asserts finite values and |q| <= tail_tol at both grid ends.
    PotentialSamples(Grid g, std::vector<cplx> v, int eps, double tail_tol = 1e-10);

    double l2_norm_squared() const;
};

} // namespace dnls
