#pragma once

#include "dnls/direct.hpp"

#include <functional>
#include <vector>

namespace dnls {

struct DiscretePair {
    cplx lambda; // Im > 0
    cplx C;      // nonzero
};

struct ScatteringData {
    ReflectionCoefficient rho;
    std::vector<DiscretePair> pairs;
    int epsilon;

    // Checks Im lambda_j > 0, C_j != 0, distinct eigenvalues, eps matching rho.
    void validate() const;
};

struct Rectangle {
    double re_min = -8.0, re_max = 8.0;
    double im_min = 1e-3, im_max = 8.0;

    void validate() const; // im_min > 0, nonempty
};

cplx breve_alpha(const PotentialSamples& q, cplx lambda);

// Winding number of alpha-breve around the rectangle. The boundary is refined
// until consecutive phase increments stay below pi/4; ContourError when
// |alpha-breve| < 1e-6 on a boundary sample.
int count_zeros(const JostSolver& solver, const Rectangle& r);
int count_zeros(const PotentialSamples& q, const Rectangle& r);

// Simple zeros by quadrisection down to isolated cells, then Newton with the
// Cauchy-circle derivative. Ordered by modulus, then by phase.
std::vector<cplx> find_zeros(const JostSolver& solver, const Rectangle& r, double tol = 1e-11);
std::vector<cplx> find_zeros(const PotentialSamples& q, const Rectangle& r, double tol = 1e-11);

// f'(lambda0) = (1/2 pi i) int f(z)/(z - lambda0)^2 dz by the M-point periodic
// trapezoid rule on |z - lambda0| = radius.
cplx alpha_prime_at(const std::function<cplx(cplx)>& f, cplx lambda0, double radius, int points = 32);
cplx alpha_prime_at(const JostSolver& solver, cplx lambda0, double radius, int points = 32);
cplx alpha_prime_at(const PotentialSamples& q, cplx lambda0, double radius, int points = 32);

struct NormingDetail {
    cplx B, alpha_prime, C;
    double ratio_mismatch; // relative disagreement of the two component ratios (0 if only one usable)
};

// C_j = B_j / alpha-breve'(lambda_j), B_j from N1-(lambda_j) = B_j lambda_j e^{2 i lambda_j x} N2+(lambda_j).
NormingDetail norming_detail(const JostSolver& solver, cplx lambda_j);
cplx norming_constant(const JostSolver& solver, cplx lambda_j);
cplx norming_constant(const PotentialSamples& q, cplx lambda_j);

ScatteringData scattering_transform(const JostSolver& solver, const Grid& lambda_grid, const Rectangle& r = {});
ScatteringData scattering_transform(const PotentialSamples& q, const Grid& lambda_grid, const Rectangle& r = {});

} // namespace dnls
