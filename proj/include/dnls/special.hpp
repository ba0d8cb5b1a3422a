#pragma once

#include <complex>

namespace dnls {

using cplx = std::complex<double>;

// Principal branch of log Gamma(z). Lanczos (g = 7, 9 terms) for Re z >= 1/2,
// reflection otherwise. Throws InvalidArgument at the poles z = 0, -1, -2, ...
cplx log_gamma(cplx z);

// 1/Gamma(z); entire, exactly zero at the poles of Gamma.
cplx rgamma(cplx z);

struct HypergeometricParams {
    cplx a, b, c;
};

// Gauss 2F1(a, b; c; s) for 0 < s < 1 (s = 0 allowed). Power series for
// s <= 1/2, connection formula onto the (1 - s) series above. Throws
// NumericalError when c - a - b is within 1e-8 of an integer on the
// connection path or when 200 terms do not reach 1e-13.
cplx hyp2f1(const HypergeometricParams& p, double s);

// The two evaluation routes, exposed for cross-checking.
cplx hyp2f1_series(const HypergeometricParams& p, double s);
cplx hyp2f1_connection(const HypergeometricParams& p, double s);

// R(lambda) = principal sqrt(lambda - eps (mu/nu)^2).
cplx branch_root_R(cplx lambda, int eps, double mu, double nu);

} // namespace dnls
