#include "dnls/special.hpp"

#include "dnls/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace dnls {

namespace {

constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_p = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_pole(cplx z)
{
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

cplx lanczos_log_gamma(cplx z)
{
    z -= 1.0;
    cplx x = lanczos_p[0];
    for (std::size_t i = 1; i < lanczos_p.size(); ++i)
        x += lanczos_p[i] / (z + static_cast<double>(i));
    const cplx t = z + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// sin(pi z) with the argument reduced modulo 2 for accuracy near integers.
cplx sin_pi(cplx z)
{
    const double xr = std::remainder(z.real(), 2.0);
    const double y = std::numbers::pi * z.imag();
    const double px = std::numbers::pi * xr;
    return {std::sin(px) * std::cosh(y), std::cos(px) * std::sinh(y)};
}

} // namespace

cplx log_gamma(cplx z)
{
    if (is_pole(z))
        throw InvalidArgument("log_gamma: pole at a non-positive integer");
    if (z.real() >= 0.5)
        return lanczos_log_gamma(z);

    // Reflection fixes the value modulo 2 pi i; the branch is chosen to match
    // the recurrence log Gamma(z) = log Gamma(z + n) - sum log(z + k), whose
    // imaginary part is continuous along the shift.
    cplx r = std::log(std::numbers::pi) - std::log(sin_pi(z)) - lanczos_log_gamma(1.0 - z);
    const int n = static_cast<int>(std::ceil(0.5 - z.real()));
    double im = lanczos_log_gamma(z + static_cast<double>(n)).imag();
    for (int k = 0; k < n; ++k)
        im -= std::arg(z + static_cast<double>(k));
    const double turns = std::round((im - r.imag()) / (2.0 * std::numbers::pi));
    r += cplx(0.0, 2.0 * std::numbers::pi * turns);
    return r;
}

cplx rgamma(cplx z)
{
    if (is_pole(z))
        return 0.0;
    if (z.real() >= 0.5)
        return std::exp(-lanczos_log_gamma(z));
    // 1/Gamma(z) = Gamma(1 - z) sin(pi z) / pi keeps the zeros exact.
    return std::exp(lanczos_log_gamma(1.0 - z)) * sin_pi(z) / std::numbers::pi;
}

cplx hyp2f1_series(const HypergeometricParams& p, double s)
{
    if (s == 0.0)
        return 1.0;
    if (!(std::abs(s) < 1.0))
        throw InvalidArgument("hyp2f1_series: requires |s| < 1");
    cplx term = 1.0, sum = 1.0;
    for (int n = 0; n < 200; ++n) {
        const double dn = static_cast<double>(n);
        const cplx den = (p.c + dn) * (dn + 1.0);
        if (den == cplx(0.0))
            throw InvalidArgument("hyp2f1: c is a non-positive integer");
        term *= (p.a + dn) * (p.b + dn) / den * s;
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum) || term == cplx(0.0))
            return sum;
    }
    if (std::abs(term) > 1e-13 * std::max(1.0, std::abs(sum)))
        throw NumericalError("hyp2f1: series did not converge in 200 terms");
    return sum;
}

cplx hyp2f1_connection(const HypergeometricParams& p, double s)
{
    const cplx a = p.a, b = p.b, c = p.c;
    const cplx d = c - a - b;
    if (std::abs(d - std::round(d.real())) < 1e-8)
        throw NumericalError("hyp2f1: c - a - b too close to an integer for the connection formula");
    const double t = 1.0 - s;
    const cplx lg_c = log_gamma(c);
    const cplx A1 = std::exp(lg_c + log_gamma(d)) * rgamma(c - a) * rgamma(c - b);
    const cplx A2 = std::exp(lg_c + log_gamma(-d)) * rgamma(a) * rgamma(b);
    const cplx w3 = hyp2f1_series({a, b, 1.0 - d}, t);
    const cplx w4 = std::pow(cplx(t), d) * hyp2f1_series({c - a, c - b, 1.0 + d}, t);
    return A1 * w3 + A2 * w4;
}

cplx hyp2f1(const HypergeometricParams& p, double s)
{
    if (!(s >= 0.0 && s < 1.0))
        throw InvalidArgument("hyp2f1: requires 0 <= s < 1");
    if (is_pole(p.c))
        throw InvalidArgument("hyp2f1: c is a non-positive integer");
    return s <= 0.5 ? hyp2f1_series(p, s) : hyp2f1_connection(p, s);
}

cplx branch_root_R(cplx lambda, int eps, double mu, double nu)
{
    if (!(nu > 0.0))
        throw InvalidArgument("branch_root_R: nu must be positive");
    const double m = mu / nu;
    return std::sqrt(lambda - static_cast<double>(eps) * m * m);
}

} // namespace dnls
