#include "doctest.h"

#include "dnls/direct.hpp"
#include "dnls/errors.hpp"
#include "dnls/inverse.hpp"
#include "dnls/oracle.hpp"

#include <cmath>
#include <numbers>

using namespace dnls;

namespace {

PotentialSamples gaussian(const Grid& g, double amp, int eps)
{
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        v[i] = amp * std::exp(-g[i] * g[i]);
    return PotentialSamples(g, v, eps);
}

double sup_norm(const std::vector<cplx>& v)
{
    double m = 0.0;
    for (cplx z : v)
        m = std::max(m, std::abs(z));
    return m;
}

} // namespace

TEST_CASE("family potential: norm and specialization")
{
    const TVParameters p;
    CHECK(std::abs(tv_potential(p, Grid(-20.0, 20.0, 2001), 1e-8).l2_norm_squared() - 0.72) < 1e-8);
    const Grid g(-15.0, 15.0, 301);
    const auto q = tv_potential({0.8, 0.0, 0.0, 0.0, 1}, g, 1e-6);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g[i];
        const cplx expect = 0.8 / std::cosh(x) * std::polar(1.0, -0.64 * std::tanh(x));
        CHECK(std::abs(q.values[i] - expect) < 1e-14);
        CHECK(std::abs(q.values[i]) == doctest::Approx(std::abs(q.values[g.size() - 1 - i])).epsilon(1e-14));
    }
    CHECK_THROWS_AS(tv_potential({0.0, 0.3, 0.4, 0.0, -1}, g), InvalidArgument);
}

TEST_CASE("closed-form scattering identities")
{
    const TVParameters p;
    const Grid lg(-8.0, 8.0, 161);
    for (std::size_t i = 0; i < lg.size(); ++i) {
        const double l = lg[i];
        const auto s = tv_scattering(p, l);
        // on the real line |alpha|^2 - eps lambda |beta|^2 = 1
        CHECK(std::abs(std::norm(s.alpha_bar) - p.epsilon * l * std::norm(s.beta_bar) - 1.0) < 1e-10);
        const auto abc = tv_hypergeometric_params(p, l);
        CHECK(std::abs(abc.c.real() - 0.5) < 1e-15);
        // a <-> b swap
        const auto sw = tv_scattering(p, HypergeometricParams{abc.b, abc.a, abc.c});
        CHECK(sw.alpha_bar == s.alpha_bar);
        CHECK(sw.beta_bar == s.beta_bar);
    }
    // rho is admissible for soliton-free data
    const auto r = tv_reflection(p, lg);
    for (std::size_t i = 0; i < lg.size(); ++i)
        CHECK(1.0 - p.epsilon * lg[i] * std::norm(r.values[i]) > 0.0);
}

TEST_CASE("hypergeometric parameters")
{
    const TVParameters p{1.1, 0.2, -0.3, 0.5, 1};
    for (cplx l : {cplx(0.7, 0.0), cplx(-2.0, 0.4), cplx(0.0, 1.0)}) {
        const auto abc = tv_hypergeometric_params(p, l);
        CHECK(std::abs(abc.a + abc.b - cplx(0.0, 2.0 * p.mu)) < 1e-14);
        CHECK(std::abs(abc.a * abc.b - p.epsilon * p.nu * p.nu * l) < 1e-13);
        CHECK(std::abs(abc.c - (-cplx(0.0, 1.0) * l + cplx(0.0, p.mu + p.delta) + 0.5)) < 1e-15);
    }
}

TEST_CASE("Born approximation")
{
    const Grid g(-20.0, 20.0, 801);
    const Grid lg(-8.0, 8.0, 33);
    const PotentialSamples zero(g, std::vector<cplx>(g.size(), 0.0), -1);
    CHECK(sup_norm(born_reflection(zero, 1e-3, lg).values) == 0.0);
    // the integral of a unit Gaussian: -mu sqrt(pi) exp(-lambda^2)
    const auto phi = gaussian(g, 1.0, -1);
    const auto b = born_reflection(phi, 1e-3, lg);
    for (std::size_t i = 0; i < lg.size(); ++i)
        CHECK(std::abs(b.values[i] + 1e-3 * std::sqrt(std::numbers::pi) * std::exp(-lg[i] * lg[i])) < 1e-15);
    CHECK(std::abs(b.values.front()) <= 1e-4);
    CHECK(std::abs(b.values.back()) <= 1e-4);
    // first-order agreement with the full map
    const auto full = reflection(gaussian(g, 1e-3, -1), lg);
    double e = 0.0;
    for (std::size_t i = 0; i < lg.size(); ++i)
        e = std::max(e, std::abs(full.values[i] - b.values[i]));
    CHECK(e < 1e-8);
}

TEST_CASE("split-step integrator")
{
    const Grid g(-20.0, 20.0, 512);
    const PotentialSamples zero(g, std::vector<cplx>(g.size(), 0.0), -1);
    CHECK(sup_norm(splitstep_evolve(zero, 0.5, 1e-2).values) == 0.0);
    const auto q0 = gaussian(g, 0.3, -1);
    const auto q1 = splitstep_evolve(q0, 0.5, 1e-2);
    CHECK(std::abs(q1.l2_norm_squared() - q0.l2_norm_squared()) < 1e-6);
    // halving the step changes the answer far below the acceptance tolerance
    const auto a = splitstep_fixed(q0, 0.25, 200), b = splitstep_fixed(q0, 0.25, 400);
    double e = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        e = std::max(e, std::abs(a.values[i] - b.values[i]));
    CHECK(e < 1e-4);
}

TEST_CASE("split-step transports a soliton at speed -4 Re lambda")
{
    // |q| depends on x only through |C e^{2 i lambda x}|, and |C(t)| = |C| e^{-4 Im(lambda^2) t}.
    const Grid g(-30.0, 30.0, 1024);
    const cplx lam(0.5, 0.8);
    const std::vector<DiscretePair> pair{{lam, cplx(1.0, 0.3)}};
    const double t = 0.5, v = -4.0 * lam.real();
    for (int eps : {-1, 1}) {
        const auto q0 = reflectionless_inverse(pair, eps, g);
        const auto qt = splitstep_evolve(PotentialSamples(g, q0.values, eps, 1e-9), t, 1e-2);
        double e = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            e = std::max(e, std::abs(std::abs(qt.values[i]) - std::abs(reflectionless_point(pair, eps, g[i] - v * t))));
        CAPTURE(eps);
        CHECK(e < 1e-3);
    }
}
