#include "doctest.h"

#include "dnls/direct.hpp"
#include "dnls/errors.hpp"
#include "dnls/oracle.hpp"

#include <cmath>

using namespace dnls;

namespace {

// Canonical family member, closed form evaluated at 30 digits and rounded.
struct TVRef {
    cplx lambda, alpha_bar, beta_bar;
};
const TVRef tv_ref[] = {
    {cplx(1.0, 0.0), cplx(0.86286931383703178, -0.28544573686404771), cplx(-0.36055357774192827, -0.20971026708782306)},
    {cplx(0.0, 0.0), cplx(0.93589682367793486, 0.35227423327508998), cplx(-1.1250414484346319, -0.0004054778037137233)},
    {cplx(-2.5, 0.0), cplx(0.9992450376226432, 0.038930794482382768),
     cplx(-0.00085531712379154699, -0.0013301209045084002)},
    {cplx(0.5, 0.5), cplx(0.799181319146915, 0.015709988016620902), cplx(-0.24048768156088628, 1.1324383885843349)},
};

const Grid& tv_grid()
{
    static const Grid g(-30.0, 30.0, 1201);
    return g;
}

const JostSolver& tv_solver()
{
    static const JostSolver s(tv_potential(TVParameters{}, tv_grid()));
    return s;
}

PotentialSamples gaussian(const Grid& g, double amp, int eps)
{
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        v[i] = amp * std::exp(-g[i] * g[i]) * std::polar(1.0, 0.5 * g[i]);
    return PotentialSamples(g, v, eps);
}

} // namespace

TEST_CASE("closed-form scattering data against reference values")
{
    const TVParameters p;
    for (const auto& r : tv_ref) {
        CAPTURE(r.lambda);
        const auto s = tv_scattering(p, r.lambda);
        CHECK(std::abs(s.alpha_bar - r.alpha_bar) < 1e-12);
        CHECK(std::abs(s.beta_bar - r.beta_bar) < 1e-12);
    }
}

TEST_CASE("marched transition entries match the closed form")
{
    const TVParameters p;
    for (const auto& r : tv_ref) {
        if (r.lambda.imag() != 0.0)
            continue;
        CAPTURE(r.lambda);
        const auto t = tv_solver().transition(r.lambda.real());
        // on the real line alpha = conj(alpha_bar), beta = conj(beta_bar)
        CHECK(std::abs(t.alpha - std::conj(r.alpha_bar)) < 1e-9);
        CHECK(std::abs(t.beta - std::conj(r.beta_bar)) < 1e-9);
    }
    CHECK(std::abs(tv_solver().breve_alpha(cplx(0.5, 0.5)) - tv_ref[3].alpha_bar) < 1e-9);
}

TEST_CASE("marched Jost columns match the closed form at interior points")
{
    const TVParameters p;
    for (cplx lam : {cplx(1.0), cplx(-0.4), cplx(3.0)}) {
        const auto tp = tv_solver().plus_trace(lam);
        const auto tm = tv_solver().minus_trace(lam);
        REQUIRE(!tp.x.empty());
        REQUIRE(!tm.x.empty());
        double err = 0.0;
        for (std::size_t i = 0; i < tp.x.size(); ++i) {
            if (std::abs(tp.x[i]) > 8.0)
                continue;
            const auto cf = tv_jost_closed_form(p, tp.x[i], lam);
            err = std::max({err, std::abs(cf.n11_plus - tp.n11[i]), std::abs(cf.n21_plus - tp.n21[i])});
        }
        for (std::size_t i = 0; i < tm.x.size(); ++i) {
            if (std::abs(tm.x[i]) > 8.0)
                continue;
            const auto cf = tv_jost_closed_form(p, tm.x[i], lam);
            err = std::max({err, std::abs(cf.n11_minus - tm.n11[i]), std::abs(cf.n21_minus - tm.n21[i])});
        }
        CAPTURE(lam);
        CHECK(err < 1e-9);
    }
}

TEST_CASE("unimodularity |alpha|^2 - eps lambda |beta|^2 = 1")
{
    const Grid lg(-8.0, 8.0, 81);
    const JostSolver gs(gaussian(tv_grid(), 0.3, -1));
    const JostSolver gp(gaussian(tv_grid(), 0.3, 1));
    for (const JostSolver* s : {&tv_solver(), &gs, &gp}) {
        const int eps = s->potential().epsilon;
        double err = 0.0;
        for (std::size_t i = 0; i < lg.size(); ++i) {
            const auto t = s->transition(lg[i]);
            err = std::max(err, std::abs(std::norm(t.alpha) - eps * lg[i] * std::norm(t.beta) - 1.0));
        }
        CHECK(err < 1e-10);
    }
}

TEST_CASE("zero potential has trivial scattering")
{
    const Grid g(-10.0, 10.0, 201);
    const PotentialSamples q(g, std::vector<cplx>(g.size(), 0.0), -1);
    for (double lam : {-2.0, 0.0, 0.3, 5.0}) {
        const auto t = transition_entries(q, lam);
        CHECK(std::abs(t.alpha - 1.0) < 1e-15);
        CHECK(std::abs(t.beta) < 1e-15);
    }
}

TEST_CASE("constant phase rotation multiplies rho by the same phase")
{
    // q -> e^{i theta} q conjugates the system by diag(1, e^{-i theta}), so rho -> e^{i theta} rho.
    const Grid g(-20.0, 20.0, 801);
    const auto q = gaussian(g, 0.4, -1);
    const cplx ph = std::polar(1.0, 0.7);
    std::vector<cplx> v = q.values;
    for (auto& z : v)
        z *= ph;
    const PotentialSamples qr(g, v, -1);
    const Grid lg(-4.0, 4.0, 17);
    const auto r0 = reflection(q, lg), r1 = reflection(qr, lg);
    for (std::size_t i = 0; i < lg.size(); ++i)
        CHECK(std::abs(r1.values[i] - ph * r0.values[i]) < 1e-11);
}

TEST_CASE("reflection coefficient matches the closed form on a coarse grid")
{
    const Grid lg(-8.0, 8.0, 33);
    const auto r = reflection(tv_solver(), lg);
    const auto c = tv_reflection(TVParameters{}, lg);
    for (std::size_t i = 0; i < lg.size(); ++i)
        CHECK(std::abs(r.values[i] - c.values[i]) < 1e-9);
}

TEST_CASE("input validation")
{
    const Grid g(-10.0, 10.0, 201);
    std::vector<cplx> v(g.size(), 0.0);
    v.back() = 1e-3; // non-decaying tail
    CHECK_THROWS_AS(PotentialSamples(g, v, -1), InvalidArgument);
    CHECK_THROWS_AS(PotentialSamples(g, std::vector<cplx>(g.size(), 0.0), 0), InvalidArgument);
    // grid without x = 0 in range
    const Grid off(1.0, 20.0, 201);
    CHECK_THROWS_AS(JostSolver(PotentialSamples(off, std::vector<cplx>(off.size(), 0.0), -1)), InvalidArgument);
    // 1 - eps lambda |rho|^2 <= 0
    const Grid lg(-1.0, 1.0, 9);
    std::vector<cplx> rho(lg.size(), 0.0);
    rho[8] = 2.0;
    CHECK_THROWS_AS(ReflectionCoefficient(lg, rho, 1), MembershipError);
    CHECK_NOTHROW(ReflectionCoefficient(lg, rho, -1));
}
