#include "doctest.h"

#include "dnls/errors.hpp"
#include "dnls/evolution.hpp"
#include "dnls/inverse.hpp"
#include "dnls/oracle.hpp"
#include "dnls/spectrum.hpp"

#include <cmath>
#include <numbers>

using namespace dnls;

namespace {

const Rectangle search_box{-6.0, 6.0, 1e-3, 6.0};

const Grid& xgrid()
{
    static const Grid g(-30.0, 30.0, 1201);
    return g;
}

// Reference eigenvalues and norming constants from the closed form at 30 digits.
struct EigRef {
    cplx lambda, C;
};

void check_pairs(const TVParameters& p, const std::vector<EigRef>& ref)
{
    const JostSolver s(tv_potential(p, xgrid(), 1e-8));
    CHECK(count_zeros(s, search_box) == static_cast<int>(ref.size()));
    const auto z = find_zeros(s, search_box);
    REQUIRE(z.size() == ref.size());
    const auto oracle = tv_eigenvalues(p);
    REQUIRE(oracle.size() == ref.size());
    for (const auto& r : ref) {
        // each reference pair is found by the oracle and by the numerical search
        double dz = 1e300, doz = 1e300;
        cplx best{};
        for (cplx l : z)
            if (std::abs(l - r.lambda) < dz) {
                dz = std::abs(l - r.lambda);
                best = l;
            }
        for (cplx l : oracle)
            doz = std::min(doz, std::abs(l - r.lambda));
        CHECK(dz < 1e-9);
        CHECK(doz < 1e-12);
        CHECK(std::abs(tv_norming_constant(p, r.lambda) - r.C) < 1e-10);
        const auto d = norming_detail(s, best);
        CHECK(std::abs(d.C - r.C) < 1e-6);
        CHECK(d.ratio_mismatch < 1e-8);
    }
}

} // namespace

TEST_CASE("argument principle certifies the empty spectrum")
{
    const TVParameters p;
    CHECK(tv_eigenvalues(p).empty());
    // the sufficient condition -eps delta < mu^2/nu^2 holds for the mirrored velocity
    CHECK_FALSE(tv_certified_empty(p));
    CHECK(tv_certified_empty(TVParameters{0.6, 0.3, -0.4, 0.0, -1}));
    CHECK(tv_eigenvalues(TVParameters{0.6, 0.3, -0.4, 0.0, -1}).empty());
    CHECK(count_zeros(tv_potential(p, xgrid()), search_box) == 0);
}

TEST_CASE("eigenvalues and norming constants against the closed form")
{
    check_pairs({2.0, 0.0, 1.0, 0.0, -1},
                {{cplx(0.0, 0.5), cplx(-1.7466055568713567, -0.34727732521035043)},
                 {cplx(0.73205080756887729, 0.23205080756887729), cplx(-0.57972703937020951, 0.48579605896024804)}});
    check_pairs({1.5, 0.1, 0.5, 0.0, -1},
                {{cplx(0.17676795822626456, 0.20157455686356893), cplx(-0.4716970438041847, -0.60647160423798318)}});
}

TEST_CASE("oracle roots satisfy the eigenvalue condition and lie in the strip")
{
    for (TVParameters p : {TVParameters{2.0, 0.0, 1.0, 0.0, -1}, TVParameters{1.5, 0.1, 0.5, 0.0, -1},
                           TVParameters{2.5, 0.2, 1.5, 0.0, -1}}) {
        for (cplx l : tv_eigenvalues(p)) {
            CHECK(l.imag() > 0.0);
            const double s = p.epsilon * (l.real() - p.delta);
            CHECK(s > 0.0);
            CHECK(s < p.nu * p.nu / 2.0);
            CHECK(std::abs(tv_scattering(p, l).alpha_bar) < 1e-10);
        }
    }
    // a set with the opposite velocity has no roots
    const TVParameters q{2.0, 0.0, -1.0, 0.0, -1};
    CHECK(tv_eigenvalues(q).empty());
    CHECK(count_zeros(tv_potential(q, xgrid(), 1e-8), search_box) == 0);
}

TEST_CASE("Cauchy-circle derivative")
{
    const cplx z0(0.0, 1.0);
    const auto f = [&](cplx z) { return z - z0; };
    CHECK(std::abs(alpha_prime_at(f, z0, 0.3) - 1.0) < 1e-14);
    const auto g = [](cplx z) { return std::exp(z) * (z * z + 1.0); };
    const cplx z1(0.4, 0.7);
    const cplx exact = std::exp(z1) * (z1 * z1 + 1.0 + 2.0 * z1);
    CHECK(std::abs(alpha_prime_at(g, z1, 0.2) - exact) < 1e-12);
    CHECK_THROWS_AS(alpha_prime_at(f, z0, 0.0), InvalidArgument);
}

TEST_CASE("alpha-breve derivative agrees with a finite difference")
{
    const TVParameters p{2.0, 0.0, 1.0, 0.0, -1};
    const JostSolver s(tv_potential(p, xgrid(), 1e-8));
    const cplx l(0.0, 0.5), h(1e-4, 0.0);
    const cplx fd = (s.breve_alpha(l + h) - s.breve_alpha(l - h)) / (2.0 * h);
    CHECK(std::abs(alpha_prime_at(s, l, 0.1) - fd) < 1e-7);
    CHECK(std::abs(alpha_prime_at(s, l, 0.1) - tv_alpha_prime(p, l)) < 1e-9);
}

TEST_CASE("one-soliton data is recovered from its reflectionless potential")
{
    for (int eps : {-1, 1}) {
        const DiscretePair pair{cplx(0.0, 1.0), cplx(1.0, 0.0)};
        const auto q = reflectionless_inverse({pair}, eps, Grid(-30.0, 30.0, 1201));
        const auto d = scattering_transform(PotentialSamples(q.grid, q.values, eps, 1e-9), Grid(-8.0, 8.0, 33),
                                            search_box);
        REQUIRE(d.pairs.size() == 1);
        CHECK(std::abs(d.pairs[0].lambda - pair.lambda) < 1e-9);
        CHECK(std::abs(d.pairs[0].C - pair.C) < 1e-6);
        double rmax = 0.0;
        for (cplx r : d.rho.values)
            rmax = std::max(rmax, std::abs(r));
        CHECK(rmax < 1e-9);
    }
}

TEST_CASE("contour through a zero is reported")
{
    const TVParameters p{2.0, 0.0, 1.0, 0.0, -1};
    const JostSolver s(tv_potential(p, xgrid(), 1e-8));
    CHECK_THROWS_AS(count_zeros(s, Rectangle{-1.0, 1.0, 0.5, 2.0}), ContourError);
    CHECK_THROWS_AS(count_zeros(s, Rectangle{1.0, -1.0, 0.5, 2.0}), InvalidArgument);
    CHECK_THROWS_AS(count_zeros(s, Rectangle{-1.0, 1.0, 0.0, 2.0}), InvalidArgument);
}

TEST_CASE("scattering data validation")
{
    const Grid lg(-1.0, 1.0, 9);
    const ReflectionCoefficient rho(lg, std::vector<cplx>(lg.size(), 0.0), -1);
    CHECK_NOTHROW(ScatteringData{rho, {{cplx(0.0, 1.0), 1.0}}, -1}.validate());
    CHECK_THROWS_AS(ScatteringData({rho, {{cplx(0.0, -1.0), 1.0}}, -1}).validate(), MembershipError);
    CHECK_THROWS_AS(ScatteringData({rho, {{cplx(0.0, 1.0), 0.0}}, -1}).validate(), MembershipError);
    CHECK_THROWS_AS(ScatteringData({rho, {{cplx(0.0, 1.0), 1.0}, {cplx(0.0, 1.0), 2.0}}, -1}).validate(),
                    MembershipError);
    CHECK_THROWS_AS(ScatteringData({rho, {}, 1}).validate(), InvalidArgument);
}
