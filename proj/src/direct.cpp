#include "dnls/direct.hpp"

#include "dnls/errors.hpp"
#include "dnls/parallel.hpp"
#include "fft.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

namespace dnls {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr int max_levels = 12;

// phi_k(z) = sum_m z^m / (m + k)!, k = 1, 2, 3.
struct Phi {
    cplx p1, p2, p3;
};

Phi phis(cplx z)
{
    if (std::abs(z) < 0.5) {
        Phi r{0.0, 0.0, 0.0};
        cplx zm = 1.0;
        double f1 = 1.0, f2 = 2.0, f3 = 6.0; // (m+1)!, (m+2)!, (m+3)!
        for (int m = 0; m < 30; ++m) {
            r.p1 += zm / f1;
            r.p2 += zm / f2;
            r.p3 += zm / f3;
            zm *= z;
            f1 *= m + 2;
            f2 *= m + 3;
            f3 *= m + 4;
        }
        return r;
    }
    const cplx e = std::exp(z);
    return {(e - 1.0) / z, (e - 1.0 - z) / (z * z), (e - 1.0 - z - 0.5 * z * z) / (z * z * z)};
}

// Exponential time differencing RK4 coefficients for the linear part 2 i lambda.
struct EtdCoeffs {
    cplx e, e2, p1h, f1, f2, f3;
};

EtdCoeffs etd_coeffs(cplx z)
{
    const Phi full = phis(z);
    const Phi half = phis(0.5 * z);
    return {std::exp(z),
            std::exp(0.5 * z),
            half.p1,
            full.p1 - 3.0 * full.p2 + 4.0 * full.p3,
            full.p2 - 2.0 * full.p3,
            4.0 * full.p3 - full.p2};
}

struct Vec2 {
    cplx a, b;
};

} // namespace

ReflectionCoefficient::ReflectionCoefficient(Grid g, std::vector<cplx> v, int eps)
    : grid(g), values(std::move(v)), epsilon(check_epsilon(eps))
{
    if (values.size() != grid.size())
        throw InvalidArgument("reflection coefficient length does not match its grid");
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double lam = grid[i];
        if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
            throw InvalidArgument("reflection coefficient has non-finite values");
        if (!(1.0 - epsilon * lam * std::norm(values[i]) > 0.0))
            throw MembershipError("reflection coefficient violates 1 - eps*lambda*|rho|^2 > 0");
    }
}

struct JostSolver::Impl {
    PotentialSamples q;
    JostOptions opt;
    std::size_t i0;
    double x0;

    // Potential on the grid refined by 2^(level+1): step nodes and midpoints.
    struct Level {
        std::vector<cplx> q, qbar, qsharp;
        std::vector<double> abs2;
    };
    mutable std::array<std::once_flag, max_levels> once;
    mutable std::array<Level, max_levels> levels;

    Impl(PotentialSamples p, JostOptions o) : q(std::move(p)), opt(o)
    {
        if (q.grid.xmin() > 0.0 || q.grid.xmax() < 0.0)
            throw InvalidArgument("potential grid must contain x = 0");
        if (opt.max_level >= max_levels - 1 || opt.max_level < 1)
            throw InvalidArgument("JostOptions::max_level out of range");
        i0 = q.grid.nearest(0.0);
        x0 = q.grid[i0];
    }

    const Level& level(int k) const
    {
        std::call_once(once[static_cast<std::size_t>(k)], [&] { build(k); });
        return levels[static_cast<std::size_t>(k)];
    }

    // Trigonometric interpolation of the samples (periodic extension of the
    // decayed data) and its spectral derivative.
    void build(int k) const
    {
        const std::size_t n = q.grid.size();
        const std::size_t F = std::size_t(1) << (k + 1);
        const std::size_t m = n * F;
        const double h = q.grid.spacing();

        std::vector<cplx> spec(n), big(m, 0.0), dbig(m, 0.0), up(m), dup(m);
        fft::Plan(n, fft::Direction::forward).execute(q.values.data(), spec.data());
        const double w0 = 2.0 * std::numbers::pi / (static_cast<double>(n) * h);
        for (std::size_t j = 0; j < n; ++j) {
            const long kk = (2 * j < n) ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(n);
            if (2 * j == n) { // Nyquist bin split between +n/2 and -n/2
                big[j] += 0.5 * spec[j];
                big[m - j] += 0.5 * spec[j];
                continue;
            }
            const std::size_t dst = kk >= 0 ? static_cast<std::size_t>(kk) : m - static_cast<std::size_t>(-kk);
            big[dst] = spec[j];
            dbig[dst] = I * (w0 * static_cast<double>(kk)) * spec[j];
        }
        fft::Plan back(m, fft::Direction::backward);
        back.execute(big.data(), up.data());
        back.execute(dbig.data(), dup.data());

        const std::size_t len = (n - 1) * F + 1;
        Level& L = levels[static_cast<std::size_t>(k)];
        L.q.resize(len);
        L.qbar.resize(len);
        L.qsharp.resize(len);
        L.abs2.resize(len);
        const double scale = 1.0 / static_cast<double>(n);
        const double eps = q.epsilon;
        for (std::size_t j = 0; j < len; ++j) {
            const cplx v = up[j] * scale;
            const cplx dv = dup[j] * scale;
            L.q[j] = v;
            L.qbar[j] = std::conj(v);
            L.abs2[j] = std::norm(v);
            // q# = conj(q') - (i eps / 2) |q|^2 conj(q)
            L.qsharp[j] = std::conj(dv) - 0.5 * I * eps * std::norm(v) * std::conj(v);
        }
    }

    JostColumn march(cplx lam, bool plus, int k, JostTrace* trace) const
    {
        const Level& L = level(k);
        const std::size_t F = std::size_t(1) << (k + 1);
        const std::size_t n = q.grid.size();
        const double dt = (plus ? -1.0 : 1.0) * q.grid.spacing() / static_cast<double>(F / 2);
        const std::ptrdiff_t dir = plus ? -1 : 1;
        const std::ptrdiff_t start = plus ? static_cast<std::ptrdiff_t>((n - 1) * F) : 0;
        const std::ptrdiff_t stop = static_cast<std::ptrdiff_t>(i0 * F);
        const double eps = q.epsilon;
        const bool integrated = std::abs(lam) >= opt.regular_switch;
        const EtdCoeffs c = etd_coeffs(2.0 * I * lam * dt);
        const double hdt = 0.5 * dt;
        const cplx ie2 = 0.5 * I * eps;

        auto rhs = [&](std::ptrdiff_t j, const Vec2& u) -> Vec2 {
            const auto s = static_cast<std::size_t>(j);
            if (integrated)
                return {L.q[s] * u.b, -ie2 * L.qsharp[s] * u.a};
            return {-ie2 * L.abs2[s] * u.a + lam * L.q[s] * u.b, eps * L.qbar[s] * u.a + ie2 * L.abs2[s] * u.b};
        };
        auto second = [&](std::ptrdiff_t j, const Vec2& u, JostColumn& out) {
            const auto s = static_cast<std::size_t>(j);
            out.n11 = u.a;
            if (integrated) {
                out.n21 = ie2 * L.qbar[s] * u.a + u.b;
                out.m21 = out.n21 / lam;
            } else {
                out.m21 = u.b;
                out.n21 = lam * u.b;
            }
        };

        Vec2 u{1.0, 0.0};
        if (trace) {
            trace->x.clear();
            trace->n11.clear();
            trace->n21.clear();
        }
        auto record = [&](std::ptrdiff_t j) {
            if (!trace || j % static_cast<std::ptrdiff_t>(F) != 0)
                return;
            JostColumn col{};
            second(j, u, col);
            trace->x.push_back(q.grid[static_cast<std::size_t>(j) / F]);
            trace->n11.push_back(col.n11);
            trace->n21.push_back(col.n21);
        };

        for (std::ptrdiff_t j = start; j != stop; j += 2 * dir) {
            record(j);
            const std::ptrdiff_t jm = j + dir, jn = j + 2 * dir;
            const Vec2 Nu = rhs(j, u);
            const Vec2 a{u.a + hdt * Nu.a, c.e2 * u.b + hdt * c.p1h * Nu.b};
            const Vec2 Na = rhs(jm, a);
            const Vec2 b{u.a + hdt * Na.a, c.e2 * u.b + hdt * c.p1h * Na.b};
            const Vec2 Nb = rhs(jm, b);
            const Vec2 cc{a.a + hdt * (2.0 * Nb.a - Nu.a), c.e2 * a.b + hdt * c.p1h * (2.0 * Nb.b - Nu.b)};
            const Vec2 Nc = rhs(jn, cc);
            u.a = u.a + dt * (Nu.a + 2.0 * (Na.a + Nb.a) + Nc.a) / 6.0;
            u.b = c.e * u.b + dt * (c.f1 * Nu.b + 2.0 * c.f2 * (Na.b + Nb.b) + c.f3 * Nc.b);
        }
        record(stop);
        JostColumn out{};
        second(stop, u, out);
        out.level = k;
        return out;
    }

    JostColumn solve(cplx lam, bool plus, JostTrace* trace) const
    {
        if (plus && lam.imag() > 0.0)
            throw InvalidArgument("solve_jost_plus requires Im lambda <= 0");
        if (!plus && lam.imag() < 0.0)
            throw InvalidArgument("solve_jost_minus requires Im lambda >= 0");
        JostColumn prev = march(lam, plus, 0, nullptr);
        for (int k = 1; k <= opt.max_level; ++k) {
            JostColumn cur = march(lam, plus, k, nullptr);
            const double d = std::max({std::abs(cur.n11 - prev.n11), std::abs(cur.n21 - prev.n21),
                                       std::abs(cur.m21 - prev.m21)});
            if (!std::isfinite(d))
                break;
            if (d < opt.tol) {
                if (trace)
                    march(lam, plus, k, trace);
                return cur;
            }
            prev = cur;
        }
        throw NumericalError("Jost march: step-size refinement limit reached without convergence");
    }
};

JostSolver::JostSolver(PotentialSamples q, JostOptions opt)
    : impl_(std::make_unique<Impl>(std::move(q), opt))
{
}
JostSolver::~JostSolver() = default;
JostSolver::JostSolver(JostSolver&&) noexcept = default;
JostSolver& JostSolver::operator=(JostSolver&&) noexcept = default;

const PotentialSamples& JostSolver::potential() const { return impl_->q; }
double JostSolver::match_point() const { return impl_->x0; }

JostColumn JostSolver::plus(cplx lambda) const { return impl_->solve(lambda, true, nullptr); }
JostColumn JostSolver::minus(cplx lambda) const { return impl_->solve(lambda, false, nullptr); }

JostTrace JostSolver::plus_trace(cplx lambda) const
{
    JostTrace t;
    impl_->solve(lambda, true, &t);
    return t;
}

JostTrace JostSolver::minus_trace(cplx lambda) const
{
    JostTrace t;
    impl_->solve(lambda, false, &t);
    return t;
}

JostBoundary JostSolver::boundary(cplx lambda) const
{
    const JostColumn p = plus(lambda), m = minus(lambda);
    return {p.n11, p.n21, m.n11, m.n21, lambda, impl_->x0};
}

TransitionEntries JostSolver::transition(double lambda) const
{
    const JostColumn p = plus(lambda), m = minus(lambda);
    const double eps = impl_->q.epsilon;
    // alpha = det[N1+, N2-], beta = e^{2 i lambda x0} det[N2+, N2-], with
    // N2 = (eps conj(N21)/lambda, conj(N11)) on the real line.
    const cplx alpha = p.n11 * std::conj(m.n11) - eps * lambda * p.m21 * std::conj(m.m21);
    const cplx beta = std::exp(2.0 * I * lambda * impl_->x0) * eps *
                      (std::conj(m.n11) * std::conj(p.m21) - std::conj(p.n11) * std::conj(m.m21));
    return {alpha, beta, lambda};
}

cplx JostSolver::breve_alpha(cplx lambda) const
{
    if (lambda.imag() < 0.0)
        throw InvalidArgument("breve_alpha requires Im lambda >= 0");
    const JostColumn p = plus(std::conj(lambda)), m = minus(lambda);
    const double eps = impl_->q.epsilon;
    return std::conj(p.n11) * m.n11 - eps * lambda * std::conj(p.m21) * m.m21;
}

JostColumn solve_jost_plus(const PotentialSamples& q, cplx lambda)
{
    return JostSolver(q).plus(lambda);
}

JostColumn solve_jost_minus(const PotentialSamples& q, cplx lambda)
{
    return JostSolver(q).minus(lambda);
}

TransitionEntries transition_entries(const PotentialSamples& q, double lambda)
{
    return JostSolver(q).transition(lambda);
}

ReflectionCoefficient reflection(const JostSolver& solver, const Grid& lambda_grid)
{
    std::vector<cplx> rho(lambda_grid.size());
    std::vector<double> amin(lambda_grid.size());
    parallel_for(lambda_grid.size(), [&](std::size_t i) {
        const TransitionEntries t = solver.transition(lambda_grid[i]);
        amin[i] = std::abs(t.alpha);
        rho[i] = t.beta / t.alpha;
    });
    for (std::size_t i = 0; i < amin.size(); ++i)
        if (amin[i] < 1e-6)
            throw MembershipError("spectral singularity: |alpha| < 1e-6 on the real line");
    return ReflectionCoefficient(lambda_grid, std::move(rho), solver.potential().epsilon);
}

ReflectionCoefficient reflection(const PotentialSamples& q, const Grid& lambda_grid)
{
    return reflection(JostSolver(q), lambda_grid);
}

} // namespace dnls
