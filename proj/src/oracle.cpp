#include "dnls/oracle.hpp"

#include "dnls/errors.hpp"
#include "dnls/parallel.hpp"
#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dnls {

namespace {

constexpr cplx I{0.0, 1.0};

// 1/Gamma(z) near its zero at z = -m: slope (-1)^m m!.
cplx rgamma_slope(cplx z)
{
    const double m = -std::round(z.real());
    if (m < 0.0 || std::abs(z + m) > 1e-6)
        return 0.0;
    double f = 1.0;
    for (int k = 2; k <= static_cast<int>(m); ++k)
        f *= k;
    return (static_cast<long>(m) % 2 == 0) ? f : -f;
}

} // namespace

void TVParameters::validate() const
{
    if (!(nu > 0.0) || !std::isfinite(nu))
        throw InvalidArgument("TV family requires nu > 0");
    if (!std::isfinite(mu) || !std::isfinite(delta) || !std::isfinite(s0))
        throw InvalidArgument("TV family parameters must be finite");
    check_epsilon(epsilon);
}

PotentialSamples tv_potential(const TVParameters& p, const Grid& xgrid, double tail_tol)
{
    p.validate();
    std::vector<cplx> v(xgrid.size());
    const double eps = p.epsilon;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = xgrid[i];
        // sech(x)^(1 - 2 i mu) = exp((1 - 2 i mu) log sech x), log sech computed stably
        const double ax = std::abs(x);
        const double log_sech = -ax - std::log1p(std::exp(-2.0 * ax)) + std::numbers::ln2;
        const double phase = p.s0 - eps * p.nu * p.nu * std::tanh(x) - 2.0 * p.delta * x;
        v[i] = p.nu * std::exp(cplx(log_sech, -2.0 * p.mu * log_sech + phase));
    }
    return PotentialSamples(xgrid, std::move(v), p.epsilon, tail_tol);
}

HypergeometricParams tv_hypergeometric_params(const TVParameters& p, cplx lambda)
{
    p.validate();
    const double eps = p.epsilon;
    const cplx root_minus_eps = (eps < 0.0) ? cplx(1.0) : I; // sqrt(-eps)
    const cplx d = I * p.nu * root_minus_eps * branch_root_R(-lambda, p.epsilon, p.mu, p.nu);
    const cplx c = -I * lambda + I * (p.mu + p.delta) + 0.5;
    return {I * p.mu + d, I * p.mu - d, c};
}

TVScattering tv_scattering(const TVParameters& p, const HypergeometricParams& abc)
{
    p.validate();
    const auto& [a, b, c] = abc;
    const double eps = p.epsilon;
    const double nu2 = p.nu * p.nu;
    const cplx alpha_bar = std::exp(-I * eps * nu2 + log_gamma(c) + log_gamma(c - (a + b))) * (rgamma(c - a) * rgamma(c - b));
    // -(eps 2^{2 i mu}/(nu lambda)) Gamma(c) Gamma(1+a+b-c) / (Gamma(a) Gamma(b)) with a b = eps nu^2 lambda.
    const cplx pre = -p.nu * std::exp(I * (2.0 * p.mu * std::numbers::ln2 - p.s0));
    const cplx beta_bar = pre * std::exp(log_gamma(c) + log_gamma(1.0 + (a + b) - c)) * (rgamma(a + 1.0) * rgamma(b + 1.0));
    return {alpha_bar, beta_bar};
}

TVScattering tv_scattering(const TVParameters& p, cplx lambda)
{
    if (lambda.imag() < 0.0)
        throw InvalidArgument("tv_scattering requires Im lambda >= 0");
    return tv_scattering(p, tv_hypergeometric_params(p, lambda));
}

ReflectionCoefficient tv_reflection(const TVParameters& p, const Grid& lambda_grid)
{
    std::vector<cplx> rho(lambda_grid.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const TVScattering s = tv_scattering(p, cplx(lambda_grid[i], 0.0));
        rho[i] = std::conj(s.beta_bar / s.alpha_bar);
    }
    return ReflectionCoefficient(lambda_grid, std::move(rho), p.epsilon);
}

bool tv_certified_empty(const TVParameters& p)
{
    p.validate();
    return -p.epsilon * p.delta < (p.mu * p.mu) / (p.nu * p.nu);
}

std::vector<cplx> tv_eigenvalues(const TVParameters& p)
{
    std::vector<cplx> out;
    if (tv_certified_empty(p))
        return out;
    const double eps = p.epsilon;
    const double nu2 = p.nu * p.nu;
    // With w = lambda + K, K = -delta + i(n - 1/2): w^2 - eps nu^2 w - mu^2 + eps nu^2 K = 0,
    // and Im lambda > 0 needs Im w > n - 1/2, impossible once (n-1/2)^2 > nu^2 (n-1/2) + A.
    const double A = std::abs(nu2 * nu2 / 4.0 + p.mu * p.mu + eps * nu2 * p.delta);
    const int n_max = static_cast<int>(std::ceil(0.5 * (nu2 + std::sqrt(nu2 * nu2 + 4.0 * A)) + 0.5)) + 1;
    for (int n = 1; n <= n_max; ++n) {
        const cplx K(-p.delta, n - 0.5);
        const cplx disc = std::sqrt(0.25 * nu2 * nu2 + p.mu * p.mu - eps * nu2 * K);
        for (const cplx w0 : {0.5 * eps * nu2 + disc, 0.5 * eps * nu2 - disc}) {
            cplx lam = w0 - K;
            // Newton polish on the unsquared condition (either branch of R is a zero, by a <-> b symmetry).
            auto f = [&](cplx l) { return (l + K) * (l + K) - p.mu * p.mu - eps * nu2 * l; };
            for (int it = 0; it < 100; ++it) {
                const cplx step = f(lam) / (2.0 * (lam + K) - eps * nu2);
                lam -= step;
                if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(lam)))
                    break;
            }
            if (lam.imag() <= 0.0)
                continue;
            const bool dup = std::any_of(out.begin(), out.end(), [&](cplx z) { return std::abs(z - lam) < 1e-12; });
            if (!dup)
                out.push_back(lam);
        }
    }
    std::sort(out.begin(), out.end(), [](cplx x, cplx y) {
        if (std::abs(std::abs(x) - std::abs(y)) > 1e-12)
            return std::abs(x) < std::abs(y);
        return std::arg(x) < std::arg(y);
    });
    return out;
}

cplx tv_alpha_prime(const TVParameters& p, cplx lambda_n)
{
    const HypergeometricParams abc = tv_hypergeometric_params(p, lambda_n);
    const auto& [a, b, c] = abc;
    const double eps = p.epsilon;
    const double nu2 = p.nu * p.nu;
    const cplx front = std::exp(-I * eps * nu2 + log_gamma(c) + log_gamma(c - a - b));
    // d = a - i mu, d^2 = -mu^2 - eps nu^2 lambda: da/dlambda = -eps nu^2/(2 d) = -db/dlambda.
    const cplx d = a - I * p.mu;
    if (std::abs(d) < 1e-14)
        throw NumericalError("tv_alpha_prime: branch point of the parameters");
    const cplx da = -eps * nu2 / (2.0 * d);
    const cplx sa = rgamma_slope(c - a), sb = rgamma_slope(c - b);
    if (sa == 0.0 && sb == 0.0)
        throw InvalidArgument("tv_alpha_prime: lambda is not an eigenvalue");
    return front * (sa * (-I - da) * rgamma(c - b) + sb * (-I + da) * rgamma(c - a));
}

cplx tv_norming_constant(const TVParameters& p, cplx lambda_n)
{
    const TVScattering s = tv_scattering(p, lambda_n);
    return -static_cast<double>(p.epsilon) * s.beta_bar / tv_alpha_prime(p, lambda_n);
}

TVJost tv_jost_closed_form(const TVParameters& p, double x, cplx lambda)
{
    const auto [a, b, c] = tv_hypergeometric_params(p, lambda);
    const double eps = p.epsilon;
    const double nu2 = p.nu * p.nu;
    // s = (1 + tanh x)/2 and 1 - s, both without cancellation
    const double e = std::exp(-2.0 * std::abs(x));
    const double small = e / (1.0 + e);
    const double s = x >= 0.0 ? 1.0 - small : small;
    const double t = x >= 0.0 ? small : 1.0 - small;
    const double ls = std::log(s), lt = std::log(t);
    const cplx ab = a * b;

    const cplx w1 = hyp2f1({a, b, c}, s);
    const cplx w1p = ab / c * hyp2f1({a + 1.0, b + 1.0, c + 1.0}, s);
    const cplx c3 = a + b - c + 1.0;
    const cplx w3 = hyp2f1({a, b, c3}, t);
    const cplx w3p = -ab / c3 * hyp2f1({a + 1.0, b + 1.0, c3 + 1.0}, t);

    const cplx pre = std::exp(I * (2.0 * p.mu * std::numbers::ln2 - p.s0)) / p.nu;
    const cplx power = std::exp((c + I * lambda) * ls + (1.0 - c + a + b - I * lambda) * lt);
    TVJost j;
    j.n11_minus = std::exp(-I * eps * nu2 * s) * w1;
    j.n21_minus = pre * std::exp(I * eps * nu2 * (s - 1.0)) * power * w1p;
    j.n11_plus = std::exp(-I * eps * nu2 * (s - 1.0)) * w3;
    j.n21_plus = pre * std::exp(I * eps * nu2 * s) * power * w3p;
    return j;
}

ReflectionCoefficient born_reflection(const PotentialSamples& phi, double mu_scale, const Grid& lambda_grid)
{
    std::vector<cplx> rho(lambda_grid.size());
    const Grid& g = phi.grid;
    parallel_for(lambda_grid.size(), [&](std::size_t k) {
        const double lam = lambda_grid[k];
        std::vector<cplx> f(g.size());
        for (std::size_t i = 0; i < g.size(); ++i)
            f[i] = std::exp(2.0 * I * lam * g[i]) * phi.values[i];
        rho[k] = -mu_scale * trapezoid(f, g.spacing());
    });
    return ReflectionCoefficient(lambda_grid, std::move(rho), phi.epsilon);
}

namespace {

struct SplitStepper {
    std::size_t n;
    double eps;
    std::vector<double> k;
    std::vector<bool> keep; // 2/3 rule
    fft::Plan fwd, bwd;

    SplitStepper(const PotentialSamples& q)
        : n(q.grid.size()), eps(q.epsilon), k(n), keep(n), fwd(n, fft::Direction::forward),
          bwd(n, fft::Direction::backward)
    {
        const double L = static_cast<double>(n) * q.grid.spacing();
        for (std::size_t j = 0; j < n; ++j) {
            const long kk = (2 * j < n) ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(n);
            k[j] = 2.0 * std::numbers::pi * static_cast<double>(kk) / L;
            keep[j] = 3 * static_cast<std::size_t>(std::labs(kk)) < n;
            if (2 * j == n)
                keep[j] = false;
        }
    }

    // Fourier coefficients of -eps q^2 conj(q)_x + (i/2)|q|^4 q, dealiased.
    void nonlinear(const std::vector<cplx>& qh, std::vector<cplx>& out)
    {
        std::vector<cplx> tmp(n), q(n), qx(n), r(n);
        for (std::size_t j = 0; j < n; ++j)
            tmp[j] = keep[j] ? qh[j] : cplx(0.0);
        bwd.execute(tmp.data(), q.data());
        for (std::size_t j = 0; j < n; ++j)
            tmp[j] = keep[j] ? I * k[j] * qh[j] : cplx(0.0);
        bwd.execute(tmp.data(), qx.data());
        const double inv = 1.0 / static_cast<double>(n);
        for (std::size_t j = 0; j < n; ++j) {
            const cplx v = q[j] * inv, vx = qx[j] * inv;
            const double a = std::norm(v);
            r[j] = -eps * v * v * std::conj(vx) + 0.5 * I * a * a * v;
        }
        fwd.execute(r.data(), out.data());
        for (std::size_t j = 0; j < n; ++j)
            if (!keep[j])
                out[j] = 0.0;
    }

    std::vector<cplx> run(const std::vector<cplx>& q0, double t, std::size_t steps)
    {
        const double dt = t / static_cast<double>(steps);
        std::vector<cplx> qh(n), a(n), b(n), c(n), d(n), tmp(n), N(n);
        fwd.execute(q0.data(), qh.data());
        std::vector<cplx> Eh(n), E(n);
        for (std::size_t j = 0; j < n; ++j) {
            Eh[j] = std::exp(-I * k[j] * k[j] * (0.5 * dt));
            E[j] = Eh[j] * Eh[j];
        }
        double sup0 = 0.0;
        for (const auto& v : q0)
            sup0 = std::max(sup0, std::abs(v));
        std::vector<cplx> phys(n);
        for (std::size_t s = 0; s < steps; ++s) {
            nonlinear(qh, a);
            for (std::size_t j = 0; j < n; ++j)
                tmp[j] = Eh[j] * (qh[j] + 0.5 * dt * a[j]);
            nonlinear(tmp, b);
            for (std::size_t j = 0; j < n; ++j)
                tmp[j] = Eh[j] * qh[j] + 0.5 * dt * b[j];
            nonlinear(tmp, c);
            for (std::size_t j = 0; j < n; ++j)
                tmp[j] = E[j] * qh[j] + dt * Eh[j] * c[j];
            nonlinear(tmp, d);
            for (std::size_t j = 0; j < n; ++j)
                qh[j] = E[j] * qh[j] + dt / 6.0 * (E[j] * a[j] + 2.0 * Eh[j] * (b[j] + c[j]) + d[j]);
            bwd.execute(qh.data(), phys.data());
            double sup = 0.0;
            for (const auto& v : phys)
                sup = std::max(sup, std::abs(v) / static_cast<double>(n));
            if (!std::isfinite(sup) || sup > 2.0 * std::max(sup0, 1e-300)) {
                throw NumericalError("split-step: solution blew up");
            }
            sup0 = sup;
        }
        bwd.execute(qh.data(), phys.data());
        for (auto& v : phys)
            v /= static_cast<double>(n);
        return phys;
    }
};

} // namespace

PotentialSamples splitstep_fixed(const PotentialSamples& q0, double t, std::size_t steps)
{
    if (steps == 0)
        throw InvalidArgument("split-step needs at least one step");
    SplitStepper st(q0);
    return PotentialSamples(q0.grid, st.run(q0.values, t, steps), q0.epsilon, std::numeric_limits<double>::infinity());
}

PotentialSamples splitstep_evolve(const PotentialSamples& q0, double t, double dt, const SplitStepOptions& opt)
{
    if (!(dt > 0.0))
        throw InvalidArgument("split-step requires dt > 0");
    if (t == 0.0)
        return q0;
    SplitStepper st(q0);
    std::size_t steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::abs(t) / dt)));
    // A blow-up at a coarse step is the explicit stability limit of the
    // nonlinear terms; it only counts as an error at the finest step.
    std::vector<cplx> prev;
    for (int h = 0; h <= opt.max_halvings; ++h, steps *= 2) {
        std::vector<cplx> cur;
        try {
            cur = st.run(q0.values, t, steps);
        } catch (const NumericalError&) {
            if (h == opt.max_halvings)
                throw;
            prev.clear();
            continue;
        }
        if (!prev.empty()) {
            double diff = 0.0;
            for (std::size_t i = 0; i < cur.size(); ++i)
                diff = std::max(diff, std::abs(cur[i] - prev[i]));
            if (diff < opt.tol)
                return PotentialSamples(q0.grid, std::move(cur), q0.epsilon, std::numeric_limits<double>::infinity());
        }
        prev = std::move(cur);
    }
    throw NumericalError("split-step: step halving did not converge");
}

} // namespace dnls
