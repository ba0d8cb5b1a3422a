#include "dnls/inverse.hpp"

#include "dnls/errors.hpp"
#include "dnls/evolution.hpp"
#include "dnls/parallel.hpp"

#include <lapacke.h>

#include <cmath>
#include <limits>
#include <numbers>

namespace dnls {

namespace {
constexpr cplx I{0.0, 1.0};
constexpr double pi = std::numbers::pi;
// Column-major dense LU of the row/column equilibrated matrix, with a
// reciprocal condition estimate of the equilibrated factor.
class DenseLU {
public:
    DenseLU(std::vector<cplx> a, std::size_t n) : a_(std::move(a)), n_(n), piv_(n), r_(n, 1.0), c_(n, 1.0)
    {
        const auto ln = static_cast<lapack_int>(n);
        auto* p = reinterpret_cast<lapack_complex_double*>(a_.data());
        double rowcnd = 0.0, colcnd = 0.0, amax = 0.0;
        if (LAPACKE_zgeequ(LAPACK_COL_MAJOR, ln, ln, p, ln, r_.data(), c_.data(), &rowcnd, &colcnd, &amax) != 0) {
            rcond_ = 0.0;
            return;
        }
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                a_[j * n + i] *= r_[i] * c_[j];
        const double anorm = LAPACKE_zlange(LAPACK_COL_MAJOR, '1', ln, ln, p, ln);
        if (LAPACKE_zgetrf(LAPACK_COL_MAJOR, ln, ln, p, ln, piv_.data()) != 0) {
            rcond_ = 0.0;
            return;
        }
        if (LAPACKE_zgecon(LAPACK_COL_MAJOR, '1', ln, p, ln, anorm, &rcond_) != 0)
            rcond_ = 0.0;
    }

    double rcond() const { return rcond_; }

    std::vector<cplx> solve(std::vector<cplx> b) const
    {
        const auto ln = static_cast<lapack_int>(n_);
        for (std::size_t i = 0; i < n_; ++i)
            b[i] *= r_[i];
        LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', ln, 1, reinterpret_cast<const lapack_complex_double*>(a_.data()), ln,
                       piv_.data(), reinterpret_cast<lapack_complex_double*>(b.data()), ln);
        for (std::size_t j = 0; j < n_; ++j)
            b[j] *= c_[j];
        return b;
    }

private:
    std::vector<cplx> a_;
    std::size_t n_;
    std::vector<lapack_int> piv_;
    std::vector<double> r_, c_;
    double rcond_ = 0.0;
};

double norm2(const std::vector<cplx>& v)
{
    double s = 0.0;
    for (const auto& z : v)
        s += std::norm(z);
    return std::sqrt(s);
}

} // namespace

KOperator::KOperator(const ScatteringData& data, double x)
    : data_(data), m_(data.rho.grid.size()), eps_(data.epsilon), x_(x)
{
    const Grid& g = data.rho.grid;
    rx_.resize(m_);
    wfac_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
        const double lam = g[i];
        rx_[i] = std::polar(1.0, -2.0 * lam * x) * data.rho.values[i];
        wfac_[i] = -static_cast<double>(eps_) * lam * std::conj(rx_[i]);
    }
    for (const auto& p : data.pairs) {
        lam_.push_back(p.lambda);
        cx_.push_back(p.C * std::exp(2.0 * I * p.lambda * x));
        cbarx_.push_back(std::conj(cx_.back()));
    }
    // Off-grid Cauchy integrals use the plain trapezoid rule; they need the
    // eigenvalues at least half a grid spacing off the real axis.
    for (const auto& l : lam_)
        if (l.imag() < 0.5 * g.spacing())
            throw InvalidArgument("eigenvalue closer to the real axis than half the lambda spacing");
}

cplx KOperator::weight(std::size_t m) const
{
    const double h = data_.rho.grid.spacing();
    const double w = (m == 0 || m + 1 == m_) ? 0.5 * h : h;
    return w / (2.0 * pi * I);
}

void KOperator::finish(const cplx* g, const cplx* gk, cplx* out_grid, cplx* out_disc) const
{
    const Grid& grid = data_.rho.grid;
    const std::size_t n = lam_.size();
    std::vector<cplx> w(m_);
    for (std::size_t i = 0; i < m_; ++i)
        w[i] = wfac_[i] * g[i];
    projector_for(m_).minus(w.data(), out_grid);
    std::vector<cplx> lc(n);
    for (std::size_t k = 0; k < n; ++k)
        lc[k] = lam_[k] * cx_[k] * gk[k];
    if (n > 0)
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t k = 0; k < n; ++k)
                out_grid[i] += lc[k] / (grid[i] - lam_[k]);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx zb = std::conj(lam_[i]);
        out_disc[i] = m_ > 0 ? cauchy_at(grid, w.data(), zb) : cplx(0.0);
        for (std::size_t k = 0; k < n; ++k)
            out_disc[i] += lc[k] / (zb - lam_[k]);
    }
}

XElement KOperator::apply(const XElement& h) const
{
    if (h.grid.size() != m_ || h.discrete.size() != lam_.size())
        throw InvalidArgument("apply_K: element dimensions do not match the data");
    const Grid& grid = data_.rho.grid;
    const std::size_t n = lam_.size();
    std::vector<cplx> F(m_), g(m_), gk(n);
    for (std::size_t i = 0; i < m_; ++i)
        F[i] = rx_[i] * h.grid[i];
    if (m_ > 0)
        projector_for(m_).plus(F.data(), g.data());
    for (std::size_t k = 0; k < n; ++k)
        gk[k] = m_ > 0 ? cauchy_at(grid, F.data(), lam_[k]) : cplx(0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx a = static_cast<double>(eps_) * cbarx_[j] * h.discrete[j];
        const cplx lb = std::conj(lam_[j]);
        for (std::size_t i = 0; i < m_; ++i)
            g[i] += a / (grid[i] - lb);
        for (std::size_t k = 0; k < n; ++k)
            gk[k] += a / (lam_[k] - lb);
    }
    XElement out{std::vector<cplx>(m_), std::vector<cplx>(n)};
    finish(g.data(), gk.data(), out.grid.data(), out.discrete.data());
    return out;
}

XElement KOperator::apply_to_unit() const
{
    return apply(XElement{std::vector<cplx>(m_, 1.0), std::vector<cplx>(lam_.size(), 1.0)});
}

std::vector<cplx> KOperator::dense() const
{
    const Grid& grid = data_.rho.grid;
    const std::size_t n = lam_.size();
    const std::size_t dim = m_ + n;
    std::vector<cplx> K(dim * dim);
    std::vector<cplx> g(m_), gk(n), og(m_), od(n);
    auto store = [&](std::size_t col) {
        for (std::size_t i = 0; i < m_; ++i)
            K[i * dim + col] = og[i];
        for (std::size_t i = 0; i < n; ++i)
            K[(m_ + i) * dim + col] = od[i];
    };
    const CauchyProjector* P = m_ > 0 ? &projector_for(m_) : nullptr;
    for (std::size_t c = 0; c < m_; ++c) {
        // g = C+(rx_c delta_c): column c of 1/2 + principal part
        for (std::size_t i = 0; i < m_; ++i)
            g[i] = rx_[c] * P->principal_entry(static_cast<std::ptrdiff_t>(i), static_cast<std::ptrdiff_t>(c));
        g[c] += 0.5 * rx_[c];
        for (std::size_t k = 0; k < n; ++k)
            gk[k] = weight(c) * rx_[c] / (grid[c] - lam_[k]);
        finish(g.data(), gk.data(), og.data(), od.data());
        store(c);
    }
    for (std::size_t j = 0; j < n; ++j) {
        const cplx a = static_cast<double>(eps_) * cbarx_[j];
        const cplx lb = std::conj(lam_[j]);
        for (std::size_t i = 0; i < m_; ++i)
            g[i] = a / (grid[i] - lb);
        for (std::size_t k = 0; k < n; ++k)
            gk[k] = a / (lam_[k] - lb);
        finish(g.data(), gk.data(), og.data(), od.data());
        store(m_ + j);
    }
    return K;
}

XElement assemble_rhs(const ScatteringData& data, double x)
{
    return KOperator(data, x).apply_to_unit();
}

XElement apply_K(const ScatteringData& data, double x, const XElement& h)
{
    return KOperator(data, x).apply(h);
}

NuSolution solve_nu(const ScatteringData& data, double x)
{
    const KOperator K(data, x);
    const std::size_t m = K.grid_size(), n = K.discrete_size(), dim = m + n;
    const std::vector<cplx> kd = K.dense();
    // A = I - K in column-major order; f = K e from the same matrix so that
    // the residual measures the solve only.
    std::vector<cplx> A(dim * dim), f(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            A[j * dim + i] = (i == j ? 1.0 : 0.0) - kd[i * dim + j];
            f[i] += kd[i * dim + j];
        }
    NuSolution out{GridFunction(data.rho.grid), std::vector<cplx>(n), x, 0.0};
    std::vector<cplx> nu(dim, 0.0);
    const double fn = norm2(f);
    if (fn > 0.0) {
        const DenseLU lu(A, dim);
        if (!(lu.rcond() > 1e-14))
            throw NumericalError("I - K is numerically singular");
        nu = lu.solve(f);
        std::vector<cplx> r(dim);
        for (std::size_t i = 0; i < dim; ++i)
            r[i] = -f[i];
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t i = 0; i < dim; ++i)
                r[i] += A[j * dim + i] * nu[j];
        out.residual = norm2(r) / fn;
        if (!(out.residual <= 1e-10))
            throw NumericalError("Beals-Coifman solve residual above 1e-10");
    }
    for (std::size_t i = 0; i < m; ++i)
        out.nu0.values[i] = nu[i];
    for (std::size_t j = 0; j < n; ++j)
        out.v[j] = 1.0 + nu[m + j];
    return out;
}

namespace {

cplx reconstruct(const ScatteringData& data, const NuSolution& s)
{
    const Grid& g = data.rho.grid;
    std::vector<cplx> f(g.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = std::polar(1.0, -2.0 * g[i] * s.x) * data.rho.values[i] * (1.0 + s.nu0.values[i]);
    cplx q = -trapezoid(f, g.spacing()) / pi;
    for (std::size_t j = 0; j < data.pairs.size(); ++j) {
        const cplx cx = data.pairs[j].C * std::exp(2.0 * I * data.pairs[j].lambda * s.x);
        q += 2.0 * I * static_cast<double>(data.epsilon) * std::conj(cx) * s.v[j];
    }
    return q;
}

} // namespace

cplx reconstruct_point(const ScatteringData& data, double x)
{
    return reconstruct(data, solve_nu(data, x));
}

PotentialSamples inverse_transform(const ScatteringData& data, const Grid& xgrid)
{
    data.validate();
    std::vector<cplx> q(xgrid.size());
    parallel_for(xgrid.size(), [&](std::size_t i) { q[i] = reconstruct_point(data, xgrid[i]); });
    return PotentialSamples(xgrid, std::move(q), data.epsilon, std::numeric_limits<double>::infinity());
}

cplx reflectionless_point(const std::vector<DiscretePair>& pairs, int eps, double x)
{
    check_epsilon(eps);
    if (pairs.empty())
        return 0.0;
    std::vector<cplx> lam(pairs.size()), cx(pairs.size());
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        if (!(pairs[j].lambda.imag() > 0.0))
            throw InvalidArgument("eigenvalues must lie in the upper half plane");
        lam[j] = pairs[j].lambda;
        cx[j] = pairs[j].C * std::exp(2.0 * I * lam[j] * x);
    }
    // v_i = 1 + sum_{k,j} lambda_k C_{k,x} eps conj(C_{j,x}) v_j / ((conj lambda_i - lambda_k)(lambda_k - conj lambda_j))
    const std::size_t n = pairs.size();
    std::vector<cplx> A(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += lam[k] * cx[k] / ((std::conj(lam[i]) - lam[k]) * (lam[k] - std::conj(lam[j])));
            A[j * n + i] = (i == j ? 1.0 : 0.0) - static_cast<double>(eps) * std::conj(cx[j]) * s;
        }
    const DenseLU lu(std::move(A), n);
    if (!(lu.rcond() > 1e-14))
        throw NumericalError("reflectionless system is numerically singular");
    const std::vector<cplx> v = lu.solve(std::vector<cplx>(n, 1.0));
    cplx q = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        q += 2.0 * I * static_cast<double>(eps) * std::conj(cx[j]) * v[j];
    return q;
}

PotentialSamples reflectionless_inverse(const std::vector<DiscretePair>& pairs, int eps, const Grid& xgrid)
{
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(pairs[i].lambda - pairs[j].lambda) < 1e-10)
                throw NumericalError("coincident eigenvalues make the reflectionless system singular");
    std::vector<cplx> q(xgrid.size());
    parallel_for(xgrid.size(), [&](std::size_t i) { q[i] = reflectionless_point(pairs, eps, xgrid[i]); });
    return PotentialSamples(xgrid, std::move(q), eps, std::numeric_limits<double>::infinity());
}

PotentialSamples solve_cauchy(const PotentialSamples& q0, double t, const Grid& xgrid, const CauchyOptions& opt)
{
    const ScatteringData d = scattering_transform(q0, opt.lambda_grid, opt.search);
    return inverse_transform(evolve(d, t), xgrid);
}

} // namespace dnls
