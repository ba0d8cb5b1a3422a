#include "dnls/spectrum.hpp"

#include "dnls/errors.hpp"
#include "dnls/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace dnls {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double pi = std::numbers::pi;
constexpr double boundary_floor = 1e-6;
constexpr double min_cell = 1e-4;

// Memoized alpha-breve so that neighbouring cells share their common edges.
class BreveCache {
public:
    explicit BreveCache(const JostSolver& s) : solver_(s) {}

    std::vector<cplx> eval(const std::vector<cplx>& z)
    {
        std::vector<cplx> out(z.size());
        std::vector<std::size_t> todo;
        {
            std::lock_guard lock(m_);
            for (std::size_t i = 0; i < z.size(); ++i) {
                auto it = cache_.find(key(z[i]));
                if (it != cache_.end())
                    out[i] = it->second;
                else
                    todo.push_back(i);
            }
        }
        parallel_for(todo.size(), [&](std::size_t k) { out[todo[k]] = solver_.breve_alpha(z[todo[k]]); });
        std::lock_guard lock(m_);
        for (std::size_t i : todo)
            cache_.emplace(key(z[i]), out[i]);
        return out;
    }

private:
    static std::pair<double, double> key(cplx z) { return {z.real(), z.imag()}; }
    const JostSolver& solver_;
    std::mutex m_;
    std::map<std::pair<double, double>, cplx> cache_;
};

int winding(BreveCache& f, const Rectangle& r)
{
    const cplx corners[5] = {{r.re_min, r.im_min}, {r.re_max, r.im_min}, {r.re_max, r.im_max},
                             {r.re_min, r.im_max}, {r.re_min, r.im_min}};
    double total = 0.0;
    for (int e = 0; e < 4; ++e) {
        const cplx a = corners[e], b = corners[e + 1];
        const int n0 = std::max(8, static_cast<int>(std::ceil(std::abs(b - a) / 0.5)));
        std::vector<cplx> z(n0 + 1);
        for (int k = 0; k <= n0; ++k)
            z[k] = (k == n0) ? b : a + (b - a) * (static_cast<double>(k) / n0);
        std::vector<cplx> v = f.eval(z);
        for (int pass = 0;; ++pass) {
            for (const auto& w : v)
                if (std::abs(w) < boundary_floor)
                    throw ContourError("alpha-breve has a zero within 1e-6 of the contour");
            std::vector<cplx> mids;
            std::vector<std::size_t> where;
            for (std::size_t k = 0; k + 1 < z.size(); ++k)
                if (std::abs(std::arg(v[k + 1] / v[k])) > pi / 4) {
                    mids.push_back(0.5 * (z[k] + z[k + 1]));
                    where.push_back(k);
                }
            if (mids.empty())
                break;
            if (pass > 40)
                throw NumericalError("argument principle: contour refinement did not resolve the phase");
            const std::vector<cplx> mv = f.eval(mids);
            std::vector<cplx> nz, nv;
            std::size_t m = 0;
            for (std::size_t k = 0; k < z.size(); ++k) {
                nz.push_back(z[k]);
                nv.push_back(v[k]);
                if (m < where.size() && where[m] == k) {
                    nz.push_back(mids[m]);
                    nv.push_back(mv[m]);
                    ++m;
                }
            }
            z.swap(nz);
            v.swap(nv);
        }
        for (std::size_t k = 0; k + 1 < z.size(); ++k)
            total += std::arg(v[k + 1] / v[k]);
    }
    const double w = total / (2.0 * pi);
    const double n = std::round(w);
    if (std::abs(w - n) > 0.1)
        throw NumericalError("argument principle: non-integer winding number");
    return static_cast<int>(n);
}

struct Newton {
    bool ok;
    cplx lambda;
};

Newton newton(const JostSolver& solver, cplx start, const Rectangle& cell, double tol)
{
    cplx lam = start;
    const double w = cell.re_max - cell.re_min, h = cell.im_max - cell.im_min;
    double last = INFINITY;
    for (int it = 0; it < 40; ++it) {
        const double radius = std::min({0.5 * lam.imag(), 0.05, 0.25 * std::max(w, h)});
        if (!(radius > 0.0))
            return {false, lam};
        const int M = 32;
        std::vector<cplx> vals(M);
        parallel_for(M, [&](std::size_t k) {
            vals[k] = solver.breve_alpha(lam + radius * std::exp(I * (2.0 * pi * static_cast<double>(k) / M)));
        });
        cplx f = 0.0, fp = 0.0;
        for (int k = 0; k < M; ++k) {
            const cplx e = std::exp(-I * (2.0 * pi * k / M));
            f += vals[k];
            fp += vals[k] * e;
        }
        f /= static_cast<double>(M);
        fp /= M * radius;
        if (std::abs(fp) < 1e-8)
            return {false, lam};
        const cplx step = f / fp;
        lam -= step;
        const double margin = 0.5 * std::max(w, h);
        if (lam.real() < cell.re_min - margin || lam.real() > cell.re_max + margin ||
            lam.imag() < std::max(cell.im_min - margin, 0.0) || lam.imag() > cell.im_max + margin)
            return {false, lam};
        const double s = std::abs(step);
        if (s < tol)
            return {true, lam};
        if (s < 1e-9 && s >= last) // stagnation at the noise floor of alpha-breve
            return {true, lam};
        last = s;
    }
    return {std::abs(last) < 1e-9, lam};
}

bool inside(cplx z, const Rectangle& r)
{
    return z.real() >= r.re_min && z.real() <= r.re_max && z.imag() >= r.im_min && z.imag() <= r.im_max;
}

void search(const JostSolver& solver, BreveCache& cache, const Rectangle& cell, int count, double tol,
            std::vector<cplx>& out)
{
    if (count == 0)
        return;
    const double w = cell.re_max - cell.re_min, h = cell.im_max - cell.im_min;
    if (count == 1) {
        const Newton n = newton(solver, cplx(cell.re_min + 0.5 * w, cell.im_min + 0.5 * h), cell, tol);
        if (n.ok && inside(n.lambda, cell)) {
            out.push_back(n.lambda);
            return;
        }
    }
    if (std::max(w, h) < min_cell) {
        if (count >= 2)
            throw MembershipError("alpha-breve has a multiple (or unresolvable) zero");
        throw NumericalError("Newton failed to converge inside an isolating cell");
    }
    // Split at slightly off-centre lines; retry with another offset if a zero sits on a split line.
    static constexpr double offsets[] = {0.0137, -0.0291, 0.0419, -0.0533, 0.0751};
    for (double off : offsets) {
        const double xm = cell.re_min + (0.5 + off) * w;
        const double ym = cell.im_min + (0.5 - 0.7 * off) * h;
        const Rectangle kids[4] = {{cell.re_min, xm, cell.im_min, ym},
                                   {xm, cell.re_max, cell.im_min, ym},
                                   {cell.re_min, xm, ym, cell.im_max},
                                   {xm, cell.re_max, ym, cell.im_max}};
        int counts[4];
        try {
            for (int k = 0; k < 4; ++k)
                counts[k] = winding(cache, kids[k]);
        } catch (const ContourError&) {
            continue;
        }
        if (counts[0] + counts[1] + counts[2] + counts[3] != count)
            throw NumericalError("quadrisection: child winding numbers do not add up");
        for (int k = 0; k < 4; ++k)
            search(solver, cache, kids[k], counts[k], tol, out);
        return;
    }
    throw NumericalError("quadrisection: zeros on every trial split line");
}

void order_zeros(std::vector<cplx>& z)
{
    std::sort(z.begin(), z.end(), [](cplx a, cplx b) {
        if (std::abs(std::abs(a) - std::abs(b)) > 1e-12)
            return std::abs(a) < std::abs(b);
        return std::arg(a) < std::arg(b);
    });
}

} // namespace

void Rectangle::validate() const
{
    if (!(re_min < re_max) || !(im_min < im_max))
        throw InvalidArgument("empty search rectangle");
    if (!(im_min > 0.0))
        throw InvalidArgument("search rectangle must lie strictly above the real axis");
}

void ScatteringData::validate() const
{
    check_epsilon(epsilon);
    if (rho.epsilon != epsilon)
        throw InvalidArgument("reflection coefficient and scattering data disagree on epsilon");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!(pairs[i].lambda.imag() > 0.0))
            throw MembershipError("eigenvalue not in the upper half plane");
        if (pairs[i].C == 0.0)
            throw MembershipError("norming constant must be nonzero");
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(pairs[i].lambda - pairs[j].lambda) < 1e-10)
                throw MembershipError("eigenvalues must be distinct");
    }
}

cplx breve_alpha(const PotentialSamples& q, cplx lambda)
{
    return JostSolver(q).breve_alpha(lambda);
}

int count_zeros(const JostSolver& solver, const Rectangle& r)
{
    r.validate();
    BreveCache cache(solver);
    return winding(cache, r);
}

int count_zeros(const PotentialSamples& q, const Rectangle& r)
{
    return count_zeros(JostSolver(q), r);
}

std::vector<cplx> find_zeros(const JostSolver& solver, const Rectangle& r, double tol)
{
    r.validate();
    if (!(tol > 0.0))
        throw InvalidArgument("find_zeros requires tol > 0");
    BreveCache cache(solver);
    std::vector<cplx> out;
    search(solver, cache, r, winding(cache, r), tol, out);
    order_zeros(out);
    return out;
}

std::vector<cplx> find_zeros(const PotentialSamples& q, const Rectangle& r, double tol)
{
    return find_zeros(JostSolver(q), r, tol);
}

cplx alpha_prime_at(const std::function<cplx(cplx)>& f, cplx lambda0, double radius, int points)
{
    if (!(radius > 0.0) || points < 4)
        throw InvalidArgument("alpha_prime_at requires radius > 0 and at least 4 nodes");
    std::vector<cplx> vals(static_cast<std::size_t>(points));
    parallel_for(vals.size(), [&](std::size_t k) {
        vals[k] = f(lambda0 + radius * std::exp(I * (2.0 * pi * static_cast<double>(k) / points)));
    });
    cplx s = 0.0;
    for (int k = 0; k < points; ++k)
        s += vals[static_cast<std::size_t>(k)] * std::exp(-I * (2.0 * pi * k / points));
    return s / (static_cast<double>(points) * radius);
}

cplx alpha_prime_at(const JostSolver& solver, cplx lambda0, double radius, int points)
{
    if (!(radius > 0.0) || radius > lambda0.imag())
        throw InvalidArgument("alpha_prime_at: the circle must stay in the closed upper half plane");
    return alpha_prime_at([&](cplx z) { return solver.breve_alpha(z); }, lambda0, radius, points);
}

cplx alpha_prime_at(const PotentialSamples& q, cplx lambda0, double radius, int points)
{
    return alpha_prime_at(JostSolver(q), lambda0, radius, points);
}

NormingDetail norming_detail(const JostSolver& solver, cplx lam)
{
    if (!(lam.imag() > 0.0))
        throw InvalidArgument("norming constant needs Im lambda > 0");
    const double eps = solver.potential().epsilon;
    const JostColumn m = solver.minus(lam);
    const JostColumn p = solver.plus(std::conj(lam));
    const cplx e = std::exp(2.0 * I * lam * solver.match_point());
    // N2+(lambda) = (eps conj(m21+(conj lambda)), conj(n11+(conj lambda)))
    const cplx n12 = eps * std::conj(p.m21), n22 = std::conj(p.n11);
    const double a12 = std::abs(lam * n12), a22 = std::abs(n22);
    const cplx B1 = m.n11 / (lam * e * n12);
    const cplx B2 = m.m21 / (e * n22);
    const cplx B = a12 > a22 ? B1 : B2;
    double mismatch = 0.0;
    if (std::min(a12, a22) > 1e-3 * std::max(a12, a22))
        mismatch = std::abs(B1 - B2) / std::abs(B);
    if (mismatch > 1e-4)
        throw NumericalError("norming constant: component ratios disagree (not an eigenvalue?)");
    const double radius = std::min(0.5 * lam.imag(), 0.05);
    const cplx ap = alpha_prime_at(solver, lam, radius);
    if (std::abs(ap) < 1e-8)
        throw MembershipError("alpha-breve' vanishes: eigenvalue is not simple");
    return {B, ap, B / ap, mismatch};
}

cplx norming_constant(const JostSolver& solver, cplx lambda_j)
{
    return norming_detail(solver, lambda_j).C;
}

cplx norming_constant(const PotentialSamples& q, cplx lambda_j)
{
    return norming_constant(JostSolver(q), lambda_j);
}

ScatteringData scattering_transform(const JostSolver& solver, const Grid& lambda_grid, const Rectangle& r)
{
    ReflectionCoefficient rho = reflection(solver, lambda_grid);
    std::vector<DiscretePair> pairs;
    for (cplx z : find_zeros(solver, r))
        pairs.push_back({z, norming_constant(solver, z)});
    ScatteringData d{std::move(rho), std::move(pairs), solver.potential().epsilon};
    d.validate();
    return d;
}

ScatteringData scattering_transform(const PotentialSamples& q, const Grid& lambda_grid, const Rectangle& r)
{
    return scattering_transform(JostSolver(q), lambda_grid, r);
}

} // namespace dnls
