#pragma once

#include "dnls/grid.hpp"
#include "dnls/potential.hpp"

#include <memory>
#include <vector>

namespace dnls {

struct JostOptions {
    double tol = 1e-10;       // successive-refinement agreement
    int max_level = 9;        // step = spacing / 2^level
    double regular_switch = 1.0; // |lambda| below which the lambda-scaled system is marched
};

// First column of a normalized Jost solution at the match point.
// m21 = n21 / lambda, marched directly for small |lambda|.
struct JostColumn {
    cplx n11, n21, m21;
    int level;
};

struct JostTrace {
    std::vector<double> x;
    std::vector<cplx> n11, n21;
};

struct JostBoundary {
    cplx n11_plus, n21_plus, n11_minus, n21_minus;
    cplx lambda;
    double x; // match point (the grid point closest to 0)
};

struct TransitionEntries {
    cplx alpha, beta;
    double lambda;
};

struct ReflectionCoefficient {
    Grid grid;
    std::vector<cplx> values;
    int epsilon;

    // Asserts 1 - eps*lambda*|rho|^2 > 0 on the grid (MembershipError).
    ReflectionCoefficient(Grid g, std::vector<cplx> v, int eps);
};

// Marches the Jost first columns for one potential. The potential is
// interpolated spectrally onto refined grids, built lazily and cached; all
// member functions are thread-safe.
class JostSolver {
public:
    explicit JostSolver(PotentialSamples q, JostOptions opt = {});
    ~JostSolver();
    JostSolver(JostSolver&&) noexcept;
    JostSolver& operator=(JostSolver&&) noexcept;

    const PotentialSamples& potential() const;
    double match_point() const;

    // N1+ normalized at +infinity, Im lambda <= 0.
    JostColumn plus(cplx lambda) const;
    // N1- normalized at -infinity, Im lambda >= 0.
    JostColumn minus(cplx lambda) const;

    JostTrace plus_trace(cplx lambda) const;
    JostTrace minus_trace(cplx lambda) const;

    JostBoundary boundary(cplx lambda) const; // real lambda
    TransitionEntries transition(double lambda) const;
    // conj(alpha(conj lambda)), Im lambda >= 0.
    cplx breve_alpha(cplx lambda) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

JostColumn solve_jost_plus(const PotentialSamples& q, cplx lambda);
JostColumn solve_jost_minus(const PotentialSamples& q, cplx lambda);
TransitionEntries transition_entries(const PotentialSamples& q, double lambda);

// rho = beta/alpha on the grid. MembershipError if |alpha| < 1e-6 anywhere.
ReflectionCoefficient reflection(const PotentialSamples& q, const Grid& lambda_grid);
ReflectionCoefficient reflection(const JostSolver& solver, const Grid& lambda_grid);

} // namespace dnls
