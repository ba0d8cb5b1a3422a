#pragma once

#include "dnls/spectrum.hpp"

#include <vector>

namespace dnls {

// Element of X = (grid function on the lambda-grid) + C^N.
struct XElement {
    std::vector<cplx> grid;
    std::vector<cplx> discrete;
};

// nu0 = nu11 - 1 on the lambda-grid and v_j = nu11(x, conj lambda_j) at one x.
struct NuSolution {
    GridFunction nu0;
    std::vector<cplx> v;
    double x;
    double residual; // relative residual of the dense solve
};

// The operator K_x of the reduced Beals-Coifman system for fixed data and x.
// With rho_x = exp(-2 i lambda x) rho and C_{j,x} = C_j exp(2 i lambda_j x), and
// for (f, h) in X:
//   g = C+(rho_x f) + sum_j eps conj(C_{j,x}) h_j / (. - conj lambda_j)   (on the grid and at lambda_k)
//   w = -eps lambda conj(rho_x) g
//   K(f, h) = ( C-(w) + sum_k lambda_k C_{k,x} g(lambda_k) / (. - lambda_k),
//               C(w)(conj lambda_i) + sum_k lambda_k C_{k,x} g(lambda_k) / (conj lambda_i - lambda_k) ).
class KOperator {
public:
    KOperator(const ScatteringData& data, double x);

    std::size_t grid_size() const { return m_; }
    std::size_t discrete_size() const { return lam_.size(); }

    XElement apply(const XElement& h) const;
    // K e with e = (1, ..., 1).
    XElement apply_to_unit() const;

    // Dense (M + N) x (M + N) matrix, row-major, grid block first.
    std::vector<cplx> dense() const;

private:
    // Maps g on the grid and g(lambda_k) to K(f, h).
    void finish(const cplx* g, const cplx* gk, cplx* out_grid, cplx* out_disc) const;
    cplx weight(std::size_t m) const; // trapezoid weight / (2 pi i)

    const ScatteringData& data_;
    std::size_t m_;
    int eps_;
    double x_;
    std::vector<cplx> rx_, wfac_, lam_, cx_, cbarx_;
};

XElement assemble_rhs(const ScatteringData& data, double x);
XElement apply_K(const ScatteringData& data, double x, const XElement& h);

// Dense LU solve of (I - K_x) nu# = K_x e. NumericalError if singular or if
// the relative residual exceeds 1e-10.
NuSolution solve_nu(const ScatteringData& data, double x);

// q(x) = -(1/pi) int rho_x (1 + nu0) dlambda + 2 i eps sum_j conj(C_{j,x}) v_j.
cplx reconstruct_point(const ScatteringData& data, double x);
PotentialSamples inverse_transform(const ScatteringData& data, const Grid& xgrid);

// Pure soliton data (rho = 0): the N x N system for v and q = 2 i eps sum conj(C_{j,x}) v_j.
PotentialSamples reflectionless_inverse(const std::vector<DiscretePair>& pairs, int eps, const Grid& xgrid);
cplx reflectionless_point(const std::vector<DiscretePair>& pairs, int eps, double x);

struct CauchyOptions {
    Grid lambda_grid = Grid(-10.0, 10.0, 512);
    Rectangle search = {};
};

// (I o Phi_t o R) q0 sampled on xgrid.
PotentialSamples solve_cauchy(const PotentialSamples& q0, double t, const Grid& xgrid, const CauchyOptions& opt = {});

} // namespace dnls
