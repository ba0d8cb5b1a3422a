#pragma once

#include "dnls/direct.hpp"
#include "dnls/grid.hpp"
#include "dnls/potential.hpp"
#include "dnls/special.hpp"

#include <vector>

namespace dnls {

// q(x) = nu sech(x)^(1 - 2 i mu) exp(i (s0 - eps nu^2 tanh x - 2 delta x)).
struct TVParameters {
    double nu = 0.6;
    double mu = 0.3;
    double delta = 0.4;
    double s0 = 0.0;
    int epsilon = -1;

    void validate() const; // nu > 0, eps = +-1
};

PotentialSamples tv_potential(const TVParameters& p, const Grid& xgrid, double tail_tol = 1e-10);

// Hypergeometric parameters at spectral parameter lambda:
// a + b = 2 i mu, a b = eps nu^2 lambda, c = -i lambda + i (mu + delta) + 1/2,
// i.e. a, b = i mu +- i nu sqrt(-eps) R(-lambda).
HypergeometricParams tv_hypergeometric_params(const TVParameters& p, cplx lambda);

struct TVScattering {
    cplx alpha_bar; // conj(alpha(conj lambda)), analytic in the upper half plane
    cplx beta_bar;  // conj(beta(conj lambda)), meromorphic there
};

// Closed-form scattering data through log-Gamma and 1/Gamma. Regular at
// lambda = 0. Throws InvalidArgument at poles of the beta expression.
TVScattering tv_scattering(const TVParameters& p, cplx lambda);
// Same expressions for given (a, b, c); symmetric in a and b by construction.
TVScattering tv_scattering(const TVParameters& p, const HypergeometricParams& abc);

// Reflection coefficient rho = beta/alpha on a real grid.
ReflectionCoefficient tv_reflection(const TVParameters& p, const Grid& lambda_grid);

// Zeros of alpha-breve in the upper half plane, each a root of
// lambda - delta - nu sqrt(-eps) R(-lambda) + i(n - 1/2) = 0 for some n >= 1.
// Empty without solving when -eps delta < mu^2/nu^2.
std::vector<cplx> tv_eigenvalues(const TVParameters& p);
bool tv_certified_empty(const TVParameters& p);

// Derivative of alpha-breve at one of its zeros, from the simple zero of 1/Gamma.
cplx tv_alpha_prime(const TVParameters& p, cplx lambda_n);
// C_n = -eps conj(beta(conj lambda_n)) / alpha-breve'(lambda_n).
cplx tv_norming_constant(const TVParameters& p, cplx lambda_n);

// Closed-form first columns N1- and N1+ at x, through the variable
// s = (1 + tanh x)/2 and the scalar factor g(s) = s^(i lambda/2 - i(mu+delta)/2)
// (1-s)^(-i lambda/2 - i(mu-delta)/2). Test utility only.
struct TVJost {
    cplx n11_minus, n21_minus, n11_plus, n21_plus;
};
TVJost tv_jost_closed_form(const TVParameters& p, double x, cplx lambda);

// First-order Born approximation of rho for q = mu_scale * phi:
// rho ~ -mu_scale int exp(2 i lambda y) phi(y) dy.
ReflectionCoefficient born_reflection(const PotentialSamples& phi, double mu_scale, const Grid& lambda_grid);

struct SplitStepOptions {
    double tol = 1e-6;    // successive halvings must agree in sup norm
    int max_halvings = 12;
};

// Pseudo-spectral integrator for i q_t + q_xx + i eps q^2 conj(q)_x + |q|^4 q / 2 = 0:
// Lawson (integrating factor) RK4 with 2/3-rule dealiasing of the nonlinear
// terms, step halved from dt until two successive answers agree.
PotentialSamples splitstep_evolve(const PotentialSamples& q0, double t, double dt, const SplitStepOptions& opt = {});

// One fixed-step run, exposed for convergence checks.
PotentialSamples splitstep_fixed(const PotentialSamples& q0, double t, std::size_t steps);

} // namespace dnls
