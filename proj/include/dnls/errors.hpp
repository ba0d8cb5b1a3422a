#pragma once

#include <stdexcept>
#include <string>

namespace dnls {

// Precondition violations on arguments (bad grids, off-range parameters).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Convergence failures, singular systems, near-singular evaluations.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The potential or the scattering data fall outside the admissible class:
// spectral singularities, multiple zeros, 1 - eps*lambda*|rho|^2 <= 0.
class MembershipError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A zero of alpha-breve sits on (or within 1e-6 of) a counting contour.
class ContourError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace dnls
