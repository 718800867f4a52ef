#pragma once

#include <stdexcept>
#include <string>

namespace akhs {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad inputs: violated preconditions, malformed files, unknown names.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A construction that needs ingredients the caller did not provide
// (e.g. anti-derivatives of a profile that only has point evaluation).
class UnsupportedConstructionError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Numerical failure at runtime: quadrature that did not converge,
// factorizations that broke down.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what, double achieved = 0.0)
        : Error(what), achieved_estimate(achieved) {}
    // Best error estimate reached before giving up (0 if not applicable).
    double achieved_estimate;
};

// Histopolation matrix is not numerically positive definite, which signals
// linearly dependent averaging functionals.
class NotPositiveDefiniteError : public NumericError {
public:
    using NumericError::NumericError;
};

} // namespace akhs
