#pragma once

#include <stdexcept>
#include <string>

namespace redundancy {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad parameter values (negative scales, k not dividing n, malformed literals).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Arguments outside the domain of a formula, e.g. k > n.
class DomainError : public Error {
public:
    using Error::Error;
};

// A requested raw moment is infinite (Pareto with alpha <= p).
class MomentDoesNotExist : public Error {
public:
    using Error::Error;
};

// The (distribution, scaling, k) cell has no closed form; use Monte Carlo or bounds.
class NoClosedForm : public Error {
public:
    using Error::Error;
};

// Intermediate magnitudes or cancellation exceed what the working precision can resolve.
class NumericalRangeError : public Error {
public:
    using Error::Error;
};

// Quadrature error estimate above the requested tolerance.
class QuadratureFailure : public Error {
public:
    using Error::Error;
};

}  // namespace redundancy
