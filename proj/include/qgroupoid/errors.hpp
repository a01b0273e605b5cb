#pragma once

#include <stdexcept>
#include <string>

namespace qgroupoid {

// Base of every error raised by the library. The CLI maps the concrete
// types onto its exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Entropic index q >= 3: the q-Gaussian has no finite normalization.
class NotNormalizableError : public DomainError {
public:
    using DomainError::DomainError;
};

// Argument sits on a pole of a rational map.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

// Iterative kernel did not meet its residual contract within its iteration cap.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Hypergeometric parameters outside the implemented slice.
class UnsupportedParametersError : public Error {
public:
    using Error::Error;
};

// Two maps whose shared index does not match cannot be composed.
class CompositionUndefinedError : public Error {
public:
    using Error::Error;
};

// Reading or writing a file failed.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace qgroupoid
