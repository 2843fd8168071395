#pragma once

#include <stdexcept>
#include <string>

namespace hyperscat {

// Base class for all failures raised by the library. The CLI maps the
// subtypes below onto distinct process exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad argument at an operation boundary (non-unit direction, non-finite
// matrix entries, mismatched sizes).
class DomainError : public Error {
public:
    using Error::Error;
};

// Scenario configuration rejected during parsing or validation.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Characteristic roots failed the real-and-separated requirement at some
// sampled (t, omega).
class NotHyperbolic : public Error {
public:
    using Error::Error;
};

// Eigenvector or gap-dependent computation lost too much accuracy.
class IllConditioned : public Error {
public:
    using Error::Error;
};

// Consecutive diagonalizer samples overlap too little to fix the gauge.
class GridTooCoarse : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

// Step-size underflow in an ODE solve.
class StiffnessError : public Error {
public:
    using Error::Error;
};

// A certified tail bound for a t -> +-infinity limit exceeded its budget.
class TailNotConverged : public Error {
public:
    using Error::Error;
};

// Operation called outside its valid pipeline state (e.g. Theta requested
// for a mode that is not R-stable).
class InvalidState : public Error {
public:
    using Error::Error;
};

// Frequency-grid mismatch between mode fields.
class GridError : public Error {
public:
    using Error::Error;
};

class Unsupported : public Error {
public:
    using Error::Error;
};

} // namespace hyperscat
