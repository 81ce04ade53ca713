#pragma once

#include <stdexcept>
#include <string>

namespace sidon {

// Base for all library errors. Each subclass maps to one CLI exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad parameters, schema mismatch, unknown operation.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A verdict or internal consistency assertion did not hold.
class AssertionFailure : public Error {
public:
    using Error::Error;
};

// An enumeration or search exceeded its configured budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// A Monte Carlo estimate had too few nonzero observations to fit.
class InsufficientData : public Error {
public:
    using Error::Error;
};

}  // namespace sidon
