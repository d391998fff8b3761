#pragma once

#include <stdexcept>
#include <string>

namespace clonal {

/// Invalid user input: bad grid, malformed scenario, inconsistent shapes.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what);
};

/// Numerical breakdown during a computation (NaN, overflow, no root).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what);
};

/// A documented precondition of an operation was violated by the caller.
class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& what);
};

} // namespace clonal
