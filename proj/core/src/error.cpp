#include "clonal/error.hpp"

namespace clonal {

ConfigError::ConfigError(const std::string& what) : std::runtime_error(what) {}
NumericalError::NumericalError(const std::string& what) : std::runtime_error(what) {}
ContractViolation::ContractViolation(const std::string& what) : std::logic_error(what) {}

} // namespace clonal
