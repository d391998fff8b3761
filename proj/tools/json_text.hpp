#pragma once

#include <string>

#include "json.hpp"

namespace clonal::cli {

/// Pretty JSON with every floating-point number printed to 17 significant
/// digits (non-finite values become null). Key order follows the object.
std::string format_json(const nlohmann::ordered_json& value);

/// 10 significant digits, the CSV convention.
std::string csv_number(double v);

} // namespace clonal::cli
