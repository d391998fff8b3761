#pragma once

#include <ostream>

namespace clonal::cli {

enum ExitCode : int { ok = 0, validation_error = 1, numerical_error = 2 };

/// Parse argv, run the subcommand and write its artifacts.
/// Diagnostics are a single line on `err`.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace clonal::cli
