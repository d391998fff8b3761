#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "clonal/grid.hpp"
#include "clonal/scenario.hpp"

namespace clonal {

enum class TelomereGate { literal, sigmoid };

struct BetaSpec {
    enum class Kind { example, constant, table };
    Kind kind = Kind::example;
    double beta0 = 13.0;
    TelomereGate gate = TelomereGate::literal;
    double value = 0.0;
    std::vector<double> table;  // age-major n_age * n_len
};

struct MuSpec {
    enum class Kind { constant, table };
    Kind kind = Kind::constant;
    double value = 0.0;
    std::vector<double> table;
};

struct KernelSpec {
    enum class Kind { gaussian, table };
    enum class Mean { shift, affine };
    Kind kind = Kind::gaussian;
    Mean mean = Mean::shift;
    double offset = 0.0;     // shift: m(lhat) = lhat + offset
    double intercept = 0.0;  // affine: m(lhat) = intercept + slope * lhat
    double slope = 1.0;
    double sd = 0.05;
    double divisor = 1.0;
    bool renormalize = false;
    std::vector<double> table;  // row-major n_len * n_len, row = daughter length
};

struct CrowdingSpec {
    enum class Kind { none, linear };
    Kind kind = Kind::none;
    double gamma = 0.0;
};

struct InitialSpec {
    enum class Kind { example, table };
    Kind kind = Kind::example;
    std::vector<double> table;
};

/// Serializable scenario description. resolve() samples it on its grid.
struct ScenarioSpec {
    Grid grid;
    BetaSpec beta;
    MuSpec mu;
    KernelSpec kernel;
    CrowdingSpec crowding;
    InitialSpec initial;
    std::vector<Band> bands;
    double horizon = 0.0;
    double cadence = 1.0;
};

Scenario resolve(const ScenarioSpec& spec);

/// Parse a JSON scenario document; ConfigError with a one-line reason on
/// malformed input or unknown keys.
ScenarioSpec parse_scenario(std::string_view json_text);
ScenarioSpec load_scenario(const std::filesystem::path& path);

/// JSON text that parse_scenario() maps back to the same spec.
std::string to_json(const ScenarioSpec& spec);

} // namespace clonal
