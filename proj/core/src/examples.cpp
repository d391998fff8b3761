#include "clonal/examples.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "clonal/error.hpp"

namespace clonal {

double initial_density_value(double a, double l) {
    return 1000.0 * l * std::max(a * (1.0 - a), 0.0);
}

double example_beta_value(double a, double l, double beta0, TelomereGate gate) {
    constexpr double pi = std::numbers::pi;
    if (a < 1.0) return 0.0;
    const double age_part = std::max(beta0 * (a - 1.0) * std::exp(-6.0 * (a - 1.0)), 0.0);
    const double gate_value = gate == TelomereGate::literal
                                  ? std::atan(100.0 * (l - 0.5) + pi / 2.0) / pi
                                  : (std::atan(100.0 * (l - 0.5)) + pi / 2.0) / pi;
    return std::max(age_part * gate_value, 0.0);
}

DensityField build_initial_density(const Grid& grid) {
    grid.validate();
    DensityField p(grid);
    for (std::size_t k = 0; k < grid.n_age; ++k)
        for (std::size_t i = 0; i < grid.n_len; ++i)
            p(k, i) = initial_density_value(grid.age(k), grid.length(i));
    return p;
}

BetaSamples build_beta(const Grid& grid, double beta0, TelomereGate gate) {
    grid.validate();
    if (!(beta0 > 0.0)) throw ConfigError("beta0 must be positive");
    BetaSamples out;
    out.values.resize(grid.size());
    for (std::size_t k = 0; k < grid.n_age; ++k)
        for (std::size_t i = 0; i < grid.n_len; ++i)
            out.values[grid.index(k, i)] = example_beta_value(grid.age(k), grid.length(i), beta0, gate);
    const std::size_t last = grid.n_age - 1;
    for (std::size_t i = 0; i < grid.n_len; ++i) {
        double& b = out.values[grid.index(last, i)];
        out.clipped_value = std::max(out.clipped_value, b);
        b = 0.0;
    }
    out.clipped_at_a_max = out.clipped_value > 0.0;
    return out;
}

ScenarioSpec example_spec(int which) {
    ScenarioSpec s;
    s.grid = Grid{241, 101, 6.0, 1.0};
    s.beta.kind = BetaSpec::Kind::example;
    s.kernel.kind = KernelSpec::Kind::gaussian;
    s.kernel.sd = 0.05;
    s.initial.kind = InitialSpec::Kind::example;
    switch (which) {
    case 1:
        s.beta.beta0 = 13.0;
        s.mu.value = 0.05;
        s.kernel.mean = KernelSpec::Mean::shift;
        s.kernel.offset = -0.2;
        s.kernel.divisor = 0.8;
        s.bands = uniform_bands(5, 1.0);
        s.horizon = 14.0;
        s.cadence = 1.0;
        break;
    case 2:
    case 3:
        s.beta.beta0 = 180.0;
        s.mu.value = 0.3;
        // m(lhat) = 1 + 2 (lhat - 0.9)
        s.kernel.mean = KernelSpec::Mean::affine;
        s.kernel.intercept = -0.8;
        s.kernel.slope = 2.0;
        s.kernel.divisor = 0.5;
        s.bands = uniform_bands(4, 1.0);
        s.horizon = which == 2 ? 20.0 : 50.0;
        s.cadence = which == 2 ? 2.0 : 5.0;
        if (which == 3) {
            s.crowding.kind = CrowdingSpec::Kind::linear;
            s.crowding.gamma = 1e-5;
        }
        break;
    default:
        throw ConfigError("example id must be 1, 2 or 3 (got " + std::to_string(which) + ")");
    }
    return s;
}

Scenario example_scenario(int which, const Grid& grid, TelomereGate gate) {
    grid.validate();
    if (grid.a_max != 6.0 || grid.l_max != 1.0)
        throw ConfigError("example scenarios require a_max = 6 and l_max = 1");
    ScenarioSpec s = example_spec(which);
    s.grid = grid;
    s.beta.gate = gate;
    return resolve(s);
}

} // namespace clonal
