#pragma once

#include <vector>

#include "clonal/fields.hpp"
#include "clonal/grid.hpp"
#include "clonal/scenario.hpp"
#include "clonal/scenario_io.hpp"

namespace clonal {

/// p(a, l, 0) = 1000 l max{a(1 - a), 0}.
double initial_density_value(double a, double l);

/// Division modulus of the worked examples, clipped at zero. With the
/// literal gate the telomere factor is atan(100(l - 0.5) + pi/2) / pi,
/// which is negative below l ~ 0.484 and therefore clipped; the sigmoid
/// gate uses (atan(100(l - 0.5)) + pi/2) / pi instead.
double example_beta_value(double a, double l, double beta0, TelomereGate gate);

DensityField build_initial_density(const Grid& grid);

struct BetaSamples {
    std::vector<double> values;
    /// Formula value at a = a_max was nonzero before the row was zeroed.
    bool clipped_at_a_max = false;
    double clipped_value = 0.0;
};

BetaSamples build_beta(const Grid& grid, double beta0, TelomereGate gate = TelomereGate::literal);

/// Descriptive form of example 1, 2 or 3 on the default grid.
ScenarioSpec example_spec(int which);

/// Example scenario on `grid`, which must have a_max = 6 and l_max = 1.
Scenario example_scenario(int which, const Grid& grid, TelomereGate gate = TelomereGate::literal);

} // namespace clonal
