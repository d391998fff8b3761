#pragma once

#include <optional>
#include <vector>

#include "clonal/crowding.hpp"
#include "clonal/fields.hpp"
#include "clonal/grid.hpp"
#include "clonal/kernel.hpp"

namespace clonal {

/// Closed telomere-length interval [lo, hi] used for class populations.
struct Band {
    double lo = 0.0;
    double hi = 0.0;
    bool operator==(const Band&) const = default;
};

/// `count` equal bands covering [0, l_max], ascending in l.
std::vector<Band> uniform_bands(std::size_t count, double l_max);

/// Fully sampled problem definition. No crowding law means the linear model.
struct Scenario {
    Grid grid;
    CoefficientField coefficients;
    DivisionKernel kernel;
    DensityField initial;
    std::optional<CrowdingLaw> crowding;
    double horizon = 0.0;
    double cadence = 1.0;
    std::vector<Band> bands;

    /// Shape and value checks; throws ConfigError.
    void validate() const;
    /// Number of time steps needed to reach the horizon.
    std::size_t step_count() const;
};

} // namespace clonal
