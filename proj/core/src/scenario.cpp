#include "clonal/scenario.hpp"

#include <cmath>

#include "clonal/error.hpp"

namespace clonal {

std::vector<Band> uniform_bands(std::size_t count, double l_max) {
    if (count == 0) throw ConfigError("band count must be positive");
    std::vector<Band> bands(count);
    for (std::size_t b = 0; b < count; ++b)
        bands[b] = {l_max * static_cast<double>(b) / static_cast<double>(count),
                    l_max * static_cast<double>(b + 1) / static_cast<double>(count)};
    return bands;
}

void Scenario::validate() const {
    grid.validate();
    if (!(coefficients.grid() == grid)) throw ConfigError("coefficient grid differs from scenario grid");
    if (!(initial.grid() == grid)) throw ConfigError("initial density grid differs from scenario grid");
    if (kernel.size() != grid.n_len || kernel.l_max() != grid.l_max)
        throw ConfigError("kernel size differs from the telomere grid");
    try {
        initial.check_valid();
    } catch (const ContractViolation& e) {
        throw ConfigError(std::string("initial density: ") + e.what());
    }
    if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw ConfigError("horizon must be finite and >= 0");
    if (!(cadence > 0.0) || !std::isfinite(cadence)) throw ConfigError("cadence must be positive");
    for (const Band& b : bands)
        if (!(0.0 <= b.lo && b.lo < b.hi && b.hi <= grid.l_max))
            throw ConfigError("bands must satisfy 0 <= lo < hi <= l_max");
}

std::size_t Scenario::step_count() const {
    return static_cast<std::size_t>(std::llround(horizon / grid.dt()));
}

} // namespace clonal
