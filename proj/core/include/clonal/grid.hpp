#pragma once

#include <cstddef>
#include <vector>

namespace clonal {

/// Uniform age x telomere-length grid. Nodes include both endpoints on
/// each axis and the time step is locked to the age step, so transport
/// along characteristics is an exact one-node shift.
///
/// Storage convention for every field on the grid is age-major:
/// node (k, i) with age index k and length index i lives at k * n_len + i.
struct Grid {
    std::size_t n_age = 241;
    std::size_t n_len = 101;
    double a_max = 6.0;
    double l_max = 1.0;

    /// Build and validate; throws ConfigError on bad extents.
    static Grid make(std::size_t n_age, std::size_t n_len, double a_max, double l_max);

    void validate() const;

    double da() const { return a_max / static_cast<double>(n_age - 1); }
    double dl() const { return l_max / static_cast<double>(n_len - 1); }
    double dt() const { return da(); }

    double age(std::size_t k) const;
    double length(std::size_t i) const;

    std::size_t size() const { return n_age * n_len; }
    std::size_t index(std::size_t k, std::size_t i) const { return k * n_len + i; }

    std::vector<double> age_weights() const;
    std::vector<double> length_weights() const;

    bool operator==(const Grid&) const = default;
};

} // namespace clonal
