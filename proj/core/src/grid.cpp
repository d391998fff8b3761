#include "clonal/grid.hpp"

#include <cmath>
#include <string>

#include "clonal/error.hpp"
#include "clonal/quadrature.hpp"

namespace clonal {

Grid Grid::make(std::size_t n_age, std::size_t n_len, double a_max, double l_max) {
    Grid g{n_age, n_len, a_max, l_max};
    g.validate();
    return g;
}

void Grid::validate() const {
    if (n_age < 3 || n_len < 3)
        throw ConfigError("grid needs at least 3 nodes per axis (got n_age=" + std::to_string(n_age) +
                          ", n_len=" + std::to_string(n_len) + ")");
    if (!(std::isfinite(a_max) && a_max > 0.0) || !(std::isfinite(l_max) && l_max > 0.0))
        throw ConfigError("grid extents a_max and l_max must be positive and finite");
}

double Grid::age(std::size_t k) const {
    return a_max * static_cast<double>(k) / static_cast<double>(n_age - 1);
}

double Grid::length(std::size_t i) const {
    return l_max * static_cast<double>(i) / static_cast<double>(n_len - 1);
}

std::vector<double> Grid::age_weights() const { return trapezoid_weights(n_age, da()); }
std::vector<double> Grid::length_weights() const { return trapezoid_weights(n_len, dl()); }

} // namespace clonal
