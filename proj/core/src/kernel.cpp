#include "clonal/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "clonal/error.hpp"
#include "clonal/quadrature.hpp"

namespace clonal {

DivisionKernel::DivisionKernel(std::size_t n_len, double l_max, std::vector<double> r)
    : n_(n_len), l_max_(l_max), r_(std::move(r)) {
    if (n_ < 3) throw ConfigError("kernel needs at least 3 length nodes");
    if (!(l_max_ > 0.0)) throw ConfigError("kernel length extent must be positive");
    if (r_.size() != n_ * n_) throw ConfigError("kernel table must have n_len * n_len entries");
    for (double x : r_)
        if (!(x >= 0.0) || !std::isfinite(x))
            throw ConfigError("kernel entries must be finite and nonnegative");
    w_ = trapezoid_weights(n_, l_max_ / static_cast<double>(n_ - 1));
}

double DivisionKernel::length(std::size_t i) const {
    return l_max_ * static_cast<double>(i) / static_cast<double>(n_ - 1);
}

double DivisionKernel::column_mass(std::size_t j) const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += w_[i] * r_[i * n_ + j];
    return s;
}

double DivisionKernel::row_mass(std::size_t i) const {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += w_[j] * r_[i * n_ + j];
    return s;
}

double DivisionKernel::normalization() const {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += w_[j] * column_mass(j);
    return s;
}

double DivisionKernel::max_entry() const {
    return r_.empty() ? 0.0 : *std::max_element(r_.begin(), r_.end());
}

DivisionKernel build_gaussian_kernel(const Grid& grid, const std::function<double(double)>& mean,
                                     double sd, double divisor, bool renormalize) {
    grid.validate();
    if (!(sd > 0.0)) throw ConfigError("kernel standard deviation must be positive");
    if (!(divisor > 0.0)) throw ConfigError("kernel divisor must be positive");
    const std::size_t n = grid.n_len;
    const double peak = 1.0 / (sd * std::sqrt(2.0 * std::numbers::pi) * divisor);
    std::vector<double> r(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        const double m = mean(grid.length(j));
        for (std::size_t i = 0; i < n; ++i) {
            const double z = (grid.length(i) - m) / sd;
            r[i * n + j] = peak * std::exp(-0.5 * z * z);
        }
    }
    if (renormalize) {
        const auto w = grid.length_weights();
        for (std::size_t j = 0; j < n; ++j) {
            double mass = 0.0;
            for (std::size_t i = 0; i < n; ++i) mass += w[i] * r[i * n + j];
            if (mass <= 0.0) continue;  // column fully underflowed; nothing to rescale
            for (std::size_t i = 0; i < n; ++i) r[i * n + j] /= mass;
        }
    }
    return DivisionKernel(n, grid.l_max, std::move(r));
}

DivisionKernel build_kernel(const Grid& grid, const std::function<double(double, double)>& rf) {
    grid.validate();
    const std::size_t n = grid.n_len;
    std::vector<double> r(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r[i * n + j] = rf(grid.length(i), grid.length(j));
    return DivisionKernel(n, grid.l_max, std::move(r));
}

} // namespace clonal
