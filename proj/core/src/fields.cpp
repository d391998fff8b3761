#include "clonal/fields.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "clonal/error.hpp"

namespace clonal {

namespace {

void require_nonnegative(const std::vector<double>& v, const char* name) {
    for (double x : v)
        if (!(x >= 0.0) || !std::isfinite(x))
            throw ConfigError(std::string(name) + " must be finite and nonnegative at every node");
}

} // namespace

CoefficientField::CoefficientField(Grid grid, std::vector<double> beta, std::vector<double> mu)
    : grid_(grid), beta_(std::move(beta)), mu_(std::move(mu)) {
    grid_.validate();
    if (beta_.size() != grid_.size() || mu_.size() != grid_.size())
        throw ConfigError("coefficient arrays must have n_age * n_len entries");
    require_nonnegative(beta_, "beta");
    require_nonnegative(mu_, "mu");
    const std::size_t last = grid_.n_age - 1;
    beta_left_limit_.resize(grid_.n_len);
    for (std::size_t i = 0; i < grid_.n_len; ++i) {
        double& b = beta_[grid_.index(last, i)];
        beta_left_limit_[i] = b;
        beta_clipped_max_ = std::max(beta_clipped_max_, b);
        b = 0.0;
    }
}

CoefficientField CoefficientField::constant(const Grid& grid, double beta, double mu) {
    return CoefficientField(grid, std::vector<double>(grid.size(), beta),
                            std::vector<double>(grid.size(), mu));
}

double CoefficientField::beta_max() const { return *std::max_element(beta_.begin(), beta_.end()); }
double CoefficientField::beta_min() const {
    const auto last = beta_.end() - static_cast<std::ptrdiff_t>(grid_.n_len);
    double m = *std::min_element(beta_left_limit_.begin(), beta_left_limit_.end());
    if (grid_.n_age > 1) m = std::min(m, *std::min_element(beta_.begin(), last));
    return m;
}
double CoefficientField::mu_min() const { return *std::min_element(mu_.begin(), mu_.end()); }

DensityField::DensityField(Grid grid) : grid_(grid), p_(grid.size(), 0.0) {}

DensityField::DensityField(Grid grid, std::vector<double> values)
    : grid_(grid), p_(std::move(values)) {
    if (p_.size() != grid_.size()) throw ConfigError("density must have n_age * n_len entries");
}

double DensityField::total() const {
    const auto wa = grid_.age_weights();
    const auto wl = grid_.length_weights();
    double sum = 0.0;
    for (std::size_t k = 0; k < grid_.n_age; ++k) {
        const double* row = p_.data() + grid_.index(k, 0);
        double s = 0.0;
        for (std::size_t i = 0; i < grid_.n_len; ++i) s += wl[i] * row[i];
        sum += wa[k] * s;
    }
    return sum;
}

std::vector<double> DensityField::length_profile() const {
    const auto wa = grid_.age_weights();
    std::vector<double> q(grid_.n_len, 0.0);
    for (std::size_t k = 0; k < grid_.n_age; ++k) {
        const double* row = p_.data() + grid_.index(k, 0);
        for (std::size_t i = 0; i < grid_.n_len; ++i) q[i] += wa[k] * row[i];
    }
    return q;
}

double DensityField::max_value() const {
    return p_.empty() ? 0.0 : *std::max_element(p_.begin(), p_.end());
}

void DensityField::check_valid() const {
    for (std::size_t n = 0; n < p_.size(); ++n) {
        if (!(p_[n] >= 0.0) || !std::isfinite(p_[n]))
            throw ContractViolation("density is negative or not finite at node (" +
                                    std::to_string(n / grid_.n_len) + ", " +
                                    std::to_string(n % grid_.n_len) + ")");
    }
}

} // namespace clonal
