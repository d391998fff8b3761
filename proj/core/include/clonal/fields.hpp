#pragma once

#include <cstddef>
#include <vector>

#include "clonal/grid.hpp"

namespace clonal {

/// Sampled division modulus beta(a, l) and mortality mu(a, l), age-major.
///
/// The last age row of beta is zeroed at construction (cells at maximal
/// age do not divide). The removed values are kept as the left limit of
/// beta at a_max: age integrals sample the jump there by that limit, so a
/// beta that is smooth up to a_max keeps second-order trapezoid accuracy.
class CoefficientField {
public:
    CoefficientField() = default;
    CoefficientField(Grid grid, std::vector<double> beta, std::vector<double> mu);

    static CoefficientField constant(const Grid& grid, double beta, double mu);

    const Grid& grid() const { return grid_; }
    const std::vector<double>& beta() const { return beta_; }
    const std::vector<double>& mu() const { return mu_; }
    double beta(std::size_t k, std::size_t i) const { return beta_[grid_.index(k, i)]; }
    double mu(std::size_t k, std::size_t i) const { return mu_[grid_.index(k, i)]; }

    /// Largest beta value removed from the a = a_max row (0 if none).
    double beta_clipped_max() const { return beta_clipped_max_; }

    /// Value to use for beta(k, i) inside age quadratures: the stored
    /// sample, except the left limit on the a = a_max row.
    double beta_integrand(std::size_t k, std::size_t i) const {
        return k + 1 == grid_.n_age ? beta_left_limit_[i] : beta_[grid_.index(k, i)];
    }

    double beta_max() const;
    /// Over the integrand values, so the zeroed a_max row does not count.
    double beta_min() const;
    double mu_min() const;

private:
    Grid grid_{};
    std::vector<double> beta_;
    std::vector<double> mu_;
    std::vector<double> beta_left_limit_;
    double beta_clipped_max_ = 0.0;
};

/// Population density p(a, l) at one instant. Nonnegative, age-major.
class DensityField {
public:
    DensityField() = default;
    explicit DensityField(Grid grid);
    DensityField(Grid grid, std::vector<double> values);

    const Grid& grid() const { return grid_; }
    const std::vector<double>& values() const { return p_; }
    std::vector<double>& values() { return p_; }

    double operator()(std::size_t k, std::size_t i) const { return p_[grid_.index(k, i)]; }
    double& operator()(std::size_t k, std::size_t i) { return p_[grid_.index(k, i)]; }

    /// Trapezoid double integral over the whole grid.
    double total() const;

    /// Age-integrated profile q(l_i) = int p(a, l_i) da.
    std::vector<double> length_profile() const;

    double max_value() const;

    /// Throws ContractViolation when any entry is negative or not finite.
    void check_valid() const;

private:
    Grid grid_{};
    std::vector<double> p_;
};

} // namespace clonal
