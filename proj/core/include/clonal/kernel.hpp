#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "clonal/grid.hpp"

namespace clonal {

/// Sampled daughter-length density r(l_i, lhat_j) on the length nodes.
/// Row index i is the daughter length, column index j the mother length.
class DivisionKernel {
public:
    DivisionKernel() = default;
    /// `r` is row-major n x n with n = number of length nodes.
    DivisionKernel(std::size_t n_len, double l_max, std::vector<double> r);

    std::size_t size() const { return n_; }
    double l_max() const { return l_max_; }
    double operator()(std::size_t i, std::size_t j) const { return r_[i * n_ + j]; }
    const std::vector<double>& values() const { return r_; }
    const std::vector<double>& weights() const { return w_; }
    double length(std::size_t i) const;

    /// sum_i w_i r(i, j): daughter mass produced per mother at lhat_j.
    double column_mass(std::size_t j) const;
    /// sum_j w_j r(i, j).
    double row_mass(std::size_t i) const;
    /// Double-integral normalization sum_i sum_j w_i w_j r(i, j).
    double normalization() const;
    double max_entry() const;

private:
    std::size_t n_ = 0;
    double l_max_ = 0.0;
    std::vector<double> r_;
    std::vector<double> w_;
};

/// Gaussian daughter-length kernel: entry (i, j) is the normal density at
/// l_i with mean mean(lhat_j) and deviation sd, divided by divisor.
/// With renormalize set, each column is rescaled to unit l-integral.
DivisionKernel build_gaussian_kernel(const Grid& grid, const std::function<double(double)>& mean,
                                     double sd, double divisor, bool renormalize = false);

/// Kernel from a callable r(l, lhat) sampled on the length nodes.
DivisionKernel build_kernel(const Grid& grid, const std::function<double(double, double)>& r);

} // namespace clonal
