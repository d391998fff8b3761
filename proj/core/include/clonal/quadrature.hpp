#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace clonal {

/// Trapezoid weights for n uniform nodes with spacing h.
std::vector<double> trapezoid_weights(std::size_t n, double h);

/// Trapezoid integral of uniformly spaced samples.
double trapezoid(std::span<const double> f, double h);

/// Running trapezoid integral; out[0] = 0, out[k] = integral up to node k.
std::vector<double> cumulative_trapezoid(std::span<const double> f, double h);

/// Exact integral over [lo, hi] of the piecewise-linear interpolant of
/// samples f at nodes x_i = i * h. Partial cells are split linearly, so
/// the full range reproduces trapezoid(f, h).
double integrate_interpolant(std::span<const double> f, double h, double lo, double hi);

} // namespace clonal
