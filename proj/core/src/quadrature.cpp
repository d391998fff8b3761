#include "clonal/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "clonal/error.hpp"

namespace clonal {

std::vector<double> trapezoid_weights(std::size_t n, double h) {
    if (n < 2) throw ConfigError("trapezoid rule needs at least two nodes");
    std::vector<double> w(n, h);
    w.front() = 0.5 * h;
    w.back() = 0.5 * h;
    return w;
}

double trapezoid(std::span<const double> f, double h) {
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * h;
}

std::vector<double> cumulative_trapezoid(std::span<const double> f, double h) {
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t k = 1; k < f.size(); ++k) out[k] = out[k - 1] + 0.5 * h * (f[k - 1] + f[k]);
    return out;
}

double integrate_interpolant(std::span<const double> f, double h, double lo, double hi) {
    if (f.size() < 2) return 0.0;
    const double x_end = h * static_cast<double>(f.size() - 1);
    lo = std::clamp(lo, 0.0, x_end);
    hi = std::clamp(hi, 0.0, x_end);
    if (hi <= lo) return 0.0;

    auto value_at = [&](std::size_t cell, double x) {
        const double x0 = h * static_cast<double>(cell);
        const double t = (x - x0) / h;
        return f[cell] + t * (f[cell + 1] - f[cell]);
    };

    const std::size_t last_cell = f.size() - 2;
    double sum = 0.0;
    for (std::size_t c = 0; c <= last_cell; ++c) {
        // Node positions derived the same way as Grid::length to keep
        // band edges that sit on nodes exact.
        const double x0 = x_end * static_cast<double>(c) / static_cast<double>(f.size() - 1);
        const double x1 = x_end * static_cast<double>(c + 1) / static_cast<double>(f.size() - 1);
        const double a = std::max(lo, x0);
        const double b = std::min(hi, x1);
        if (b <= a) continue;
        if (a == x0 && b == x1) {
            sum += 0.5 * (x1 - x0) * (f[c] + f[c + 1]);
        } else {
            sum += 0.5 * (b - a) * (value_at(c, a) + value_at(c, b));
        }
    }
    return sum;
}

} // namespace clonal
