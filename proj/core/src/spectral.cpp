#include "clonal/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "clonal/error.hpp"
#include "clonal/parallel.hpp"
#include "clonal/quadrature.hpp"

namespace clonal {

namespace {

// Cumulative hazard int_0^a (beta + mu) on every node, age-major.
std::vector<double> cumulative_hazard(const CoefficientField& c) {
    const Grid& g = c.grid();
    const double da = g.da();
    std::vector<double> h(g.size(), 0.0);
    for (std::size_t k = 1; k < g.n_age; ++k)
        for (std::size_t i = 0; i < g.n_len; ++i) {
            const std::size_t a = g.index(k - 1, i);
            const std::size_t b = g.index(k, i);
            h[b] = h[a] + 0.5 * da * (c.beta_integrand(k - 1, i) + c.mu()[a] + c.beta_integrand(k, i) + c.mu()[b]);
        }
    return h;
}

std::vector<double> survival_from_hazard(const CoefficientField& c, const std::vector<double>& hazard,
                                         double lambda) {
    const Grid& g = c.grid();
    const auto wa = g.age_weights();
    std::vector<double> K(g.n_len, 0.0);
    for (std::size_t k = 0; k < g.n_age; ++k) {
        const double shift = lambda * g.age(k);
        for (std::size_t i = 0; i < g.n_len; ++i) {
            const std::size_t n = g.index(k, i);
            const double b = c.beta_integrand(k, i);
            if (b != 0.0) K[i] += wa[k] * b * std::exp(-hazard[n] - shift);
        }
    }
    return K;
}

bool strongly_connected(const std::vector<char>& adj, std::size_t n) {
    // adj[i * n + j] != 0 means an edge j -> i.
    auto reach = [&](bool reverse) {
        std::vector<char> seen(n, 0);
        std::vector<std::size_t> stack{0};
        seen[0] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t u = 0; u < n; ++u) {
                const bool edge = reverse ? adj[v * n + u] : adj[u * n + v];
                if (edge && !seen[u]) {
                    seen[u] = 1;
                    ++count;
                    stack.push_back(u);
                }
            }
        }
        return count == n;
    };
    return reach(false) && reach(true);
}

} // namespace

const char* to_string(Regime r) {
    switch (r) {
    case Regime::decay: return "decay";
    case Regime::growth: return "growth";
    case Regime::steady_family: return "steady-family";
    }
    return "unknown";
}

std::vector<double> DiscreteRenewalOperator::apply(std::span<const double> x) const {
    if (x.size() != n) throw ContractViolation("operator/vector size mismatch");
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += m[i * n + j] * x[j];
        y[i] = s;
    }
    return y;
}

std::vector<double> survival_kernel(const CoefficientField& coefficients, double lambda) {
    return survival_from_hazard(coefficients, cumulative_hazard(coefficients), lambda);
}

DiscreteRenewalOperator assemble(const DivisionKernel& kernel, std::span<const double> survival,
                                 double lambda) {
    const std::size_t n = kernel.size();
    if (survival.size() != n) throw ConfigError("survival vector and kernel sizes differ");
    const auto& w = kernel.weights();
    DiscreteRenewalOperator op;
    op.lambda = lambda;
    op.n = n;
    op.m.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) op.m[i * n + j] = 2.0 * kernel(i, j) * survival[j] * w[j];
    return op;
}

DiscreteRenewalOperator assemble(const CoefficientField& coefficients, const DivisionKernel& kernel,
                                 double lambda) {
    if (kernel.size() != coefficients.grid().n_len) throw ConfigError("kernel and coefficient grids differ");
    const auto K = survival_kernel(coefficients, lambda);
    return assemble(kernel, K, lambda);
}

PerronPair spectral_radius(std::span<const double> m, std::size_t n, const PowerIterationOptions& opt) {
    if (m.size() != n * n) throw ContractViolation("matrix must be n x n");
    PerronPair out;
    out.eigenvector.assign(n, 1.0);
    if (n == 0) {
        out.converged = true;
        return out;
    }
    double max_entry = 0.0;
    for (double v : m) {
        if (v < 0.0) throw ContractViolation("power iteration needs a nonnegative matrix");
        max_entry = std::max(max_entry, v);
    }
    if (max_entry == 0.0) {
        out.converged = true;
        return out;
    }
    const double eps = opt.shift_factor * max_entry;

    std::vector<double> x(n, 1.0);
    std::vector<double> y(n);
    double estimate = 0.0;
    for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
        double norm = 0.0, xy = 0.0, xx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = m.data() + i * n;
            double s = eps * x[i];
            for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
            y[i] = s;
            norm = std::max(norm, s);
            xy += x[i] * s;
            xx += x[i] * x[i];
        }
        const double previous = estimate;
        estimate = xy / xx;  // Rayleigh quotient of the current iterate
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
        out.iterations = it;
        if (it > 1 && std::abs(estimate - previous) < opt.tolerance * estimate) {
            out.converged = true;
            break;
        }
    }
    out.radius = std::max(estimate - eps, 0.0);
    out.eigenvector = x;
    return out;
}

PerronPair spectral_radius(const DiscreteRenewalOperator& op, const PowerIterationOptions& opt) {
    return spectral_radius(op.m, op.n, opt);
}

double separable_radius(double r1, double r2, double beta, double mu) {
    const double s = beta + mu;
    if (!(s > 0.0)) throw ConfigError("separable radius needs beta + mu > 0");
    return 2.0 * r1 * r2 * beta * (-std::expm1(-s)) / s;
}

BoundCurves bound_curves(const CoefficientField& coefficients, const DivisionKernel& kernel) {
    const std::size_t n = kernel.size();
    if (n != coefficients.grid().n_len) throw ConfigError("kernel and coefficient grids differ");
    const auto K = survival_kernel(coefficients, 0.0);
    const auto& w = kernel.weights();
    BoundCurves c;
    c.column.resize(n);
    c.row.resize(n);
    for (std::size_t j = 0; j < n; ++j) c.column[j] = 2.0 * K[j] * kernel.column_mass(j);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += w[j] * kernel(i, j) * K[j];
        c.row[i] = 2.0 * s;
    }
    return c;
}

RadiusBounds radius_bounds(const CoefficientField& coefficients, const DivisionKernel& kernel) {
    const BoundCurves c = bound_curves(coefficients, kernel);
    RadiusBounds b;
    b.column_lower = *std::min_element(c.column.begin(), c.column.end());
    b.column_upper = *std::max_element(c.column.begin(), c.column.end());
    b.row_lower = *std::min_element(c.row.begin(), c.row.end());
    b.row_upper = *std::max_element(c.row.begin(), c.row.end());
    return b;
}

bool irreducible(const DivisionKernel& kernel, std::span<const double> survival, double threshold) {
    const std::size_t n = kernel.size();
    if (survival.size() != n) throw ConfigError("survival vector and kernel sizes differ");
    const auto op = assemble(kernel, survival, 0.0);
    const double max_entry = op.m.empty() ? 0.0 : *std::max_element(op.m.begin(), op.m.end());
    if (max_entry <= 0.0) return false;
    const double cut = threshold * max_entry;
    std::vector<char> adj(n * n);
    for (std::size_t e = 0; e < n * n; ++e) adj[e] = op.m[e] > cut ? 1 : 0;
    return strongly_connected(adj, n);
}

bool kernel_irreducible(const DivisionKernel& kernel, double threshold) {
    const std::vector<double> ones(kernel.size(), 1.0);
    return irreducible(kernel, ones, threshold);
}

CharacteristicRoot growth_rate(const CoefficientField& coefficients, const DivisionKernel& kernel) {
    if (kernel.size() != coefficients.grid().n_len) throw ConfigError("kernel and coefficient grids differ");
    const auto hazard = cumulative_hazard(coefficients);
    CharacteristicRoot root;
    auto g = [&](double lambda) {
        const auto K = survival_from_hazard(coefficients, hazard, lambda);
        const auto pair = spectral_radius(assemble(kernel, K, lambda));
        ++root.evaluations;
        root.converged = root.converged && pair.converged;
        return pair.radius - 1.0;
    };

    constexpr double limit = 50.0;
    double lo = -10.0, hi = 10.0;
    double g_lo = g(lo), g_hi = g(hi);
    while (g_lo < 0.0 && lo > -limit) {
        hi = lo;
        g_hi = g_lo;
        lo = std::max(2.0 * lo, -limit);
        g_lo = g(lo);
    }
    while (g_hi > 0.0 && hi < limit) {
        lo = hi;
        g_lo = g_hi;
        hi = std::min(2.0 * hi, limit);
        g_hi = g(hi);
    }
    if (g_lo < 0.0 || g_hi > 0.0) {
        root.message = "no characteristic root in range [-50, 50]";
        return root;
    }
    while (hi - lo > 1e-8) {
        const double mid = 0.5 * (lo + hi);
        const double g_mid = g(mid);
        if (g_mid > 0.0) lo = mid;
        else if (g_mid < 0.0) hi = mid;
        else lo = hi = mid;
    }
    root.found = true;
    root.lambda = 0.5 * (lo + hi);
    root.radius = g(root.lambda) + 1.0;
    return root;
}

DensityField eigenfunction(const CoefficientField& coefficients, double lambda,
                           std::span<const double> boundary) {
    const Grid& g = coefficients.grid();
    if (boundary.size() != g.n_len) throw ConfigError("boundary vector must have n_len entries");
    for (double b : boundary)
        if (!(b >= 0.0)) throw ContractViolation("eigenfunction boundary vector must be nonnegative");
    const auto hazard = cumulative_hazard(coefficients);
    DensityField psi(g);
    for (std::size_t k = 0; k < g.n_age; ++k) {
        const double shift = lambda * g.age(k);
        for (std::size_t i = 0; i < g.n_len; ++i)
            psi(k, i) = boundary[i] * std::exp(-hazard[g.index(k, i)] - shift);
    }
    return psi;
}

Classification classify(const CoefficientField& coefficients, const DivisionKernel& kernel, double tau) {
    const auto K = survival_kernel(coefficients, 0.0);
    const auto pair = spectral_radius(assemble(kernel, K, 0.0));
    Classification c;
    c.radius = pair.radius;
    c.irreducible = irreducible(kernel, K);
    if (pair.radius < 1.0 - tau) c.regime = Regime::decay;
    else if (pair.radius > 1.0 + tau) c.regime = Regime::growth;
    else c.regime = Regime::steady_family;
    return c;
}

SpectralReport analyze(const CoefficientField& coefficients, const DivisionKernel& kernel) {
    const auto K = survival_kernel(coefficients, 0.0);
    const auto pair = spectral_radius(assemble(kernel, K, 0.0));
    SpectralReport r;
    r.radius = pair.radius;
    r.eigenvector = pair.eigenvector;
    r.iterations = pair.iterations;
    r.converged = pair.converged;
    r.bounds = radius_bounds(coefficients, kernel);
    r.irreducible = irreducible(kernel, K);
    return r;
}

std::vector<double> radius_curve(const CoefficientField& coefficients, const DivisionKernel& kernel,
                                 std::span<const double> lambdas) {
    const auto hazard = cumulative_hazard(coefficients);
    std::vector<double> out(lambdas.size());
    parallel_for(lambdas.size(), [&](std::size_t n) {
        const auto K = survival_from_hazard(coefficients, hazard, lambdas[n]);
        out[n] = spectral_radius(assemble(kernel, K, lambdas[n])).radius;
    });
    return out;
}

} // namespace clonal
