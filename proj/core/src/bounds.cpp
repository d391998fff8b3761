#include "clonal/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "clonal/error.hpp"
#include "clonal/quadrature.hpp"

namespace clonal {

Band ClassBoundConfig::band(std::size_t j) const {
    return {std::max(0.0, l_max - static_cast<double>(j + 1) * delta), l_max - static_cast<double>(j) * delta};
}

std::vector<Band> ClassBoundConfig::bands() const {
    std::vector<Band> out;
    for (std::size_t j = 0; j <= N; ++j) out.push_back(band(j));
    return out;
}

bool check_no_self_renewal(const DivisionKernel& kernel, double delta) {
    if (!(delta > 0.0 && delta < kernel.l_max())) throw ConfigError("delta must lie in (0, l_max)");
    const double cut = 1e-12 * kernel.max_entry();
    const double slack = 1e-9 * kernel.l_max();
    for (std::size_t j = 0; j < kernel.size(); ++j) {
        const double lh = kernel.length(j);
        for (std::size_t i = 0; i < kernel.size(); ++i) {
            const double l = kernel.length(i);
            if (l >= lh - delta - slack && l <= lh + slack && kernel(i, j) > cut) return false;
        }
    }
    return true;
}

ClassBoundConfig make_class_bound_config(const CoefficientField& coefficients, const DivisionKernel& kernel,
                                         double delta) {
    const double l_max = kernel.l_max();
    if (!(delta > 0.0 && delta < l_max)) throw ConfigError("delta must lie in (0, l_max)");
    ClassBoundConfig c;
    c.delta = delta;
    c.l_max = l_max;
    // Largest N with l_max - (N + 1) delta > 0, tolerant of ratios like 1 / 0.2.
    const double ratio = l_max / delta;
    const double top = std::ceil(ratio - 1e-6);
    if (top < 2.0) throw ConfigError("delta too large: need l_max - delta > 0 for at least one band");
    c.N = static_cast<std::size_t>(top) - 2;
    c.r_max = kernel.max_entry();
    c.beta_max = coefficients.beta_max();
    c.beta_min = coefficients.beta_min();
    c.mu_min = coefficients.mu_min();
    c.sigma = c.beta_min + c.mu_min;
    c.omega = 2.0 * delta * c.r_max * c.beta_max;
    c.hypothesis_satisfied = check_no_self_renewal(kernel, delta);
    return c;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t m = 1; m <= k; ++m) {
        // result * factor is divisible by m; cancel first so only a true overflow trips.
        const std::uint64_t g = std::gcd(result, m);
        const std::uint64_t factor = (n - k + m) / (m / g);
        const std::uint64_t base = result / g;
        if (base > std::numeric_limits<std::uint64_t>::max() / factor)
            throw NumericalError("binomial coefficient overflows 64 bits");
        result = base * factor;
    }
    return result;
}

double class_bound_curve(const ClassBoundConfig& config, std::size_t j, std::span<const double> P_init,
                         double t, InnerWeight weight) {
    if (j > config.N) throw ContractViolation("band index exceeds N");
    if (P_init.size() <= j) throw ContractViolation("initial band populations do not cover band j");
    double sum = P_init[j];
    double power = 1.0;  // (omega t)^k / k!
    for (std::size_t k = 1; k <= j; ++k) {
        power *= config.omega * t / static_cast<double>(k);
        double inner = 0.0;
        for (std::size_t i = 0; i + k <= j; ++i) {
            const double c = static_cast<double>(binomial(j - 1 - i, k - 1));
            inner += c * (weight == InnerWeight::initial_class_i ? P_init[i] : P_init[j]);
        }
        sum += power * inner;
    }
    return std::exp(-config.sigma * t) * sum;
}

ClassBoundReport verify_class_bounds(const SimulationTrace& trace, const ClassBoundConfig& config) {
    const auto expected = config.bands();
    if (trace.bands.size() != expected.size())
        throw ConfigError("trace bands do not match the class-bound bands");
    for (std::size_t j = 0; j < expected.size(); ++j)
        if (std::abs(trace.bands[j].lo - expected[j].lo) > 1e-12 || std::abs(trace.bands[j].hi - expected[j].hi) > 1e-12)
            throw ConfigError("trace bands do not match the class-bound bands");
    if (trace.times.empty()) throw ConfigError("empty trace");

    ClassBoundReport rep;
    rep.certified = config.hypothesis_satisfied;
    rep.worst_ratio.assign(expected.size(), 0.0);
    std::vector<double> P0(expected.size());
    for (std::size_t j = 0; j < expected.size(); ++j) P0[j] = trace.class_totals[j].front();

    for (std::size_t n = 0; n < trace.times.size(); ++n) {
        const double t = trace.times[n];
        for (std::size_t j = 0; j < expected.size(); ++j) {
            ClassBoundRow row;
            row.time = t;
            row.band = j;
            row.simulated = trace.class_totals[j][n];
            row.bound = class_bound_curve(config, j, P0, t);
            row.ratio = row.bound > 0.0 ? row.simulated / row.bound : (row.simulated > 0.0 ? INFINITY : 0.0);
            rep.worst_ratio[j] = std::max(rep.worst_ratio[j], row.ratio);
            if (row.simulated > row.bound * (1.0 + 1e-6) + 1e-12) {
                rep.all_hold = false;
                ++rep.violations;
            }
            rep.rows.push_back(row);
        }
    }
    return rep;
}

RenewalBoundReport verify_renewal_lower_bound(const SimulationTrace& trace, const Scenario& scenario,
                                              double delta, double r1, double beta1, double mu1) {
    const Grid& g = scenario.grid;
    if (!(delta > 0.0 && delta < g.l_max)) throw ConfigError("delta must lie in (0, l_max)");
    RenewalBoundReport rep;
    rep.rate = 2.0 * r1 * beta1 - beta1 - mu1;
    rep.tolerance = 0.02 * std::abs(rep.rate);

    const Band top{g.l_max - delta, g.l_max};
    std::size_t band_index = trace.bands.size();
    for (std::size_t b = 0; b < trace.bands.size(); ++b)
        if (std::abs(trace.bands[b].lo - top.lo) < 1e-12 && std::abs(trace.bands[b].hi - top.hi) < 1e-12)
            band_index = b;
    if (band_index == trace.bands.size()) throw ConfigError("trace does not carry the top band");

    // Hypotheses on the top band.
    const double slack = 1e-9 * g.l_max;
    const auto& c = scenario.coefficients;
    bool ok = true;
    for (std::size_t k = 0; k + 1 < g.n_age && ok; ++k)
        for (std::size_t i = 0; i < g.n_len; ++i) {
            if (g.length(i) < top.lo - slack) continue;
            if (std::abs(c.beta(k, i) - beta1) > 1e-12 * std::max(1.0, beta1) ||
                std::abs(c.mu(k, i) - mu1) > 1e-12 * std::max(1.0, mu1)) {
                ok = false;
                rep.reason = "beta or mu is not constant on the top band";
                break;
            }
        }
    if (ok) {
        const auto& K = scenario.kernel;
        std::vector<double> column(K.size());
        for (std::size_t j = 0; j < K.size() && ok; ++j) {
            if (K.length(j) < top.lo - slack) continue;
            for (std::size_t i = 0; i < K.size(); ++i) column[i] = K(i, j);
            if (!(integrate_interpolant(column, g.dl(), top.lo, top.hi) > r1)) {
                ok = false;
                rep.reason = "top-band daughter mass does not exceed r1";
            }
        }
    }
    if (ok && !((2.0 * r1 - 1.0) * beta1 >= mu1)) {
        ok = false;
        rep.reason = "(2 r1 - 1) beta1 < mu1";
    }
    rep.certified = ok;

    // Least-squares slope of log P_top over [a_max, T].
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t m = 0;
    const auto& series = trace.class_totals[band_index];
    for (std::size_t n = 0; n < trace.times.size(); ++n) {
        const double t = trace.times[n];
        if (t < g.a_max - 1e-12 || !(series[n] > 0.0)) continue;
        const double y = std::log(series[n]);
        sx += t;
        sy += y;
        sxx += t * t;
        sxy += t * y;
        ++m;
    }
    if (m < 2) throw ConfigError("trace does not extend past a_max; nothing to fit");
    const double dm = static_cast<double>(m);
    rep.fitted_slope = (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
    rep.holds = rep.fitted_slope >= rep.rate - rep.tolerance;
    return rep;
}

} // namespace clonal
