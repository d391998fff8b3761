#include "clonal/solver.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "clonal/error.hpp"
#include "clonal/quadrature.hpp"

namespace clonal {

std::vector<double> renewal_boundary(const DensityField& density, const CoefficientField& coefficients,
                                     const DivisionKernel& kernel) {
    const Grid& g = density.grid();
    if (!(coefficients.grid() == g) || kernel.size() != g.n_len)
        throw ConfigError("density, coefficients and kernel must share one grid");
    const auto wa = g.age_weights();
    std::vector<double> divisions(g.n_len, 0.0);
    for (std::size_t k = 0; k < g.n_age; ++k)
        for (std::size_t j = 0; j < g.n_len; ++j) divisions[j] += wa[k] * coefficients.beta_integrand(k, j) * density(k, j);
    const auto& w = kernel.weights();
    std::vector<double> b(g.n_len, 0.0);
    for (std::size_t i = 0; i < g.n_len; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < g.n_len; ++j) s += kernel(i, j) * w[j] * divisions[j];
        b[i] = 2.0 * s;
    }
    return b;
}

Stepper::Stepper(const Scenario& scenario) : scenario_(&scenario) {
    scenario.validate();
    const Grid& g = scenario.grid;
    const auto& c = scenario.coefficients;
    const double dt = g.dt();
    decay_.assign(g.size(), 0.0);
    for (std::size_t k = 1; k < g.n_age; ++k)
        for (std::size_t i = 0; i < g.n_len; ++i) {
            const double h = 0.5 * (c.beta_integrand(k - 1, i) + c.mu(k - 1, i) + c.beta_integrand(k, i) + c.mu(k, i));
            decay_[g.index(k, i)] = std::exp(-h * dt);
        }
    const auto wa = g.age_weights();
    weighted_beta_.resize(g.size());
    for (std::size_t k = 0; k < g.n_age; ++k)
        for (std::size_t i = 0; i < g.n_len; ++i) weighted_beta_[g.index(k, i)] = wa[k] * c.beta_integrand(k, i);
    const auto& w = scenario.kernel.weights();
    kernel_w_.resize(g.n_len * g.n_len);
    for (std::size_t i = 0; i < g.n_len; ++i)
        for (std::size_t j = 0; j < g.n_len; ++j)
            kernel_w_[i * g.n_len + j] = 2.0 * scenario.kernel(i, j) * w[j];
    for (std::size_t i = 0; i < g.n_len; ++i)
        if (c.beta(0, i) > 0.0) self_renewal_at_birth_ = true;
}

void Stepper::advance(DensityField& density) const {
    const Scenario& s = *scenario_;
    const Grid& g = s.grid;
    const std::size_t nl = g.n_len;
    auto& p = density.values();

    double sink = 1.0;
    if (s.crowding) sink = std::exp(-(*s.crowding)(density.total()) * g.dt());

    for (std::size_t k = g.n_age - 1; k >= 1; --k) {
        double* dst = p.data() + k * nl;
        const double* src = p.data() + (k - 1) * nl;
        const double* dec = decay_.data() + k * nl;
        for (std::size_t i = 0; i < nl; ++i) dst[i] = src[i] * dec[i] * sink;
    }

    // Divisions from rows that are already known.
    std::vector<double> divisions(nl, 0.0);
    for (std::size_t k = 1; k < g.n_age; ++k) {
        const double* row = p.data() + k * nl;
        const double* wb = weighted_beta_.data() + k * nl;
        for (std::size_t j = 0; j < nl; ++j) divisions[j] += wb[j] * row[j];
    }
    std::vector<double> base(nl, 0.0);
    for (std::size_t i = 0; i < nl; ++i) {
        const double* kw = kernel_w_.data() + i * nl;
        double acc = 0.0;
        for (std::size_t j = 0; j < nl; ++j) acc += kw[j] * divisions[j];
        base[i] = acc;
    }

    double* newborn = p.data();
    for (std::size_t i = 0; i < nl; ++i) newborn[i] = base[i];
    if (!self_renewal_at_birth_) return;

    // b = base + H b with H(i, j) = 2 r(i, j) w_j wa_0 beta(0, j); H >= 0 keeps b >= 0.
    const double* wb0 = weighted_beta_.data();
    std::vector<double> next(nl);
    for (int it = 0; it < 10000; ++it) {
        double change = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < nl; ++i) {
            const double* kw = kernel_w_.data() + i * nl;
            double acc = base[i];
            for (std::size_t j = 0; j < nl; ++j) acc += kw[j] * wb0[j] * newborn[j];
            next[i] = acc;
            change = std::max(change, std::abs(acc - newborn[i]));
            scale = std::max(scale, std::abs(acc));
        }
        std::copy(next.begin(), next.end(), newborn);
        if (change <= 1e-15 * scale) return;
    }
    throw NumericalError("newborn row did not converge: division rate at age 0 is too large for the age step");
}

DensityField step(const DensityField& density, const Scenario& scenario) {
    density.check_valid();
    if (!(density.grid() == scenario.grid)) throw ConfigError("density grid differs from scenario grid");
    DensityField out = density;
    Stepper(scenario).advance(out);
    return out;
}

double class_population(const DensityField& density, const Band& band) {
    const Grid& g = density.grid();
    if (!(0.0 <= band.lo && band.lo < band.hi && band.hi <= g.l_max))
        throw ConfigError("band must satisfy 0 <= lo < hi <= l_max");
    const auto q = density.length_profile();
    return integrate_interpolant(q, g.dl(), band.lo, band.hi);
}

SimulationTrace simulate(const Scenario& scenario) {
    scenario.validate();
    const Grid& g = scenario.grid;
    const Stepper stepper(scenario);
    const std::size_t steps = scenario.step_count();
    const double dt = g.dt();

    std::vector<std::size_t> snap_steps;
    for (std::size_t m = 0;; ++m) {
        const double t = static_cast<double>(m) * scenario.cadence;
        if (t > scenario.horizon + 0.5 * dt) break;
        const auto s = static_cast<std::size_t>(std::llround(t / dt));
        if (s > steps) break;
        if (snap_steps.empty() || snap_steps.back() != s) snap_steps.push_back(s);
    }

    SimulationTrace trace;
    trace.bands = scenario.bands;
    trace.class_totals.assign(scenario.bands.size(), {});
    trace.times.reserve(steps + 1);
    trace.totals.reserve(steps + 1);

    DensityField p = scenario.initial;
    std::size_t next_snap = 0;
    for (std::size_t n = 0;; ++n) {
        const double t = static_cast<double>(n) * dt;
        const double total = p.total();
        if (!std::isfinite(total)) {
            char msg[160];
            std::snprintf(msg, sizeof msg, "simulation blew up at t=%.6g (max density %.6g)", t, p.max_value());
            throw NumericalError(msg);
        }
        trace.times.push_back(t);
        trace.totals.push_back(total);
        if (!scenario.bands.empty()) {
            const auto q = p.length_profile();
            for (std::size_t b = 0; b < scenario.bands.size(); ++b)
                trace.class_totals[b].push_back(
                    integrate_interpolant(q, g.dl(), scenario.bands[b].lo, scenario.bands[b].hi));
        }
        if (next_snap < snap_steps.size() && snap_steps[next_snap] == n) {
            trace.snapshots.push_back({t, p});
            ++next_snap;
        }
        if (n == steps) break;
        stepper.advance(p);
    }
    return trace;
}

double nilpotency_check(const Grid& grid, const DensityField& p0) {
    Scenario s;
    s.grid = grid;
    s.coefficients = CoefficientField::constant(grid, 0.0, 0.0);
    s.kernel = DivisionKernel(grid.n_len, grid.l_max, std::vector<double>(grid.n_len * grid.n_len, 0.0));
    s.initial = p0;
    // First grid time strictly after a_max.
    s.horizon = grid.a_max + grid.dt();
    s.cadence = s.horizon;
    const auto trace = simulate(s);
    return trace.totals.back();
}

std::vector<double> explicit_crowding_oracle(const SimulationTrace& linear_trace, const CrowdingLaw& crowding) {
    const auto& t = linear_trace.times;
    const auto& P = linear_trace.totals;
    if (t.size() != P.size()) throw ConfigError("trace times and totals differ in length");
    std::vector<double> out(P.size());
    double integral = 0.0;
    for (std::size_t n = 0; n < P.size(); ++n) {
        if (n > 0) integral += 0.5 * (t[n] - t[n - 1]) * (crowding(P[n - 1]) + crowding(P[n]));
        out[n] = P[n] / (1.0 + integral);
    }
    return out;
}

} // namespace clonal
