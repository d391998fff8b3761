#pragma once

#include <cstddef>
#include <vector>

#include "clonal/crowding.hpp"
#include "clonal/fields.hpp"
#include "clonal/kernel.hpp"
#include "clonal/scenario.hpp"

namespace clonal {

struct Snapshot {
    double time = 0.0;
    DensityField density;
};

struct SimulationTrace {
    std::vector<double> times;
    std::vector<double> totals;
    std::vector<Band> bands;
    /// class_totals[b][n] is the population of bands[b] at times[n].
    std::vector<std::vector<double>> class_totals;
    std::vector<Snapshot> snapshots;
};

/// Newborn density 2 int r(l, lhat) int beta p da dlhat on the length nodes.
std::vector<double> renewal_boundary(const DensityField& density, const CoefficientField& coefficients,
                                     const DivisionKernel& kernel);

/// One time step of the scheme, with everything that does not depend on
/// the density precomputed.
///
/// Rows are shifted one age node and decayed by the trapezoid average of
/// beta + mu along the characteristic, times exp(-F(P) dt) with P the
/// total at the start of the step. The a = 0 row is then the renewal
/// boundary of the shifted density; its own a = 0 term is solved for by
/// a nonnegative fixed-point iteration when beta(0, .) is not zero.
class Stepper {
public:
    explicit Stepper(const Scenario& scenario);

    /// Advance in place. The input must be a valid density.
    void advance(DensityField& density) const;

    const Scenario& scenario() const { return *scenario_; }

private:
    const Scenario* scenario_;
    std::vector<double> decay_;       // per node, row 0 unused
    std::vector<double> weighted_beta_;  // wa_k * beta(k, i)
    std::vector<double> kernel_w_;    // 2 r(i, j) w_j
    bool self_renewal_at_birth_ = false;
};

/// Single step; ContractViolation on negative input.
DensityField step(const DensityField& density, const Scenario& scenario);

/// Steps to the horizon, recording totals and band populations at every
/// step and snapshots at the cadence. NumericalError on NaN or overflow.
SimulationTrace simulate(const Scenario& scenario);

/// Total population at the first time after a_max with beta = mu = 0.
double nilpotency_check(const Grid& grid, const DensityField& p0);

/// Linear totals divided by 1 + int_0^t F(P_lin(s)) ds, the integral by
/// the trapezoid rule over the stored per-step totals.
std::vector<double> explicit_crowding_oracle(const SimulationTrace& linear_trace, const CrowdingLaw& crowding);

/// Double integral of the density over lo <= l <= hi.
double class_population(const DensityField& density, const Band& band);

} // namespace clonal
