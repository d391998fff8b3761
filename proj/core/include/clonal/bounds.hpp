#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "clonal/fields.hpp"
#include "clonal/kernel.hpp"
#include "clonal/scenario.hpp"
#include "clonal/solver.hpp"

namespace clonal {

/// Band j is [l_max - (j+1) delta, l_max - j delta]; band 0 is the top one.
struct ClassBoundConfig {
    double delta = 0.0;
    double l_max = 0.0;
    std::size_t N = 0;
    double sigma = 0.0;  // beta_min + mu_min
    double omega = 0.0;  // 2 delta r_max beta_max
    double r_max = 0.0;
    double beta_max = 0.0;
    double beta_min = 0.0;
    double mu_min = 0.0;
    /// The kernel vanishes (to 1e-12 relative) on lhat - delta <= l <= lhat.
    bool hypothesis_satisfied = false;

    Band band(std::size_t j) const;
    /// Bands 0..N in the order above.
    std::vector<Band> bands() const;
};

ClassBoundConfig make_class_bound_config(const CoefficientField& coefficients, const DivisionKernel& kernel,
                                         double delta);

/// Kernel entries with lhat - delta <= l <= lhat are all below 1e-12 * max entry.
bool check_no_self_renewal(const DivisionKernel& kernel, double delta);

/// C(n, k) in exact integer arithmetic; NumericalError on overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

enum class InnerWeight {
    initial_class_i,  // sum over i weights P_i(0)
    verbatim_class_j  // every term weights P_j(0)
};

/// e^{-sigma t} (P_j(0) + sum_{k=1}^{j} (omega t)^k / k! sum_{i=0}^{j-k} C(j-1-i, k-1) P_i(0)).
double class_bound_curve(const ClassBoundConfig& config, std::size_t j, std::span<const double> P_init,
                         double t, InnerWeight weight = InnerWeight::initial_class_i);

struct ClassBoundRow {
    double time = 0.0;
    std::size_t band = 0;
    double simulated = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
};

struct ClassBoundReport {
    /// False when the no-self-renewal hypothesis fails; rows are still filled.
    bool certified = false;
    /// No band exceeds bound (1 + 1e-6) + 1e-12 at any stored time.
    bool all_hold = true;
    std::size_t violations = 0;
    /// Largest simulated / bound per band.
    std::vector<double> worst_ratio;
    std::vector<ClassBoundRow> rows;
};

/// Compares each band of the trace with its bound. The trace must carry
/// exactly config.bands() as its bands.
ClassBoundReport verify_class_bounds(const SimulationTrace& trace, const ClassBoundConfig& config);

struct RenewalBoundReport {
    bool certified = false;
    std::string reason;
    double rate = 0.0;  // 2 r1 beta1 - beta1 - mu1
    double fitted_slope = 0.0;
    double tolerance = 0.0;
    bool holds = false;  // fitted_slope >= rate - tolerance
};

/// Least-squares slope of log(top-band population) on [a_max, T] against
/// 2 r1 beta1 - beta1 - mu1. The scenario supplies the hypotheses to check;
/// the trace must carry the band [l_max - delta, l_max].
RenewalBoundReport verify_renewal_lower_bound(const SimulationTrace& trace, const Scenario& scenario,
                                              double delta, double r1, double beta1, double mu1);

} // namespace clonal
