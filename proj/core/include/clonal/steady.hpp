#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clonal/crowding.hpp"
#include "clonal/fields.hpp"
#include "clonal/kernel.hpp"
#include "clonal/scenario.hpp"

namespace clonal {

enum class EquilibriumStatus {
    positive,         // unique positive steady state
    extinction_only,  // no positive state, only P = 0
    steady_family,    // F = 0 and r(O_0) = 1: any P works
    multiple,         // non-monotone F with several crossings
    none              // no equilibrium (unbounded growth or no root)
};

const char* to_string(EquilibriumStatus s);

struct SteadyProfile {
    DensityField density;
    double c = 0.0;
    /// Perron vector of O_lambda, max-norm 1.
    std::vector<double> x;
};

struct SteadyStateReport {
    EquilibriumStatus status = EquilibriumStatus::none;
    bool lambda_found = false;
    double lambda_star = 0.0;
    double P_star = 0.0;
    /// Every crossing found; a single entry unless status is multiple.
    std::vector<double> equilibria;
    std::optional<SteadyProfile> profile;
    double stability_margin = 0.0;
    bool extinction_stable = false;
    bool instability_flag = false;
    bool kernel_irreducible = false;
    std::string message;
};

/// Locates the steady state through F(P*) = lambda*. A missing crowding
/// law is treated as F = 0.
SteadyStateReport find_equilibrium(const Scenario& scenario);

/// p*(a, l) = c x(l) exp(-int_0^a (beta + mu)) exp(-a lambda_star), with
/// x the Perron vector of O_{lambda_star} and c fixing the total to P_star.
/// NumericalError if the eigenvector does not converge.
SteadyProfile build_profile(const CoefficientField& coefficients, const DivisionKernel& kernel,
                            double lambda_star, double P_star);

/// Per-node margin mu + beta + F(P*) - |F'(P*)| P* - 2 beta int r(lhat, l) dlhat,
/// the kernel integrated over its first argument. No law means F = 0.
std::vector<double> stability_margins(const CoefficientField& coefficients, const DivisionKernel& kernel,
                                      const CrowdingLaw* crowding, double P_star);

/// Minimum of stability_margins(); positive means the sufficient condition holds.
double stability_condition(const CoefficientField& coefficients, const DivisionKernel& kernel,
                           const CrowdingLaw* crowding, double P_star);

/// F'(P*) < 0 with an irreducible kernel.
bool instability_check(const CrowdingLaw& crowding, double P_star, bool irreducible_flag);

} // namespace clonal
