#include "clonal/steady.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "clonal/error.hpp"
#include "clonal/parallel.hpp"
#include "clonal/spectral.hpp"

namespace clonal {

namespace {

// Root of F(P) = target on [lo, hi] where F - target changes sign.
double bisect_law(const CrowdingLaw& F, double target, double lo, double hi) {
    const bool rising = F(hi) >= F(lo);
    for (int it = 0; it < 400 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const bool below = F(mid) < target;
        if (below == rising) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

const char* to_string(EquilibriumStatus s) {
    switch (s) {
    case EquilibriumStatus::positive: return "positive";
    case EquilibriumStatus::extinction_only: return "extinction-only";
    case EquilibriumStatus::steady_family: return "steady-family";
    case EquilibriumStatus::multiple: return "multiple";
    case EquilibriumStatus::none: return "none";
    }
    return "unknown";
}

SteadyProfile build_profile(const CoefficientField& coefficients, const DivisionKernel& kernel,
                            double lambda_star, double P_star) {
    if (!(P_star >= 0.0)) throw ContractViolation("P_star must be nonnegative");
    const auto pair = spectral_radius(assemble(coefficients, kernel, lambda_star));
    if (!pair.converged) throw NumericalError("Perron vector of the steady-state operator did not converge");
    SteadyProfile out;
    out.x = pair.eigenvector;
    DensityField shape = eigenfunction(coefficients, lambda_star, pair.eigenvector);
    const double mass = shape.total();
    if (!(mass > 0.0)) throw NumericalError("steady profile has zero mass");
    out.c = P_star / mass;
    for (double& v : shape.values()) v *= out.c;
    out.density = std::move(shape);
    return out;
}

std::vector<double> stability_margins(const CoefficientField& coefficients, const DivisionKernel& kernel,
                                      const CrowdingLaw* crowding, double P_star) {
    const Grid& g = coefficients.grid();
    if (kernel.size() != g.n_len) throw ConfigError("kernel and coefficient grids differ");
    const double F = crowding ? (*crowding)(P_star) : 0.0;
    const double dF = crowding ? std::abs(crowding->derivative(P_star)) : 0.0;
    std::vector<double> daughters(g.n_len);
    for (std::size_t j = 0; j < g.n_len; ++j) daughters[j] = kernel.column_mass(j);
    std::vector<double> m(g.size());
    for (std::size_t k = 0; k < g.n_age; ++k)
        for (std::size_t j = 0; j < g.n_len; ++j) {
            const double b = coefficients.beta(k, j);
            m[g.index(k, j)] = coefficients.mu(k, j) + b + F - dF * P_star - 2.0 * b * daughters[j];
        }
    return m;
}

double stability_condition(const CoefficientField& coefficients, const DivisionKernel& kernel,
                           const CrowdingLaw* crowding, double P_star) {
    const auto m = stability_margins(coefficients, kernel, crowding, P_star);
    return *std::min_element(m.begin(), m.end());
}

bool instability_check(const CrowdingLaw& crowding, double P_star, bool irreducible_flag) {
    return crowding.derivative(P_star) < 0.0 && irreducible_flag;
}

SteadyStateReport find_equilibrium(const Scenario& scenario) {
    scenario.validate();
    const auto& coeffs = scenario.coefficients;
    const auto& kernel = scenario.kernel;
    const CrowdingLaw* law = scenario.crowding ? &*scenario.crowding : nullptr;

    SteadyStateReport rep;
    rep.kernel_irreducible = kernel_irreducible(kernel);
    rep.extinction_stable = stability_condition(coeffs, kernel, law, 0.0) >= 0.0;

    const auto root = growth_rate(coeffs, kernel);
    rep.lambda_found = root.found;
    rep.lambda_star = root.lambda;

    if (!law) {
        const auto cls = classify(coeffs, kernel);
        if (cls.regime == Regime::steady_family) {
            rep.status = EquilibriumStatus::steady_family;
            rep.message = "F = 0 and r(O_0) = 1: one-parameter family of steady states";
        } else if (cls.regime == Regime::decay) {
            rep.status = EquilibriumStatus::extinction_only;
            rep.message = "linear model decays";
        } else {
            rep.status = EquilibriumStatus::none;
            rep.message = "linear model grows without bound";
        }
        rep.stability_margin = stability_condition(coeffs, kernel, nullptr, 0.0);
        return rep;
    }
    if (!root.found) {
        rep.status = EquilibriumStatus::none;
        rep.message = root.message;
        return rep;
    }

    const CrowdingLaw& F = *law;
    const double lam = root.lambda;
    const double F0 = F(0.0);

    if (F.gamma()) {
        const double gamma = *F.gamma();
        if (lam > 0.0 && gamma > 0.0) rep.equilibria.push_back(lam / gamma);
    } else if (F.monotonicity() == Monotonicity::increasing) {
        if (lam > F0) {
            double hi = 1.0;
            while (F(hi) < lam && hi < 1e300) hi *= 2.0;
            if (F(hi) >= lam) rep.equilibria.push_back(bisect_law(F, lam, 0.0, hi));
        }
    } else if (F.monotonicity() == Monotonicity::decreasing) {
        if (lam < F0) {
            double hi = 1.0;
            while (F(hi) > lam && hi < 1e300) hi *= 2.0;
            if (F(hi) <= lam) rep.equilibria.push_back(bisect_law(F, lam, 0.0, hi));
        }
    } else {
        // Scan r(Q_P) - 1 on a log grid; every sign change is refined on F(P) = lambda*.
        constexpr std::size_t samples = 400;
        std::vector<double> P(samples), lambdas(samples);
        for (std::size_t n = 0; n < samples; ++n) {
            P[n] = std::pow(10.0, -6.0 + 18.0 * static_cast<double>(n) / (samples - 1));
            lambdas[n] = F(P[n]);
        }
        const auto radii = radius_curve(coeffs, kernel, lambdas);
        for (std::size_t n = 1; n < samples; ++n) {
            const double a = radii[n - 1] - 1.0, b = radii[n] - 1.0;
            if (a == 0.0) rep.equilibria.push_back(P[n - 1]);
            else if (a * b < 0.0) rep.equilibria.push_back(bisect_law(F, lam, P[n - 1], P[n]));
        }
    }

    if (rep.equilibria.empty()) {
        const bool growing = F.monotonicity() == Monotonicity::decreasing ? lam >= F0 : false;
        rep.status = growing ? EquilibriumStatus::none : EquilibriumStatus::extinction_only;
        rep.message = growing ? "crowding cannot balance growth" : "lambda* below F on the positive axis";
        rep.stability_margin = stability_condition(coeffs, kernel, law, 0.0);
        return rep;
    }
    rep.status = rep.equilibria.size() == 1 ? EquilibriumStatus::positive : EquilibriumStatus::multiple;
    rep.P_star = rep.equilibria.front();
    rep.profile = build_profile(coeffs, kernel, F(rep.P_star), rep.P_star);
    rep.stability_margin = stability_condition(coeffs, kernel, law, rep.P_star);
    rep.instability_flag = instability_check(F, rep.P_star, rep.kernel_irreducible);
    return rep;
}

} // namespace clonal
