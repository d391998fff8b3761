#include <gtest/gtest.h>

#include <cmath>

#include "clonal/error.hpp"
#include "clonal/examples.hpp"
#include "clonal/solver.hpp"
#include "clonal/spectral.hpp"
#include "clonal/steady.hpp"
#include "test_scenarios.hpp"

using namespace clonal;
using clonal::testing::make_scenario;

namespace {

const Grid kDefault{241, 101, 6.0, 1.0};

double relative_l1(const DensityField& a, const DensityField& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t n = 0; n < a.values().size(); ++n) {
        num += std::abs(a.values()[n] - b.values()[n]);
        den += std::abs(b.values()[n]);
    }
    return num / den;
}

} // namespace

TEST(Equilibrium, ExampleThreeLinearLaw) {
    const auto s3 = example_scenario(3, kDefault);
    const auto s2 = example_scenario(2, kDefault);
    const auto rep = find_equilibrium(s3);
    const auto root = growth_rate(s2.coefficients, s2.kernel);
    ASSERT_EQ(rep.status, EquilibriumStatus::positive);
    EXPECT_DOUBLE_EQ(rep.lambda_star, root.lambda);
    EXPECT_DOUBLE_EQ(rep.P_star, root.lambda / 1e-5);
    ASSERT_TRUE(rep.profile);
    EXPECT_NEAR(rep.profile->density.total(), rep.P_star, 1e-10 * rep.P_star);
    EXPECT_FALSE(rep.instability_flag);
    EXPECT_TRUE(rep.kernel_irreducible);
    EXPECT_EQ(rep.equilibria.size(), 1u);
}

TEST(Equilibrium, LongTimeLimitMatches) {
    const auto s3 = example_scenario(3, kDefault);
    const auto rep = find_equilibrium(s3);
    const auto tr = simulate(s3);
    EXPECT_NEAR(tr.totals.back(), rep.P_star, 0.01 * rep.P_star);
}

TEST(Equilibrium, SteadyFamilyWithoutCrowding) {
    const double beta = 1.0, mu = 0.5;
    const double r0 = (beta + mu) / (2.0 * beta * -std::expm1(-(beta + mu)));
    Scenario s = make_scenario(Grid{1001, 21, 1.0, 1.0}, beta, mu, [r0](double, double) { return r0; }, 1.0);
    const auto rep = find_equilibrium(s);
    EXPECT_EQ(rep.status, EquilibriumStatus::steady_family);
    EXPECT_NEAR(rep.lambda_star, 0.0, 1e-6);
}

TEST(Equilibrium, ExtinctionOnlyWhenRootNegative) {
    auto s = example_scenario(1, kDefault);
    s.crowding = CrowdingLaw::linear(1e-3);
    const auto rep = find_equilibrium(s);
    EXPECT_LT(rep.lambda_star, 0.0);
    EXPECT_EQ(rep.status, EquilibriumStatus::extinction_only);
    EXPECT_FALSE(rep.profile);
    EXPECT_TRUE(rep.equilibria.empty());

    s.crowding.reset();
    EXPECT_EQ(find_equilibrium(s).status, EquilibriumStatus::extinction_only);
}

TEST(Equilibrium, UnboundedGrowthWithoutCrowding) {
    const auto s = example_scenario(2, Grid{121, 51, 6.0, 1.0});
    EXPECT_EQ(find_equilibrium(s).status, EquilibriumStatus::none);
}

TEST(Equilibrium, MonotoneCustomLawUsesBisection) {
    auto s = example_scenario(2, Grid{121, 51, 6.0, 1.0});
    s.crowding = CrowdingLaw::custom([](double P) { return 1e-3 * std::sqrt(P); },
                                     [](double P) { return P > 0 ? 0.5e-3 / std::sqrt(P) : 1e300; },
                                     Monotonicity::increasing);
    const auto rep = find_equilibrium(s);
    ASSERT_EQ(rep.status, EquilibriumStatus::positive);
    const double expected = std::pow(rep.lambda_star / 1e-3, 2.0);
    EXPECT_NEAR(rep.P_star, expected, 1e-10 * expected);
}

TEST(Equilibrium, DecreasingLawFlagsInstability) {
    auto s = example_scenario(2, Grid{121, 51, 6.0, 1.0});
    s.crowding = CrowdingLaw::custom([](double P) { return 1.0 / (1.0 + P); },
                                     [](double P) { return -1.0 / ((1.0 + P) * (1.0 + P)); },
                                     Monotonicity::decreasing);
    const auto rep = find_equilibrium(s);
    ASSERT_EQ(rep.status, EquilibriumStatus::positive);
    EXPECT_NEAR(rep.P_star, 1.0 / rep.lambda_star - 1.0, 1e-9 * rep.P_star);
    EXPECT_TRUE(rep.instability_flag);
}

TEST(Equilibrium, NonMonotoneLawReportsEveryCrossing) {
    auto s = example_scenario(2, Grid{121, 51, 6.0, 1.0});
    const double A = 0.4, P0 = 1000.0;
    auto f = [A, P0](double P) { return A * (P / P0) * std::exp(1.0 - P / P0); };
    auto df = [A, P0](double P) { return A / P0 * (1.0 - P / P0) * std::exp(1.0 - P / P0); };
    s.crowding = CrowdingLaw::custom(f, df, Monotonicity::none);
    const auto rep = find_equilibrium(s);
    ASSERT_EQ(rep.status, EquilibriumStatus::multiple);
    ASSERT_EQ(rep.equilibria.size(), 2u);
    EXPECT_LT(rep.equilibria[0], P0);
    EXPECT_GT(rep.equilibria[1], P0);
    for (double P : rep.equilibria) EXPECT_NEAR(f(P), rep.lambda_star, 1e-9);
    // The falling branch has F' < 0 and the first crossing is reported as P*.
    EXPECT_FALSE(rep.instability_flag);
    EXPECT_TRUE(instability_check(*s.crowding, rep.equilibria[1], true));
}

TEST(Profile, ConstantWithoutCoefficients) {
    const Grid g{21, 11, 2.0, 1.0};
    const auto c = CoefficientField::constant(g, 0.0, 0.0);
    const auto k = build_kernel(g, [](double, double) { return 1.0; });
    const auto prof = build_profile(c, k, 0.0, 5.0);
    EXPECT_NEAR(prof.density.total(), 5.0, 1e-12);
    for (std::size_t kk = 0; kk < g.n_age; ++kk)
        for (std::size_t i = 0; i < g.n_len; ++i)
            EXPECT_NEAR(prof.density(kk, i), prof.c * prof.x[i], 1e-15);
}

TEST(Profile, OneStepFixedPoint) {
    const auto s = example_scenario(3, kDefault);
    const auto rep = find_equilibrium(s);
    ASSERT_TRUE(rep.profile);
    const auto& p = rep.profile->density;
    const auto q = step(p, s);
    EXPECT_LT(std::abs(q.total() / p.total() - 1.0), 1e-6);
    EXPECT_LT(relative_l1(q, p), 1e-5);
}

TEST(Profile, ScalesLinearlyWithPopulation) {
    const auto s = example_scenario(2, Grid{121, 51, 6.0, 1.0});
    const double lam = growth_rate(s.coefficients, s.kernel).lambda;
    const auto a = build_profile(s.coefficients, s.kernel, lam, 100.0);
    const auto b = build_profile(s.coefficients, s.kernel, lam, 200.0);
    EXPECT_NEAR(b.c, 2.0 * a.c, 1e-14 * b.c);
    for (std::size_t n = 0; n < a.density.values().size(); ++n)
        EXPECT_NEAR(b.density.values()[n], 2.0 * a.density.values()[n], 1e-13 * b.density.max_value());
}

TEST(Profile, RejectsNegativePopulation) {
    const auto s = example_scenario(2, Grid{31, 11, 6.0, 1.0});
    EXPECT_THROW(build_profile(s.coefficients, s.kernel, 0.1, -1.0), ContractViolation);
}

TEST(Profile, FlatLawAtEquilibriumDriftsSlowly) {
    // F'(P*) = 0: a perturbed steady state neither grows nor decays exponentially.
    auto s = example_scenario(2, kDefault);
    const double lam = growth_rate(s.coefficients, s.kernel).lambda;
    const double Ps = lam / 1e-5;
    s.crowding = CrowdingLaw::custom(
        [lam, Ps](double P) { return lam * (1.0 + std::pow((P - Ps) / Ps, 3.0)); },
        [lam, Ps](double P) { return 3.0 * lam / Ps * std::pow((P - Ps) / Ps, 2.0); }, Monotonicity::increasing);
    const auto rep = find_equilibrium(s);
    ASSERT_EQ(rep.status, EquilibriumStatus::positive);
    EXPECT_NEAR(rep.P_star, Ps, 1e-4 * Ps);
    s.initial = rep.profile->density;
    for (double& v : s.initial.values()) v *= 1.01;
    s.horizon = 20.0;
    const auto tr = simulate(s);
    for (double P : tr.totals) EXPECT_LT(std::abs(P / tr.totals.front() - 1.0), 0.02);
}

TEST(Stability, NoDivisionMarginIsMortality) {
    const Grid g{21, 11, 2.0, 1.0};
    std::vector<double> mu(g.size());
    for (std::size_t n = 0; n < mu.size(); ++n) mu[n] = 0.3 + 0.01 * static_cast<double>(n % 7);
    const CoefficientField c(g, std::vector<double>(g.size(), 0.0), mu);
    const auto k = build_kernel(g, [](double, double) { return 2.0; });
    const auto law = CrowdingLaw::custom([](double) { return 0.25; }, [](double) { return 0.0; },
                                         Monotonicity::increasing);
    EXPECT_NEAR(stability_condition(c, k, &law, 10.0), 0.3 + 0.25, 1e-15);
}

TEST(Stability, ZeroPopulationIsExtinctionCondition) {
    const auto s = example_scenario(1, kDefault);
    const auto law = CrowdingLaw::linear(1e-3);
    const auto with_law = stability_margins(s.coefficients, s.kernel, &law, 0.0);
    const auto bare = stability_margins(s.coefficients, s.kernel, nullptr, 0.0);
    EXPECT_EQ(with_law, bare);
    const Grid& g = s.grid;
    ASSERT_EQ(bare.size(), g.size());
    for (std::size_t k : {0u, 60u, 200u})
        for (std::size_t j : {0u, 50u, 100u}) {
            const double b = s.coefficients.beta(k, j);
            const double expected = s.coefficients.mu(k, j) + b - 2.0 * b * s.kernel.column_mass(j);
            EXPECT_DOUBLE_EQ(bare[g.index(k, j)], expected);
        }
    EXPECT_EQ(find_equilibrium(s).extinction_stable, stability_condition(s.coefficients, s.kernel, nullptr, 0.0) >= 0);
}

TEST(Stability, MarginIgnoresDensityScale) {
    auto s = example_scenario(3, Grid{121, 51, 6.0, 1.0});
    const auto a = find_equilibrium(s);
    for (double& v : s.initial.values()) v *= 7.0;
    const auto b = find_equilibrium(s);
    EXPECT_EQ(a.stability_margin, b.stability_margin);
    EXPECT_EQ(a.P_star, b.P_star);
}

TEST(Stability, InstabilityRequiresIrreducibility) {
    const auto rising = CrowdingLaw::linear(1e-5);
    const auto falling = CrowdingLaw::custom([](double P) { return 1.0 / (1.0 + P); },
                                             [](double P) { return -1.0 / ((1.0 + P) * (1.0 + P)); },
                                             Monotonicity::decreasing);
    EXPECT_FALSE(instability_check(rising, 2e4, true));
    EXPECT_TRUE(instability_check(falling, 3.0, true));
    EXPECT_FALSE(instability_check(falling, 3.0, false));
}
