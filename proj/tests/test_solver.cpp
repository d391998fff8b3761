#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "clonal/error.hpp"
#include "clonal/examples.hpp"
#include "clonal/parallel.hpp"
#include "clonal/solver.hpp"
#include "clonal/spectral.hpp"
#include "test_scenarios.hpp"

using namespace clonal;
using clonal::testing::make_scenario;

namespace {

const Grid kDefault{241, 101, 6.0, 1.0};

DensityField smooth_density(const Grid& g) {
    DensityField p(g);
    for (std::size_t k = 0; k < g.n_age; ++k)
        for (std::size_t i = 0; i < g.n_len; ++i) {
            const double a = g.age(k) / g.a_max, l = g.length(i) / g.l_max;
            p(k, i) = 100.0 * a * a * (1.0 - a) * (1.0 + l * l);
        }
    return p;
}

Scenario smooth_scenario(std::size_t n_age, std::size_t n_len) {
    const Grid g{n_age, n_len, 2.0, 1.0};
    Scenario s;
    s.grid = g;
    std::vector<double> beta(g.size()), mu(g.size());
    for (std::size_t k = 0; k < g.n_age; ++k)
        for (std::size_t i = 0; i < g.n_len; ++i) {
            const double a = g.age(k), l = g.length(i);
            beta[g.index(k, i)] = 1.5 * a * (2.0 - a) * (0.5 + l);
            mu[g.index(k, i)] = 0.2 + 0.1 * std::sin(3.0 * l);
        }
    s.coefficients = CoefficientField(g, beta, mu);
    s.kernel = build_kernel(g, [](double l, double lh) {
        const double z = l - 0.6 * lh - 0.2;
        return 1.2 * std::exp(-z * z / 0.05) * (1.0 + std::cos(2.0 * l));
    });
    s.initial = smooth_density(g);
    s.horizon = 3.0;
    s.cadence = 3.0;
    return s;
}

} // namespace

TEST(RenewalBoundary, ZeroBetaGivesZero) {
    Scenario s = make_scenario(Grid{11, 6, 1.0, 1.0}, 0.0, 0.3, [](double, double) { return 1.0; }, 1.0);
    for (double b : renewal_boundary(s.initial, s.coefficients, s.kernel)) EXPECT_EQ(b, 0.0);
}

TEST(RenewalBoundary, NarrowBumpUnderConstantKernel) {
    const Grid g{41, 11, 2.0, 1.0};
    const double b = 3.0, r0 = 0.7;
    Scenario s = make_scenario(g, b, 0.0, [r0](double, double) { return r0; }, 1.0);
    DensityField p(g);
    for (std::size_t k : {19u, 20u, 21u})
        for (std::size_t i = 0; i < g.n_len; ++i) p(k, i) = k == 20 ? 2.0 : 1.0;
    const double mass = p.total();
    for (double v : renewal_boundary(p, s.coefficients, s.kernel)) EXPECT_NEAR(v, 2.0 * r0 * b * mass, 1e-12);
}

TEST(RenewalBoundary, ExampleTwoInitialHasNoDivisions) {
    const auto s = example_scenario(2, kDefault);
    for (double v : renewal_boundary(s.initial, s.coefficients, s.kernel)) EXPECT_EQ(v, 0.0);
}

TEST(Step, PureShiftWithoutCoefficients) {
    const Grid g{21, 5, 1.0, 1.0};
    Scenario s = make_scenario(g, 0.0, 0.0, [](double, double) { return 1.0; }, 1.0);
    s.initial = smooth_density(g);
    const auto q = step(s.initial, s);
    for (std::size_t i = 0; i < g.n_len; ++i) EXPECT_EQ(q(0, i), 0.0);
    for (std::size_t k = 1; k < g.n_age; ++k)
        for (std::size_t i = 0; i < g.n_len; ++i) EXPECT_EQ(q(k, i), s.initial(k - 1, i));
    EXPECT_LE(q.total(), s.initial.total());
}

TEST(Step, ConstantMortalityFactor) {
    const Grid g{21, 5, 1.0, 1.0};
    const double m = 0.8;
    Scenario s = make_scenario(g, 0.0, m, [](double, double) { return 1.0; }, 1.0);
    s.initial = smooth_density(g);
    auto shifted = s.initial;
    Scenario bare = s;
    bare.coefficients = CoefficientField::constant(g, 0.0, 0.0);
    shifted = step(s.initial, bare);
    const auto q = step(s.initial, s);
    EXPECT_NEAR(q.total(), shifted.total() * std::exp(-m * g.dt()), 1e-14 * q.total());
}

TEST(Step, RejectsNegativeDensity) {
    const auto s = example_scenario(1, Grid{25, 11, 6.0, 1.0});
    auto p = s.initial;
    p(3, 4) = -1e-9;
    EXPECT_THROW(step(p, s), ContractViolation);
}

TEST(Step, OutputsStayNonnegative) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const Grid g{31, 17, 2.0, 1.0};
        std::vector<double> beta(g.size()), mu(g.size()), r(g.n_len * g.n_len);
        for (auto& x : beta) x = 5.0 * u(rng);
        for (auto& x : mu) x = u(rng);
        for (auto& x : r) x = u(rng) < 0.5 ? 0.0 : 3.0 * u(rng);
        Scenario s;
        s.grid = g;
        s.coefficients = CoefficientField(g, beta, mu);
        s.kernel = DivisionKernel(g.n_len, g.l_max, r);
        s.initial = DensityField(g);
        for (auto& x : s.initial.values()) x = u(rng);
        s.horizon = 4.0;
        s.cadence = g.dt();
        if (trial % 2) s.crowding = CrowdingLaw::linear(0.3);
        const auto tr = simulate(s);
        for (const auto& snap : tr.snapshots)
            for (double v : snap.density.values()) ASSERT_GE(v, 0.0);
    }
}

TEST(Step, SelfRenewalAtBirthIsSolvedImplicitly) {
    // beta > 0 at a = 0: the newborn row includes its own divisions.
    const Grid g{41, 9, 2.0, 1.0};
    Scenario s = make_scenario(g, 1.0, 0.2, [](double, double) { return 1.0; }, 1.0);
    const auto q = step(s.initial, s);
    const auto b = renewal_boundary(q, s.coefficients, s.kernel);
    for (std::size_t i = 0; i < g.n_len; ++i) EXPECT_NEAR(q(0, i), b[i], 1e-12 * b[i]);
}

TEST(Simulate, ExampleOneDecaysAfterDivisionWave) {
    const auto s = example_scenario(1, kDefault);
    const auto tr = simulate(s);
    for (std::size_t n = 1; n < tr.times.size(); ++n)
        if (tr.times[n] > 3.0) EXPECT_LT(tr.totals[n], tr.totals[n - 1]);
    EXPECT_LT(tr.totals.back(), 1e-6 * tr.totals.front());
}

TEST(Simulate, ExampleTwoGrowsAtCharacteristicRate) {
    const auto s = example_scenario(2, kDefault);
    const auto tr = simulate(s);
    const auto root = growth_rate(s.coefficients, s.kernel);
    const double slope = clonal::testing::log_slope(tr.times, tr.totals, 10.0, 20.0);
    EXPECT_NEAR(slope, root.lambda, 0.02 * root.lambda);
}

TEST(Simulate, ExampleThreeLevelsOff) {
    const auto s = example_scenario(3, kDefault);
    const auto tr = simulate(s);
    const std::size_t n = tr.totals.size();
    const std::size_t back = static_cast<std::size_t>(5.0 / kDefault.dt());
    EXPECT_LT(std::abs(tr.totals[n - 1] / tr.totals[n - 1 - back] - 1.0), 0.01);
}

TEST(Simulate, TotalsMatchSnapshots) {
    const auto s = example_scenario(2, Grid{121, 51, 6.0, 1.0});
    const auto tr = simulate(s);
    ASSERT_EQ(tr.snapshots.size(), 11u);
    for (const auto& snap : tr.snapshots) {
        const std::size_t n = static_cast<std::size_t>(std::llround(snap.time / s.grid.dt()));
        EXPECT_NEAR(snap.density.total(), tr.totals[n], 1e-12 * tr.totals[n]);
        EXPECT_NEAR(tr.times[n], snap.time, 1e-12);
    }
    EXPECT_EQ(tr.times.size(), 401u);
    EXPECT_EQ(tr.class_totals.size(), 4u);
}

TEST(Simulate, OverflowAbortsWithDiagnostic) {
    const Grid g{11, 5, 1.0, 1.0};
    Scenario s = make_scenario(g, 1.0, 0.0, [](double, double) { return 1e300; }, 5.0);
    try {
        simulate(s);
        FAIL() << "expected NumericalError";
    } catch (const NumericalError& e) {
        EXPECT_NE(std::string(e.what()).find("max density"), std::string::npos);
    }
}

TEST(Simulate, LinearityIsExact) {
    auto s = example_scenario(2, Grid{121, 51, 6.0, 1.0});
    const auto base = simulate(s);
    for (double& v : s.initial.values()) v *= 4.0;
    const auto scaled = simulate(s);
    for (std::size_t n = 0; n < base.totals.size(); ++n) ASSERT_EQ(scaled.totals[n], 4.0 * base.totals[n]);
}

TEST(Simulate, RerunsAreBitIdentical) {
    const auto s = example_scenario(3, Grid{121, 51, 6.0, 1.0});
    const auto a = simulate(s);
    const auto b = simulate(s);
    EXPECT_EQ(a.totals, b.totals);
    EXPECT_EQ(a.class_totals, b.class_totals);
    ASSERT_EQ(a.snapshots.size(), b.snapshots.size());
    for (std::size_t n = 0; n < a.snapshots.size(); ++n)
        EXPECT_EQ(a.snapshots[n].density.values(), b.snapshots[n].density.values());
}

TEST(Simulate, MassBalanceWithoutDivision) {
    // beta = 0: P(t + dt) - P(t) = -(outflow at a_max) - (mortality loss) + O(dt^2).
    auto residual = [](std::size_t n_age) {
        const Grid g{n_age, 21, 2.0, 1.0};
        Scenario s;
        s.grid = g;
        std::vector<double> mu(g.size());
        for (std::size_t k = 0; k < g.n_age; ++k)
            for (std::size_t i = 0; i < g.n_len; ++i) mu[g.index(k, i)] = 0.5 + 0.3 * g.length(i);
        s.coefficients = CoefficientField(g, std::vector<double>(g.size(), 0.0), mu);
        s.kernel = build_kernel(g, [](double, double) { return 1.0; });
        s.initial = smooth_density(g);
        s.horizon = g.dt();
        const auto& p = s.initial;
        const auto q = step(p, s);
        const auto wl = g.length_weights();
        double outflow = 0.0;
        for (std::size_t i = 0; i < g.n_len; ++i) outflow += wl[i] * 0.5 * (p(g.n_age - 1, i) + q(g.n_age - 1, i));
        DensityField mp(g), mq(g);
        for (std::size_t n = 0; n < g.size(); ++n) {
            mp.values()[n] = mu[n] * p.values()[n];
            mq.values()[n] = mu[n] * q.values()[n];
        }
        const double loss = 0.5 * (mp.total() + mq.total());
        return std::abs(q.total() - p.total() + g.dt() * (outflow + loss));
    };
    const double r1 = residual(81), r2 = residual(161), r3 = residual(321);
    EXPECT_GT(std::log2(r1 / r2), 1.8);
    EXPECT_GT(std::log2(r2 / r3), 1.8);
}

TEST(Simulate, ConvergenceOrders) {
    // Time: refine age and time together at a fine length grid.
    const double ref_t = simulate(smooth_scenario(1281, 41)).totals.back();
    std::vector<double> et;
    for (std::size_t n : {41u, 81u, 161u}) et.push_back(std::abs(simulate(smooth_scenario(n, 41)).totals.back() - ref_t));
    for (std::size_t n = 1; n < et.size(); ++n) EXPECT_GE(std::log2(et[n - 1] / et[n]), 1.0);

    // Length quadrature: refine l at a fixed age grid.
    const double ref_l = simulate(smooth_scenario(81, 641)).totals.back();
    std::vector<double> el;
    for (std::size_t n : {11u, 21u, 41u}) el.push_back(std::abs(simulate(smooth_scenario(81, n)).totals.back() - ref_l));
    for (std::size_t n = 1; n < el.size(); ++n) EXPECT_GE(std::log2(el[n - 1] / el[n]), 2.0 - 0.05);
}

TEST(Nilpotency, ExampleInitialVanishesExactly) {
    EXPECT_EQ(nilpotency_check(kDefault, build_initial_density(kDefault)), 0.0);
    EXPECT_EQ(nilpotency_check(kDefault, DensityField(kDefault)), 0.0);
}

TEST(Nilpotency, NewbornBumpTravelsThenLeaves) {
    const Grid g{21, 5, 1.0, 1.0};
    Scenario s = make_scenario(g, 0.0, 0.0, [](double, double) { return 0.0; }, 1.0 + g.dt());
    s.initial = DensityField(g);
    for (std::size_t i = 0; i < g.n_len; ++i) s.initial(0, i) = 1.0;
    const auto tr = simulate(s);
    const auto wa = g.age_weights();
    for (std::size_t n = 0; n < g.n_age; ++n) EXPECT_NEAR(tr.totals[n], wa[n] * 1.0, 1e-15);
    EXPECT_EQ(tr.totals.back(), 0.0);
    EXPECT_EQ(nilpotency_check(g, s.initial), 0.0);
}

TEST(CrowdingOracle, ZeroGammaIsIdentity) {
    SimulationTrace tr;
    tr.times = {0.0, 0.5, 1.0};
    tr.totals = {3.0, 4.0, 5.0};
    EXPECT_EQ(explicit_crowding_oracle(tr, CrowdingLaw::linear(0.0)), tr.totals);
}

TEST(CrowdingOracle, ConstantLinearTotal) {
    SimulationTrace tr;
    const double c = 200.0, gamma = 1e-3;
    for (int n = 0; n <= 100; ++n) {
        tr.times.push_back(0.1 * n);
        tr.totals.push_back(c);
    }
    const auto out = explicit_crowding_oracle(tr, CrowdingLaw::linear(gamma));
    for (std::size_t n = 0; n < out.size(); ++n)
        EXPECT_NEAR(out[n], c / (1.0 + gamma * c * tr.times[n]), 1e-12 * c);
}

TEST(CrowdingOracle, MatchesNonlinearExampleThree) {
    const auto s = example_scenario(3, kDefault);
    auto lin = s;
    lin.crowding.reset();
    const auto oracle = explicit_crowding_oracle(simulate(lin), *s.crowding);
    const auto tr = simulate(s);
    for (std::size_t n = 0; n < oracle.size(); ++n) EXPECT_NEAR(tr.totals[n], oracle[n], 5e-3 * oracle[n]);
}

TEST(ClassPopulation, BandsAndTotals) {
    const auto p = build_initial_density(kDefault);
    EXPECT_NEAR(class_population(p, {0.0, 1.0}), p.total(), 1e-12 * p.total());
    const double a = class_population(p, {0.0, 0.437}), b = class_population(p, {0.437, 1.0});
    EXPECT_NEAR(a + b, p.total(), 1e-12 * p.total());
    // int_0^1 1000 a (1 - a) da * int_0.8^1 l dl = 166.667 * 0.18 = 30
    EXPECT_NEAR(class_population(p, {0.8, 1.0}), 30.0, 5e-3 * 30.0);
    EXPECT_THROW(class_population(p, {0.5, 0.5}), ConfigError);
}

TEST(Parallel, ResultsIndependentOfWorkerCount) {
    const auto s = example_scenario(2, Grid{121, 51, 6.0, 1.0});
    std::vector<double> lambdas;
    for (int n = 0; n < 9; ++n) lambdas.push_back(-1.0 + 0.25 * n);
    ::unsetenv("CLONAL_EVOLVE_THREADS");
    const auto serial = radius_curve(s.coefficients, s.kernel, lambdas);
    ::setenv("CLONAL_EVOLVE_THREADS", "3", 1);
    EXPECT_EQ(worker_count(), 3u);
    const auto threaded = radius_curve(s.coefficients, s.kernel, lambdas);
    ::unsetenv("CLONAL_EVOLVE_THREADS");
    EXPECT_EQ(serial, threaded);
}
