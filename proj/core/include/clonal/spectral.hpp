#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "clonal/fields.hpp"
#include "clonal/kernel.hpp"

namespace clonal {

/// Nystrom matrix of the renewal operator O_lambda:
/// m(i, j) = 2 r(l_i, lhat_j) K(lhat_j, lambda) w_j.
struct DiscreteRenewalOperator {
    double lambda = 0.0;
    std::size_t n = 0;
    std::vector<double> m;  // row-major n x n

    double operator()(std::size_t i, std::size_t j) const { return m[i * n + j]; }
    std::vector<double> apply(std::span<const double> x) const;
};

struct PowerIterationOptions {
    double tolerance = 1e-10;
    std::size_t max_iterations = 100000;
    double shift_factor = 1e-8;
};

struct PerronPair {
    double radius = 0.0;
    std::vector<double> eigenvector;  // nonnegative, max-norm 1
    std::size_t iterations = 0;
    bool converged = false;
};

/// Lower/upper estimates: the column pair integrates r over the daughter
/// length, the row pair integrates r K over the mother length.
struct RadiusBounds {
    double column_lower = 0.0;
    double column_upper = 0.0;
    double row_lower = 0.0;
    double row_upper = 0.0;
};

/// The two estimate curves on the length nodes:
/// column[j] = 2 K(lhat_j) int r(l, lhat_j) dl, row[i] = 2 int r(l_i, lhat) K(lhat) dlhat.
struct BoundCurves {
    std::vector<double> column;
    std::vector<double> row;
};

struct SpectralReport {
    double radius = 0.0;
    std::vector<double> eigenvector;
    std::size_t iterations = 0;
    bool converged = false;
    RadiusBounds bounds;
    bool irreducible = false;
};

struct CharacteristicRoot {
    bool found = false;
    double lambda = 0.0;
    /// r(O_lambda) at the returned lambda.
    double radius = 0.0;
    std::size_t evaluations = 0;
    /// Every power iteration along the way converged.
    bool converged = true;
    std::string message;
};

enum class Regime { decay, growth, steady_family };

struct Classification {
    Regime regime = Regime::decay;
    double radius = 0.0;
    bool irreducible = false;
};

const char* to_string(Regime r);

/// K(lhat_j, lambda) = int beta exp(-int_0^a (beta + mu + lambda)) da per length node.
std::vector<double> survival_kernel(const CoefficientField& coefficients, double lambda);

DiscreteRenewalOperator assemble(const CoefficientField& coefficients, const DivisionKernel& kernel,
                                 double lambda);
DiscreteRenewalOperator assemble(const DivisionKernel& kernel, std::span<const double> survival,
                                 double lambda);

/// Perron root by power iteration on m + eps I from the all-ones vector.
PerronPair spectral_radius(std::span<const double> m, std::size_t n, const PowerIterationOptions& opt = {});
PerronPair spectral_radius(const DiscreteRenewalOperator& op, const PowerIterationOptions& opt = {});

/// Rank-one case with constant r = r1 r2, beta, mu and a_max = l_max = 1:
/// 2 r1 r2 K with K = beta (1 - exp(-(beta + mu))) / (beta + mu).
double separable_radius(double r1, double r2, double beta, double mu);

BoundCurves bound_curves(const CoefficientField& coefficients, const DivisionKernel& kernel);
RadiusBounds radius_bounds(const CoefficientField& coefficients, const DivisionKernel& kernel);

/// Strong connectivity of the graph with an edge j -> i whenever
/// 2 r(i, j) survival[j] w_j exceeds threshold * (largest such entry).
bool irreducible(const DivisionKernel& kernel, std::span<const double> survival, double threshold = 0.0);

/// Irreducibility of the kernel alone (survival taken as 1 everywhere).
bool kernel_irreducible(const DivisionKernel& kernel, double threshold = 0.0);

/// Root of r(O_lambda) = 1 by bisection, bracket grown from [-10, 10] up to [-50, 50].
CharacteristicRoot growth_rate(const CoefficientField& coefficients, const DivisionKernel& kernel);

/// psi(a, l) = boundary(l) exp(-int_0^a (beta + mu + lambda)).
DensityField eigenfunction(const CoefficientField& coefficients, double lambda,
                           std::span<const double> boundary);

Classification classify(const CoefficientField& coefficients, const DivisionKernel& kernel,
                        double tau = 1e-6);

/// Radius, Perron vector, both estimate pairs and irreducibility at lambda = 0.
SpectralReport analyze(const CoefficientField& coefficients, const DivisionKernel& kernel);

/// r(O_lambda) at each lambda; evaluated in parallel under CLONAL_EVOLVE_THREADS.
std::vector<double> radius_curve(const CoefficientField& coefficients, const DivisionKernel& kernel,
                                 std::span<const double> lambdas);

} // namespace clonal
