#pragma once

#include <functional>
#include <optional>

namespace clonal {

enum class Monotonicity { increasing, decreasing, none };

/// Density-dependent extra mortality F(P) applied uniformly to every node.
class CrowdingLaw {
public:
    /// F(P) = gamma * P.
    static CrowdingLaw linear(double gamma);

    /// General law. The tag is spot-checked on a log-spaced sample of P
    /// and F(P) >= 0 is verified there; ConfigError when either fails.
    static CrowdingLaw custom(std::function<double(double)> f, std::function<double(double)> df,
                              Monotonicity tag);

    double operator()(double P) const { return f_(P); }
    double derivative(double P) const { return df_(P); }
    Monotonicity monotonicity() const { return tag_; }
    /// Present only for the linear law.
    std::optional<double> gamma() const { return gamma_; }

private:
    CrowdingLaw() = default;

    std::function<double(double)> f_;
    std::function<double(double)> df_;
    Monotonicity tag_ = Monotonicity::none;
    std::optional<double> gamma_;
};

} // namespace clonal
