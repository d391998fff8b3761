#include "clonal/crowding.hpp"

#include <cmath>
#include <vector>

#include "clonal/error.hpp"

namespace clonal {

namespace {

std::vector<double> sample_points() {
    std::vector<double> p{0.0};
    for (int e = -6; e <= 12; ++e)
        for (double m : {1.0, 2.0, 5.0}) p.push_back(m * std::pow(10.0, e));
    return p;
}

} // namespace

CrowdingLaw CrowdingLaw::linear(double gamma) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw ConfigError("linear crowding coefficient gamma must be finite and >= 0");
    CrowdingLaw law;
    law.f_ = [gamma](double P) { return gamma * P; };
    law.df_ = [gamma](double) { return gamma; };
    law.tag_ = Monotonicity::increasing;
    law.gamma_ = gamma;
    return law;
}

CrowdingLaw CrowdingLaw::custom(std::function<double(double)> f, std::function<double(double)> df,
                                Monotonicity tag) {
    if (!f || !df) throw ConfigError("crowding law needs both F and F'");
    const auto pts = sample_points();
    double prev = 0.0;
    for (std::size_t n = 0; n < pts.size(); ++n) {
        const double v = f(pts[n]);
        if (!(v >= 0.0)) throw ConfigError("crowding law must satisfy F(P) >= 0 for P >= 0");
        if (n > 0) {
            if (tag == Monotonicity::increasing && v < prev)
                throw ConfigError("crowding law tagged increasing decreases between sample points");
            if (tag == Monotonicity::decreasing && v > prev)
                throw ConfigError("crowding law tagged decreasing increases between sample points");
        }
        prev = v;
    }
    CrowdingLaw law;
    law.f_ = std::move(f);
    law.df_ = std::move(df);
    law.tag_ = tag;
    return law;
}

} // namespace clonal
