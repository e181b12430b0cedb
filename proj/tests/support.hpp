#pragma once

#include "tailbound/distributions.hpp"

#include <random>
#include <utility>
#include <vector>

namespace testsupport {

/// A sampling window inside the support where the density is not negligible.
inline std::pair<double, double> body_range(const tailbound::DistributionModel& model) {
    const auto& s = model.support();
    if (!s.lower_finite()) {
        const double mu = *model.mean();
        return {mu - 5.0, mu + 8.0};
    }
    return {s.lower + 0.05, s.lower + 40.0};
}

inline std::vector<double> random_points(double lo, double hi, int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> xs(n);
    for (auto& x : xs) x = dist(rng);
    return xs;
}

inline std::vector<tailbound::DistributionModel> catalog_models() {
    std::vector<tailbound::DistributionModel> out;
    for (const auto& e : tailbound::catalog_scenarios()) out.push_back(tailbound::make_catalog_distribution(e));
    return out;
}

inline std::vector<tailbound::DistributionModel> semibounded_models() {
    std::vector<tailbound::DistributionModel> out;
    for (auto& m : catalog_models())
        if (m.support().lower_finite()) out.push_back(m);
    return out;
}

}  // namespace testsupport
