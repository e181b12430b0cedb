#pragma once

// Test-side reference computations, written independently of the library.

#include "tailbound/bound_kind.hpp"
#include "tailbound/distributions.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

inline double rel_diff(double a, double b) {
    if (a == b) return 0.0;
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

/// Central difference with h = eps^(1/3) (1 + |x|).
inline double central_diff(const std::function<double(double)>& fn, double x) {
    const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + std::abs(x));
    return (fn(x + h) - fn(x - h)) / (2.0 * h);
}

inline double std_normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi); }

/// Q(z) through erfc.
inline double q_function(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

/// Chi-square density by log-gamma.
inline double chi2_pdf(double x, double k) {
    const double h = 0.5 * k;
    return std::exp((h - 1.0) * std::log(x) - 0.5 * x - h * std::log(2.0) - std::lgamma(h));
}

/// Noncentral chi-square density as a Poisson mixture of central densities.
inline double noncentral_chi2_pdf_mixture(double x, double k, double lambda) {
    const double half = 0.5 * lambda;
    double sum = 0.0;
    for (int j = 0; j < 400; ++j) {
        const double w = std::exp(-half + j * std::log(half) - std::lgamma(j + 1.0));
        sum += w * chi2_pdf(x, k + 2.0 * j);
        if (j > half && w < 1e-18) break;
    }
    return sum;
}

/// Upper regularized incomplete gamma for integer s by the finite Poisson sum.
inline double upper_gamma_integer(int s, double z) {
    double term = std::exp(-z);
    double sum = term;
    for (int i = 1; i < s; ++i) {
        term *= z / i;
        sum += term;
    }
    return sum;
}

/// Literal left sides of each condition in condition_ids order, transcribed
/// straight from the inequalities with y the shifted coordinate.
inline std::vector<double> literal_conditions(tailbound::BoundTag tag, double a, double b, double y, double f,
                                              double f1, double f2) {
    using tailbound::BoundTag;
    using std::pow;
    switch (tag) {
        case BoundTag::upper_thm1:
        case BoundTag::upper_thm2:
            return {f + pow(y, a) * f1,
                    (y - a * pow(y, a)) * f * f - pow(y, 2 * a + 1) * f1 * f1 +
                        pow(y, a + 1) * f * (f1 + pow(y, a) * f2)};
        case BoundTag::upper_cor1:
            return {f + y * f1, f1 + y * f2 - y * f1 * f1 / f};
        case BoundTag::upper_cor2:
            return {f1, f * f2 / (f1 * f1) - 1.0};
        case BoundTag::lower_thm3:
        case BoundTag::lower_thm4:
        case BoundTag::lower_cor3: {
            if (tag == BoundTag::lower_cor3) a = 1.0;
            const double yb = pow(y, b);
            const double master =
                (y * (1 + yb) * (1 + yb) - pow(y, a + b) * (a + b + a * yb)) * f * f -
                pow(y, 2 * a + 1) * (pow(y, 2 * b) - 1) * f1 * f1 +
                pow(y, a) * f * (y * (1 + yb) * (2 + yb) * f1 + pow(y, a + b) * (-b * f1 + y * (1 + yb) * f2));
            return {f + pow(y, a) * f1, master};
        }
        case BoundTag::lower_cor4:
            return {f1, 1 - pow(y, 2 * b) + f / (f1 * f1) * pow(y, b - 1) * (-b * f1 + (1 + pow(y, b)) * y * f2)};
        case BoundTag::lower_thm5:
            return {y, f1, 1 - pow(y, 2 * b) + f / (f1 * f1) * pow(y, b - 1) * (-b * f1 + (1 + pow(y, b)) * y * f2)};
    }
    return {};
}

}  // namespace oracle
