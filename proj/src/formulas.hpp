#pragma once

// Pointwise bound and condition arithmetic shared by bounds.cpp, conditions.cpp
// and the optimizers. Inputs are a density jet and the shifted coordinate y.

#include "tailbound/distributions.hpp"

#include <cmath>
#include <limits>

namespace tailbound::detail {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// A condition left-hand side. When the literal expression overflows (or its
/// f^2 factor underflows) it is re-evaluated divided by y^shift * f^2, which
/// keeps the sign; `scaled` records that.
struct Lhs {
    double value = kNaN;
    bool scaled = false;
};

inline bool needs_rescale(double literal, const DensityJet& j) {
    return !std::isfinite(literal) || (j.f > 0.0 && j.f * j.f < std::numeric_limits<double>::min());
}

/// -y^a f^2 / (f + y^a f'); a = +inf gives -f^2/f'. For y > 1 the quotient is
/// taken as -f^2 / (f y^-a + f'), which never forms y^a.
inline double upper_value(const DensityJet& j, double y, double a) {
    if (std::isinf(a)) return -j.f * j.f / j.d1;
    if (y > 1.0) return -j.f * j.f / (j.f * std::pow(y, -a) + j.d1);
    const double ya = std::pow(y, a);
    return -ya * j.f * j.f / (j.f + ya * j.d1);
}

/// Denominator f + y^a f' in the orientation used by upper_value.
inline double upper_denominator(const DensityJet& j, double y, double a) {
    if (std::isinf(a)) return j.d1;
    if (y > 1.0) return j.f * std::pow(y, -a) + j.d1;
    return j.f + std::pow(y, a) * j.d1;
}

/// y^b / (1 + y^b), written so that large y^b does not overflow.
inline double lower_weight(double y, double b) { return 1.0 / (1.0 + std::pow(y, -b)); }

/// f + y^a f' < 0.
inline Lhs theorem_denominator(const DensityJet& j, double y, double a) {
    const double literal = j.f + std::pow(y, a) * j.d1;
    if (std::isfinite(literal) || !(y > 1.0)) return {literal, false};
    return {j.f * std::pow(y, -a) + j.d1, true};
}

/// (y - a y^a) f^2 - y^(2a+1) f'^2 + y^(a+1) f (f' + y^a f'') <= 0.
inline Lhs upper_second_order(const DensityJet& j, double y, double a) {
    const double f = j.f, f1 = j.d1, f2 = j.d2;
    const double ya = std::pow(y, a);
    const double literal =
        (y - a * ya) * f * f - std::pow(y, 2.0 * a + 1.0) * f1 * f1 + std::pow(y, a + 1.0) * f * (f1 + ya * f2);
    if (!needs_rescale(literal, j)) return {literal, false};
    // Divided by y^(2a+1) f^2.
    const double s = 2.0 * a + 1.0;
    auto p = [&](double e) { return std::pow(y, e - s); };
    const double g1 = f1 / f, g2 = f2 / f;
    return {(p(1.0) - a * p(a)) - g1 * g1 + p(a + 1.0) * g1 + g2, true};
}

/// Lower master condition with the theorem grouping:
/// (y(1+y^b)^2 - y^(a+b)(a+b+a y^b)) f^2 - y^(2a+1)(y^(2b)-1) f'^2
///   + y^a f [ y(1+y^b)(2+y^b) f' + y^(a+b)(-b f' + y(1+y^b) f'') ] >= 0.
inline Lhs lower_master(const DensityJet& j, double y, double a, double b) {
    const double f = j.f, f1 = j.d1, f2 = j.d2;
    const double yb = std::pow(y, b);
    const double ya = std::pow(y, a);
    const double yab = std::pow(y, a + b);
    const double literal = (y * (1.0 + yb) * (1.0 + yb) - yab * (a + b + a * yb)) * f * f -
                           std::pow(y, 2.0 * a + 1.0) * (std::pow(y, 2.0 * b) - 1.0) * f1 * f1 +
                           ya * f * (y * (1.0 + yb) * (2.0 + yb) * f1 + yab * (-b * f1 + y * (1.0 + yb) * f2));
    if (!needs_rescale(literal, j)) return {literal, false};
    // Fully expanded and divided by y^(2a+2b+1) f^2.
    const double s = 2.0 * a + 2.0 * b + 1.0;
    auto p = [&](double e) { return std::pow(y, e - s); };
    const double g1 = f1 / f, g2 = f2 / f;
    const double t1 = p(1.0) + 2.0 * p(1.0 + b) + p(1.0 + 2.0 * b) - (a + b) * p(a + b) - a * p(a + 2.0 * b);
    const double t2 = -(p(2.0 * a + 2.0 * b + 1.0) - p(2.0 * a + 1.0)) * g1 * g1;
    const double t3 = (2.0 * p(a + 1.0) + 3.0 * p(a + 1.0 + b) + p(a + 1.0 + 2.0 * b)) * g1 -
                      b * p(2.0 * a + b) * g1 + (p(2.0 * a + b + 1.0) + p(2.0 * a + 2.0 * b + 1.0)) * g2;
    return {t1 + t2 + t3, true};
}

/// 1 - y^(2b) + (f / f'^2) y^(b-1) (-b f' + (1 + y^b) y f'') >= 0, with the
/// f/f'^2 factor distributed as f/f' and f f''/f'^2 so it survives tiny f.
inline Lhs limit_master(const DensityJet& j, double y, double b) {
    const double f = j.f, f1 = j.d1, f2 = j.d2;
    const double r1 = f / f1;
    const double r2 = r1 * (f2 / f1);
    const double yb = std::pow(y, b);
    const double literal = 1.0 - std::pow(y, 2.0 * b) + std::pow(y, b - 1.0) * (-b * r1) + (yb + std::pow(y, 2.0 * b)) * r2;
    if (std::isfinite(literal) || !(y > 1.0)) return {literal, false};
    // Divided by y^(2b).
    auto p = [&](double e) { return std::pow(y, e - 2.0 * b); };
    return {p(0.0) - 1.0 - b * p(b - 1.0) * r1 + (p(b) + 1.0) * r2, true};
}

/// f' + y f'' - y f'^2 / f <= 0.
inline double cor1_second_order(const DensityJet& j, double y) {
    return j.d1 + y * j.d2 - y * j.d1 * j.d1 / j.f;
}

/// f f'' / f'^2 - 1 <= 0.
inline double curvature_ratio(const DensityJet& j) { return (j.f / j.d1) * (j.d2 / j.d1) - 1.0; }

}  // namespace tailbound::detail
