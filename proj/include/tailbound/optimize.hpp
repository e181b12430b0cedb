#pragma once

#include "tailbound/distributions.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace tailbound {

enum class AchievedBy { cor2_conditions_hold, root_of_equality, fallback_none };

std::string_view achieved_by_name(AchievedBy how);

struct OptimizedParam {
    std::string name;  // "a" or "b"
    /// +inf when a -> inf is optimal; NaN for fallback_none.
    double value = 0.0;
    AchievedBy achieved_by = AchievedBy::fallback_none;
    /// Master-condition lhs at the returned value (NaN when not applicable).
    double residual = 0.0;
    /// The condition held on the whole scan; value is the scan maximum and the
    /// residual is not a root residual.
    bool non_binding = false;
    std::string diagnostic;
    /// fallback_none only: nearest probed x > input where a feasible parameter exists.
    std::optional<double> suggested_x;
};

/// Log-spaced scan grid shared by the optimizers.
struct ScanOptions {
    int points = 256;
    double lo = 1e-3;
};

/// Largest a for which the thm2 conditions hold at x: +inf when the cor2
/// conditions hold, otherwise the largest root of the second-order condition
/// (scan over [lo, a_max] plus bisection) at which the denominator condition
/// also holds. fallback_none carries a diagnostic and, if found, a suggested x.
/// Throws PreconditionError (x_gt_anchor) for x at or below a finite lower endpoint.
OptimizedParam optimize_a(const DistributionModel& model, double x, double a_max = 64.0,
                          const ScanOptions& scan = {});

/// Largest b with a non-negative mean-anchored master lhs at x.
/// Throws PreconditionError naming the failed precondition (real_line_support,
/// mean_known, x_gt_mean, fprime_negative, b_max).
OptimizedParam optimize_b_real_line(const DistributionModel& model, double x, double b_max = 64.0,
                                    const ScanOptions& scan = {});

/// Largest b for the thm4 master condition at fixed a (cor4 master when a is +inf).
/// Throws PreconditionError (finite_support_lower, x_gt_anchor, fprime_negative, b_max).
OptimizedParam optimize_b_semibounded(const DistributionModel& model, double x, double a, double b_max = 64.0,
                                      const ScanOptions& scan = {});

}  // namespace tailbound
