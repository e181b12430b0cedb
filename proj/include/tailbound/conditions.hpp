#pragma once

#include "tailbound/bound_kind.hpp"
#include "tailbound/distributions.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace tailbound {

/// How an entry's lhs_value is compared with zero.
enum class Sense { less, less_equal, greater, greater_equal };

std::string_view sense_symbol(Sense sense);  // "<0", "<=0", ">0", ">=0"

struct ConditionEntry {
    std::string id;          // stable identifier, e.g. "thm2.second_order"
    double lhs_value = 0.0;  // one-sided form of the inequality
    bool satisfied = false;
    Sense sense = Sense::less;
    std::string note;  // set for NaN results and rescaled evaluations
};

struct ConditionReport {
    BoundKind kind;
    double x = 0.0;
    std::vector<ConditionEntry> entries;
    bool all_satisfied = false;

    /// Entry with the given id, or nullptr.
    const ConditionEntry* find(std::string_view id) const;
};

/// Condition identifiers of a kind, in report (and CSV column) order.
std::vector<std::string> condition_ids(const BoundKind& kind);

/// Evaluates every inequality attached to `kind` at x, literally and with zero
/// margin. Non-finite left-hand sides are unsatisfied. Throws DomainError when
/// x is not strictly inside the support and PreconditionError when the model
/// does not admit the kind. thm5 at x <= mean is reported (x_gt_mean fails),
/// not thrown.
ConditionReport evaluate_conditions(const DistributionModel& model, double x, const BoundKind& kind);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

/// Union of disjoint sorted x-intervals on which all conditions of `kinds` hold.
struct FeasibleRegion {
    std::vector<Interval> intervals;
    std::vector<BoundKind> kinds;
    double range_lo = 0.0;
    double range_hi = 0.0;
    double resolution = 0.0;  // grid step of the scan

    bool empty() const { return intervals.empty(); }
    double measure() const;
    /// measure() / (range_hi - range_lo).
    double coverage() const;
    bool contains(double x) const;
    /// Left endpoint of the first interval; NaN when empty.
    double left_endpoint() const;
};

/// Scans a uniform grid of n_grid points on [lo, hi] (n_grid >= 16) and refines
/// every pass/fail boundary by bisection to width (hi - lo) / 2^20. Interval
/// endpoints sit on the satisfied side. Grid points outside the open support
/// count as failing. Throws InvalidParameter for lo >= hi or n_grid < 16.
FeasibleRegion feasible_region(const DistributionModel& model, const BoundKind& kind, double lo, double hi,
                               int n_grid = 257);

/// Interval intersection of two regions over the same range.
FeasibleRegion intersect(const FeasibleRegion& lhs, const FeasibleRegion& rhs);

/// Intersection of the regions of each kind.
FeasibleRegion joint_region(const DistributionModel& model, const std::vector<BoundKind>& kinds, double lo,
                            double hi, int n_grid = 257);

/// Left side of the mean-anchored master condition (>= 0 is satisfied).
/// Throws PreconditionError when x <= mean and SingularDenominator when f'(x) = 0.
double thm5_master_lhs(const DistributionModel& model, double x, double b);

/// Master lhs values used by the optimizers; identical to the corresponding
/// condition entries (including rescaling for huge powers).
double thm2_second_order_lhs(const DistributionModel& model, double x, double a);
double thm2_denominator_lhs(const DistributionModel& model, double x, double a);
double thm4_master_lhs(const DistributionModel& model, double x, double a, double b);
double cor4_master_lhs(const DistributionModel& model, double x, double b);

}  // namespace tailbound
