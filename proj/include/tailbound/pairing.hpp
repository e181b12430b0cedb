#pragma once

#include "tailbound/bound_kind.hpp"
#include "tailbound/conditions.hpp"
#include "tailbound/distributions.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace tailbound {

/// Closed-form classes of R(x) = P_U / P_L - 1.
///   matched_a      equal effective a on both sides: R = 1 / y^b
///   cor1_cor4_mix  a = 1 upper with the cor4 lower:
///                  R = ((1 + y^b) / y^(b-1)) f' / (f + y f') - 1
///   real_line      cor2 with thm5: R = 1 / (x - mean)^b
///   general        any other pair
enum class RateClass { matched_a, cor1_cor4_mix, real_line, general };

std::string_view rate_class_name(RateClass rc);

RateClass classify_pair(const BoundKind& upper, const BoundKind& lower);

struct RateSample {
    double x = 0.0;
    double r = 0.0;
};

struct PairingReport {
    BoundKind upper;
    BoundKind lower;
    FeasibleRegion joint_region;
    RateClass rate_class = RateClass::general;
    std::vector<RateSample> samples;  // jointly valid points of a uniform 33-point grid
    std::string cascade_step;         // which selection rule produced the pair
    std::vector<std::string> diagnostics;
};

/// P_U(x) / P_L(x) - 1. Throws PairingError when either bound is invalid or
/// not evaluable at x (precondition or singular denominator) or the lower
/// bound is not positive; DomainError outside the support.
double convergence_rate(const DistributionModel& model, double x, const BoundKind& upper, const BoundKind& lower);

/// The class formula for the pair at x (no validity requirement). For the
/// general class this is the simplified ratio
/// (1 + y_L^b) / y_L^(a_L + b - a_U) * (f + y_L^a_L f') / (f + y_U^a_U f') - 1.
double rate_closed_form(const DistributionModel& model, double x, const BoundKind& upper, const BoundKind& lower);

struct RateBoundCheck {
    double upper_side = 0.0;  // P_U / T - 1
    double lower_side = 0.0;  // T / P_L - 1
    double r = 0.0;
    bool holds = false;       // max(upper_side, lower_side) <= r + 1e-12
};

/// Compares both one-sided relative gaps against R(x) using the oracle tail.
RateBoundCheck rate_bound_check(const DistributionModel& model, double x, const BoundKind& upper,
                                const BoundKind& lower);

struct PairingOptions {
    int n_grid = 257;           // feasible-region scan
    int n_samples = 33;         // rate samples
    double min_coverage = 0.9;  // joint feasibility needed by the simple pairs
};

/// Builds the report for a fixed pair over [lo, hi].
PairingReport make_pairing(const DistributionModel& model, const BoundKind& upper, const BoundKind& lower,
                           double lo, double hi, const PairingOptions& opts = {});

/// Selection cascade over [lo, hi].
/// Real line: cor2 + thm5(1) when jointly feasible on >= 90% of the range,
/// else cor2 + thm5(b) for the first b in {1, 4/5, 1/2, 1/4} with a non-empty
/// joint region, else cor2 + thm5(optimized b at the midpoint).
/// Finite lower endpoint:
///   (1) cor2 + cor4(1) with >= 90% coverage;
///   (2) cor1 + cor3(1) with >= 90% coverage;
///   (3) cor1 + cor3(b), first b in {1, 4/5, 1/2, 1/4} with a non-empty joint region;
///   (4) cor1 + cor4(1) with a non-empty joint region;
///       when both (3) and (4) qualify the smaller R at the range midpoint wins,
///       ties going to (3);
///   (5) thm2(a*) + thm4(a*, b*) with a*, b* optimized at the midpoint
///       (cor2 + cor4(b*) when a* = +inf).
/// Throws PairingError listing every candidate's failure when nothing qualifies.
PairingReport select_pair(const DistributionModel& model, double lo, double hi, const PairingOptions& opts = {});

}  // namespace tailbound
