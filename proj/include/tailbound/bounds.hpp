#pragma once

#include "tailbound/bound_kind.hpp"
#include "tailbound/conditions.hpp"
#include "tailbound/distributions.hpp"

namespace tailbound {

/// A bound evaluated at one point. The value is returned even when the
/// conditions fail (valid = false) and may lie outside [0, 1].
struct BoundValue {
    double value = 0.0;
    bool valid = false;
    ConditionReport condition_report;
    bool underflow = false;  // f(x)^2 underflowed; value clamped to 0
};

/// y = x - x0.
double shifted_coordinate(double x, double x0);

/// Upper bound -y^a f^2 / (f + y^a f') of the given upper kind (cor2: -f^2/f').
/// Throws DomainError outside the open support, PreconditionError when the
/// model does not admit the kind, SingularDenominator when the denominator is
/// within 1e-300 of zero, InvalidParameter for a lower kind.
BoundValue upper_bound(const DistributionModel& model, double x, const BoundKind& kind);

/// Lower bound y^b / (1 + y^b) times the matching upper expression; thm5 uses
/// y = x - mean and additionally throws PreconditionError for x <= mean.
BoundValue lower_bound(const DistributionModel& model, double x, const BoundKind& kind);

/// Dispatches on kind.is_upper().
BoundValue evaluate_bound(const DistributionModel& model, double x, const BoundKind& kind);

enum class Side { upper, lower };

/// Family-specific closed forms of the catalog bounds, evaluated in log space.
///   gaussian:              cor2 / thm5(b), valid for x > mu
///   chi_square_central:    cor2 / cor4(b), valid for k >= 2 and x > k - 2
///   chi_square_noncentral: cor2 / cor4(b), valid for k >= 2 and a negative
///                          denominator (k - x - 2) I_nu + sqrt(lambda x) I_{k/2}
///   gaussian_squared:      thm1(a=1) / cor4(b), valid while
///                          x - sigma^2 - mu t tanh(mu t / sigma^2) > 0, t = sqrt(x)
///   beta_prime:            cor1 / cor3(b), valid for x > alpha / beta
/// Throws RegionError (carrying the violated threshold) outside that region.
double closed_form_bound(const CatalogEntry& entry, double x, Side side, double b = 1.0);

/// Generic bound kind whose value the closed form reproduces.
BoundKind closed_form_counterpart(const CatalogEntry& entry, Side side, double b = 1.0);

}  // namespace tailbound
