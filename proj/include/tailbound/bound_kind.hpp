#pragma once

#include "tailbound/distributions.hpp"

#include <string>
#include <string_view>

namespace tailbound {

enum class BoundTag {
    upper_thm1,
    upper_thm2,
    upper_cor1,
    upper_cor2,
    lower_thm3,
    lower_thm4,
    lower_cor3,
    lower_cor4,
    lower_thm5,
};

/// Selects one bound family together with its tightening parameters.
/// The a -> infinity limits (cor2, cor4, thm5) are separate tags; their `a`
/// field is unused and effective_a() reports +inf.
struct BoundKind {
    BoundTag tag = BoundTag::upper_cor2;
    double a = 1.0;
    double b = 1.0;

    static BoundKind thm1(double a);
    static BoundKind thm2(double a);
    static BoundKind cor1();
    static BoundKind cor2();
    static BoundKind thm3(double a, double b);
    static BoundKind thm4(double a, double b);
    static BoundKind cor3(double b);
    static BoundKind cor4(double b);
    static BoundKind thm5(double b);

    bool is_upper() const;
    bool has_a() const;  // a is a free parameter of this tag
    bool has_b() const;

    /// 1 for cor1/cor3, +inf for cor2/cor4/thm5, the stored a otherwise.
    double effective_a() const;

    /// Short identifier used as condition-id prefix: "thm1", ..., "thm5".
    std::string_view id() const;

    /// Round-trippable label, e.g. "thm4:a=2,b=0.8" or "cor2".
    std::string label() const;

    friend bool operator==(const BoundKind& lhs, const BoundKind& rhs);
};

/// Parses labels such as "cor2", "thm2:a=2", "thm4:a=2,b=1", "cor3:b=0.8".
/// Omitted parameters default to 1. Throws InvalidParameter on malformed text.
BoundKind parse_bound_kind(std::string_view text);

/// Shift anchor used by the kind on this model: 0 for thm1/thm3, the support
/// lower endpoint for thm2/thm4/cor1/cor3/cor4, the mean for thm5 and NaN for
/// cor2 (which needs no anchor). Throws PreconditionError when the model's
/// support or metadata does not admit the kind.
double bound_anchor(const DistributionModel& model, const BoundKind& kind);

/// True when bound_anchor would succeed.
bool kind_applicable(const DistributionModel& model, const BoundKind& kind);

}  // namespace tailbound
