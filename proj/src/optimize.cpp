#include "tailbound/optimize.hpp"

#include "tailbound/bound_kind.hpp"
#include "tailbound/conditions.hpp"
#include "tailbound/errors.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace tailbound {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kSuggestProbes = 40;
constexpr double kSuggestRatio = 1.25;

using Predicate = std::function<bool(double)>;

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> ps(n);
    const double ratio = std::log(hi / lo);
    for (int i = 0; i < n; ++i) ps[i] = i == n - 1 ? hi : lo * std::exp(ratio * i / (n - 1));
    return ps;
}

double bisect_to_satisfied(const Predicate& ok, double sat, double unsat) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (sat + unsat);
        if (mid == sat || mid == unsat) break;
        if (ok(mid)) sat = mid;
        else unsat = mid;
    }
    return sat;
}

/// Upper ends of the satisfied parameter intervals, largest first. The scan
/// maximum is included when the predicate holds there.
std::vector<double> upper_endpoints(const Predicate& ok, const ScanOptions& scan, double hi, bool& top_satisfied) {
    const auto ps = log_grid(scan.lo, hi, scan.points);
    std::vector<char> flag(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) flag[i] = ok(ps[i]);
    std::vector<double> ends;
    top_satisfied = flag.back();
    if (top_satisfied) ends.push_back(ps.back());
    for (std::size_t i = ps.size() - 1; i-- > 0;)
        if (flag[i] && !flag[i + 1]) ends.push_back(bisect_to_satisfied(ok, ps[i], ps[i + 1]));
    return ends;
}

bool any_satisfied(const Predicate& ok, const ScanOptions& scan, double hi) {
    for (double p : log_grid(scan.lo, hi, scan.points))
        if (ok(p)) return true;
    return false;
}

std::optional<double> suggest_x(const DistributionModel& model, double anchor, double x,
                                const std::function<bool(double)>& feasible_at) {
    const double y = x - anchor;
    double step = y;
    for (int j = 1; j <= kSuggestProbes; ++j) {
        step *= kSuggestRatio;
        const double probe = anchor + step;
        if (!model.support().contains_strictly(probe)) break;
        if (feasible_at(probe)) return probe;
    }
    return std::nullopt;
}

void require_interior(const DistributionModel& model, double x) {
    if (!model.support().contains_strictly(x))
        throw DomainError("x = " + std::to_string(x) + " is not strictly inside the support of " + model.name());
}

void require_scan(const ScanOptions& scan, double max, const char* name) {
    if (!(max >= 1.0) || !std::isfinite(max)) throw PreconditionError(name, "scan maximum must be finite and >= 1");
    if (scan.points < 2 || !(scan.lo > 0.0) || !(scan.lo < max))
        throw InvalidParameter("scan", "need >= 2 points and 0 < lo < max");
}

OptimizedParam fallback(std::string name, std::string diagnostic) {
    OptimizedParam out;
    out.name = std::move(name);
    out.value = kNaN;
    out.achieved_by = AchievedBy::fallback_none;
    out.residual = kNaN;
    out.diagnostic = std::move(diagnostic);
    return out;
}

OptimizedParam largest_b(const DistributionModel& model, double x, double anchor, double b_max,
                         const ScanOptions& scan, const std::function<double(double, double)>& master) {
    auto ok = [&](double b) { return master(x, b) >= 0.0; };
    bool top = false;
    const auto ends = upper_endpoints(ok, scan, b_max, top);
    if (ends.empty()) {
        OptimizedParam out = fallback("b", "master condition fails for every scanned b; increase x");
        out.suggested_x = suggest_x(model, anchor, x, [&](double xp) {
            return any_satisfied([&](double b) { return master(xp, b) >= 0.0; }, scan, b_max);
        });
        return out;
    }
    OptimizedParam out;
    out.name = "b";
    out.value = ends.front();
    out.achieved_by = AchievedBy::root_of_equality;
    out.residual = master(x, out.value);
    out.non_binding = top;
    if (top) out.diagnostic = "condition non-binding up to b_max";
    return out;
}

}  // namespace

std::string_view achieved_by_name(AchievedBy how) {
    switch (how) {
        case AchievedBy::cor2_conditions_hold: return "cor2_conditions_hold";
        case AchievedBy::root_of_equality: return "root_of_equality";
        case AchievedBy::fallback_none: return "fallback_none";
    }
    return "unknown";
}

OptimizedParam optimize_a(const DistributionModel& model, double x, double a_max, const ScanOptions& scan) {
    const SupportSpec& s = model.support();
    if (s.lower_finite() && !(x > s.lower)) throw PreconditionError("x_gt_anchor", "x must exceed the lower endpoint");
    require_interior(model, x);
    require_scan(scan, a_max, "a_max");

    if (evaluate_conditions(model, x, BoundKind::cor2()).all_satisfied) {
        OptimizedParam out;
        out.name = "a";
        out.value = std::numeric_limits<double>::infinity();
        out.achieved_by = AchievedBy::cor2_conditions_hold;
        out.residual = kNaN;
        return out;
    }
    if (!s.lower_finite())
        return fallback("a", "cor2 conditions fail and thm2 needs a finite lower endpoint");

    auto second_order_ok = [&](double a) { return thm2_second_order_lhs(model, x, a) <= 0.0; };
    auto denominator_ok = [&](double a) { return thm2_denominator_lhs(model, x, a) < 0.0; };
    bool top = false;
    for (double a : upper_endpoints(second_order_ok, scan, a_max, top)) {
        if (!denominator_ok(a)) continue;
        OptimizedParam out;
        out.name = "a";
        out.value = a;
        out.achieved_by = AchievedBy::root_of_equality;
        out.residual = thm2_second_order_lhs(model, x, a);
        out.non_binding = a == a_max && top;
        if (out.non_binding) out.diagnostic = "second-order condition non-binding up to a_max";
        return out;
    }

    OptimizedParam out = fallback("a", "no scanned a satisfies both thm2 conditions; decrease a or increase x");
    out.suggested_x = suggest_x(model, s.lower, x, [&](double xp) {
        return any_satisfied(
            [&](double a) {
                return thm2_second_order_lhs(model, xp, a) <= 0.0 && thm2_denominator_lhs(model, xp, a) < 0.0;
            },
            scan, a_max);
    });
    return out;
}

OptimizedParam optimize_b_real_line(const DistributionModel& model, double x, double b_max,
                                    const ScanOptions& scan) {
    if (model.support().lower_finite()) throw PreconditionError("real_line_support", "support must be (-inf, inf)");
    if (!model.mean()) throw PreconditionError("mean_known", "model has no mean");
    const double mu = *model.mean();
    if (!(x > mu)) throw PreconditionError("x_gt_mean", "x must exceed the mean");
    require_interior(model, x);
    if (!(model.pdf_prime(x) < 0.0)) throw PreconditionError("fprime_negative", "f'(x) must be negative");
    require_scan(scan, b_max, "b_max");
    return largest_b(model, x, mu, b_max, scan,
                     [&](double xp, double b) { return thm5_master_lhs(model, xp, b); });
}

OptimizedParam optimize_b_semibounded(const DistributionModel& model, double x, double a, double b_max,
                                      const ScanOptions& scan) {
    const SupportSpec& s = model.support();
    if (!s.lower_finite()) throw PreconditionError("finite_support_lower", "support needs a finite lower endpoint");
    if (!(x > s.lower)) throw PreconditionError("x_gt_anchor", "x must exceed the lower endpoint");
    require_interior(model, x);
    if (!(a > 0.0)) throw InvalidParameter("a", "must be > 0");
    require_scan(scan, b_max, "b_max");

    if (std::isinf(a)) {
        if (!(model.pdf_prime(x) < 0.0)) throw PreconditionError("fprime_negative", "f'(x) must be negative");
        return largest_b(model, x, s.lower, b_max, scan,
                         [&](double xp, double b) { return cor4_master_lhs(model, xp, b); });
    }
    if (!(thm2_denominator_lhs(model, x, a) < 0.0))
        return fallback("b", "denominator condition fails for this a; no b can help");
    return largest_b(model, x, s.lower, b_max, scan,
                     [&](double xp, double b) { return thm4_master_lhs(model, xp, a, b); });
}

}  // namespace tailbound
