#include "tailbound/conditions.hpp"

#include "formulas.hpp"
#include "tailbound/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tailbound {

namespace {

using detail::Lhs;

bool judge(double lhs, Sense sense) {
    if (!std::isfinite(lhs)) return false;
    switch (sense) {
        case Sense::less: return lhs < 0.0;
        case Sense::less_equal: return lhs <= 0.0;
        case Sense::greater: return lhs > 0.0;
        case Sense::greater_equal: return lhs >= 0.0;
    }
    return false;
}

ConditionEntry entry(std::string id, Lhs lhs, Sense sense) {
    ConditionEntry e{std::move(id), lhs.value, judge(lhs.value, sense), sense, {}};
    if (std::isnan(lhs.value)) e.note = "lhs is NaN";
    else if (lhs.scaled) e.note = "evaluated after dividing by a positive power of y and f^2";
    return e;
}

ConditionEntry entry(std::string id, double lhs, Sense sense) { return entry(std::move(id), Lhs{lhs, false}, sense); }

ConditionEntry division_failure(std::string id, Sense sense, const char* why) {
    return {std::move(id), detail::kNaN, false, sense, why};
}

std::string cid(const BoundKind& kind, const char* suffix) { return std::string(kind.id()) + "." + suffix; }

void require_interior(const DistributionModel& model, double x) {
    if (!model.support().contains_strictly(x))
        throw DomainError("x = " + std::to_string(x) + " is not strictly inside the support of " + model.name());
}

}  // namespace

std::string_view sense_symbol(Sense sense) {
    switch (sense) {
        case Sense::less: return "<0";
        case Sense::less_equal: return "<=0";
        case Sense::greater: return ">0";
        case Sense::greater_equal: return ">=0";
    }
    return "?";
}

const ConditionEntry* ConditionReport::find(std::string_view id) const {
    for (const auto& e : entries)
        if (e.id == id) return &e;
    return nullptr;
}

std::vector<std::string> condition_ids(const BoundKind& kind) {
    switch (kind.tag) {
        case BoundTag::upper_thm1:
        case BoundTag::upper_thm2:
        case BoundTag::upper_cor1: return {cid(kind, "denominator"), cid(kind, "second_order")};
        case BoundTag::upper_cor2: return {cid(kind, "fprime_negative"), cid(kind, "curvature_ratio")};
        case BoundTag::lower_thm3:
        case BoundTag::lower_thm4:
        case BoundTag::lower_cor3: return {cid(kind, "denominator"), cid(kind, "master")};
        case BoundTag::lower_cor4: return {cid(kind, "fprime_negative"), cid(kind, "master")};
        case BoundTag::lower_thm5:
            return {cid(kind, "x_gt_mean"), cid(kind, "fprime_negative"), cid(kind, "master")};
    }
    return {};
}

ConditionReport evaluate_conditions(const DistributionModel& model, double x, const BoundKind& kind) {
    require_interior(model, x);
    const double anchor = bound_anchor(model, kind);
    const DensityJet j = model.jet(x);
    const double y = x - anchor;
    const auto ids = condition_ids(kind);

    ConditionReport report;
    report.kind = kind;
    report.x = x;

    switch (kind.tag) {
        case BoundTag::upper_thm1:
        case BoundTag::upper_thm2:
            report.entries.push_back(entry(ids[0], detail::theorem_denominator(j, y, kind.a), Sense::less));
            report.entries.push_back(entry(ids[1], detail::upper_second_order(j, y, kind.a), Sense::less_equal));
            break;
        case BoundTag::upper_cor1:
            report.entries.push_back(entry(ids[0], j.f + y * j.d1, Sense::less));
            if (j.f == 0.0)
                report.entries.push_back(division_failure(ids[1], Sense::less_equal, "f(x) = 0"));
            else
                report.entries.push_back(entry(ids[1], detail::cor1_second_order(j, y), Sense::less_equal));
            break;
        case BoundTag::upper_cor2:
            report.entries.push_back(entry(ids[0], j.d1, Sense::less));
            if (j.d1 == 0.0)
                report.entries.push_back(division_failure(ids[1], Sense::less_equal, "f'(x) = 0"));
            else
                report.entries.push_back(entry(ids[1], detail::curvature_ratio(j), Sense::less_equal));
            break;
        case BoundTag::lower_thm3:
        case BoundTag::lower_thm4:
        case BoundTag::lower_cor3: {
            const double a = kind.effective_a();
            report.entries.push_back(entry(ids[0], detail::theorem_denominator(j, y, a), Sense::less));
            report.entries.push_back(entry(ids[1], detail::lower_master(j, y, a, kind.b), Sense::greater_equal));
            break;
        }
        case BoundTag::lower_cor4:
        case BoundTag::lower_thm5: {
            std::size_t next = 0;
            if (kind.tag == BoundTag::lower_thm5) report.entries.push_back(entry(ids[next++], y, Sense::greater));
            report.entries.push_back(entry(ids[next++], j.d1, Sense::less));
            if (j.d1 == 0.0)
                report.entries.push_back(division_failure(ids[next], Sense::greater_equal, "f'(x) = 0"));
            else
                report.entries.push_back(entry(ids[next], detail::limit_master(j, y, kind.b), Sense::greater_equal));
            break;
        }
    }

    report.all_satisfied = std::all_of(report.entries.begin(), report.entries.end(),
                                       [](const ConditionEntry& e) { return e.satisfied; });
    return report;
}

double FeasibleRegion::measure() const {
    double total = 0.0;
    for (const auto& iv : intervals) total += iv.length();
    return total;
}

double FeasibleRegion::coverage() const {
    const double span = range_hi - range_lo;
    return span > 0.0 ? measure() / span : 0.0;
}

bool FeasibleRegion::contains(double x) const {
    for (const auto& iv : intervals)
        if (x >= iv.lo && x <= iv.hi) return true;
    return false;
}

double FeasibleRegion::left_endpoint() const { return intervals.empty() ? detail::kNaN : intervals.front().lo; }

namespace {

bool satisfied_at(const DistributionModel& model, const BoundKind& kind, double x) {
    if (!model.support().contains_strictly(x)) return false;
    return evaluate_conditions(model, x, kind).all_satisfied;
}

/// Bisects between a failing and a passing abscissa; returns the passing end.
double refine(const DistributionModel& model, const BoundKind& kind, double fail_x, double pass_x, double width) {
    while (std::abs(pass_x - fail_x) > width) {
        const double mid = 0.5 * (fail_x + pass_x);
        if (mid == fail_x || mid == pass_x) break;
        if (satisfied_at(model, kind, mid)) pass_x = mid;
        else fail_x = mid;
    }
    return pass_x;
}

}  // namespace

FeasibleRegion feasible_region(const DistributionModel& model, const BoundKind& kind, double lo, double hi,
                               int n_grid) {
    if (!(lo < hi)) throw InvalidParameter("x_range", "lo must be < hi");
    if (n_grid < 16) throw InvalidParameter("n_grid", "must be >= 16");
    bound_anchor(model, kind);

    FeasibleRegion region;
    region.kinds = {kind};
    region.range_lo = lo;
    region.range_hi = hi;
    region.resolution = (hi - lo) / (n_grid - 1);
    const double width = (hi - lo) / 1048576.0;

    std::vector<double> xs(n_grid);
    std::vector<char> pass(n_grid);
    for (int i = 0; i < n_grid; ++i) {
        xs[i] = i == n_grid - 1 ? hi : lo + i * region.resolution;
        pass[i] = satisfied_at(model, kind, xs[i]);
    }

    double start = 0.0;
    bool open = false;
    for (int i = 0; i < n_grid; ++i) {
        if (pass[i] && !open) {
            start = i == 0 ? xs[0] : refine(model, kind, xs[i - 1], xs[i], width);
            open = true;
        } else if (!pass[i] && open) {
            const double end = refine(model, kind, xs[i], xs[i - 1], width);
            if (start < end) region.intervals.push_back({start, end});
            open = false;
        }
    }
    if (open && start < xs.back()) region.intervals.push_back({start, xs.back()});
    return region;
}

FeasibleRegion intersect(const FeasibleRegion& lhs, const FeasibleRegion& rhs) {
    FeasibleRegion out;
    out.kinds = lhs.kinds;
    out.kinds.insert(out.kinds.end(), rhs.kinds.begin(), rhs.kinds.end());
    out.range_lo = std::max(lhs.range_lo, rhs.range_lo);
    out.range_hi = std::min(lhs.range_hi, rhs.range_hi);
    out.resolution = std::max(lhs.resolution, rhs.resolution);
    std::size_t i = 0, k = 0;
    while (i < lhs.intervals.size() && k < rhs.intervals.size()) {
        const Interval& p = lhs.intervals[i];
        const Interval& q = rhs.intervals[k];
        const double lo = std::max(p.lo, q.lo);
        const double hi = std::min(p.hi, q.hi);
        if (lo < hi) out.intervals.push_back({lo, hi});
        if (p.hi < q.hi) ++i;
        else ++k;
    }
    return out;
}

FeasibleRegion joint_region(const DistributionModel& model, const std::vector<BoundKind>& kinds, double lo,
                            double hi, int n_grid) {
    if (kinds.empty()) throw InvalidParameter("kinds", "at least one bound kind is required");
    FeasibleRegion region = feasible_region(model, kinds.front(), lo, hi, n_grid);
    for (std::size_t i = 1; i < kinds.size(); ++i)
        region = intersect(region, feasible_region(model, kinds[i], lo, hi, n_grid));
    return region;
}

double thm5_master_lhs(const DistributionModel& model, double x, double b) {
    const auto mean = model.mean();
    if (!mean) throw PreconditionError("mean_known", "model has no mean");
    if (!(x > *mean)) throw PreconditionError("x_gt_mean", "x must exceed the mean");
    const DensityJet j = model.jet(x);
    if (j.d1 == 0.0) throw SingularDenominator("f'(x) = 0 in the thm5 master condition");
    return detail::limit_master(j, x - *mean, b).value;
}

double thm2_second_order_lhs(const DistributionModel& model, double x, double a) {
    const double y = x - model.support().lower;
    return detail::upper_second_order(model.jet(x), y, a).value;
}

double thm2_denominator_lhs(const DistributionModel& model, double x, double a) {
    const double y = x - model.support().lower;
    return detail::theorem_denominator(model.jet(x), y, a).value;
}

double thm4_master_lhs(const DistributionModel& model, double x, double a, double b) {
    const double y = x - model.support().lower;
    return detail::lower_master(model.jet(x), y, a, b).value;
}

double cor4_master_lhs(const DistributionModel& model, double x, double b) {
    const double y = x - model.support().lower;
    return detail::limit_master(model.jet(x), y, b).value;
}

}  // namespace tailbound
