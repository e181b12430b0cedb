#include "tailbound/validation.hpp"

#include "formulas.hpp"
#include "tailbound/bounds.hpp"
#include "tailbound/conditions.hpp"
#include "tailbound/errors.hpp"
#include "tailbound/oracle.hpp"
#include "tailbound/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace tailbound {

namespace {

constexpr double kInfA = std::numeric_limits<double>::infinity();
constexpr double kSignFloor = 1e-10;
constexpr double kStepTolerance = 1e-12;
constexpr double kDecayFactor = 1e-2;
constexpr double kLimitTail = 1e-4;
constexpr double kLimitDeficit = 1e-6;

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

double fd_step(double x) { return std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + std::abs(x)); }

std::vector<double> uniform(double lo, double hi, int n) { return GridSpec{lo, hi, n}.points(); }

}  // namespace

std::string_view verdict_name(Verdict verdict) {
    switch (verdict) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::skipped: return "skipped";
    }
    return "unknown";
}

double deficit_upper(const DistributionModel& model, double x, const BoundKind& kind) {
    if (!kind.is_upper()) throw InvalidParameter("kind", kind.label() + " is not an upper bound");
    return upper_bound(model, x, kind).value - true_tail(model, x).value;
}

double deficit_upper(const DistributionModel& model, double x, double a) {
    return deficit_upper(model, x, std::isinf(a) ? BoundKind::cor2() : BoundKind::thm1(a));
}

double deficit_lower(const DistributionModel& model, double x, const BoundKind& kind) {
    if (kind.is_upper()) throw InvalidParameter("kind", kind.label() + " is not a lower bound");
    return lower_bound(model, x, kind).value - true_tail(model, x).value;
}

double deficit_lower(const DistributionModel& model, double x, double a, double b) {
    return deficit_lower(model, x, std::isinf(a) ? BoundKind::cor4(b) : BoundKind::thm3(a, b));
}

ValidationDiagnostic monotonicity_audit(const DistributionModel& model, const BoundKind& kind, double lo, double hi,
                                        int n) {
    if (!(lo < hi)) throw PreconditionError("non_empty_region", "audit region is empty");
    ValidationDiagnostic diag;
    diag.name = "deficit_monotonicity:" + kind.label();

    const bool upper = kind.is_upper();
    std::vector<double> scale;
    std::vector<double> tails;
    int invalid = 0;
    for (double x : uniform(lo, hi, n)) {
        if (!model.support().contains_strictly(x)) {
            ++invalid;
            continue;
        }
        BoundValue bv;
        try {
            bv = evaluate_bound(model, x, kind);
        } catch (const Error&) {
            ++invalid;
            continue;
        }
        if (!bv.valid) {
            ++invalid;
            continue;
        }
        const double tail = true_tail(model, x).value;
        diag.x_samples.push_back(x);
        diag.values.push_back(bv.value - tail);
        scale.push_back(std::abs(bv.value) + tail);
        tails.push_back(tail);
    }
    if (diag.values.empty()) throw PreconditionError("non_empty_region", "no valid sample in the audit region");

    const double dir = upper ? 1.0 : -1.0;  // map lower deficits onto the upper orientation
    std::vector<std::string> problems;
    for (std::size_t i = 0; i < diag.values.size(); ++i) {
        const double v = dir * diag.values[i];
        if (v < -kSignFloor) {
            problems.push_back("sign violated at x = " + fmt(diag.x_samples[i]) + " (deficit " + fmt(diag.values[i]) + ")");
            break;
        }
    }
    for (std::size_t i = 1; i < diag.values.size(); ++i) {
        const double step = dir * (diag.values[i] - diag.values[i - 1]);
        if (step > kStepTolerance * std::max(scale[i], scale[i - 1])) {
            problems.push_back("monotonicity violated between x = " + fmt(diag.x_samples[i - 1]) + " and " +
                               fmt(diag.x_samples[i]));
            break;
        }
    }
    const double first = std::abs(diag.values.front());
    const double last = std::abs(diag.values.back());
    if (last > first * kDecayFactor + kSignFloor)
        problems.push_back("no decay: |last| " + fmt(last) + " vs |first| " + fmt(first));
    if (tails.back() < kLimitTail && last > kLimitDeficit)
        problems.push_back("limit: |deficit| " + fmt(last) + " at tail " + fmt(tails.back()));

    diag.verdict = problems.empty() ? Verdict::pass : Verdict::fail;
    std::ostringstream detail;
    detail << diag.values.size() << " valid samples on [" << fmt(lo) << ", " << fmt(hi) << "], " << invalid
           << " excluded";
    for (const auto& p : problems) detail << "; " << p;
    diag.detail = detail.str();
    return diag;
}

double integration_by_parts_check(const DistributionModel& model, double x) {
    if (!(model.support().lower == 0.0))
        throw PreconditionError("support_lower_zero", "integration by parts check needs support starting at 0");
    if (!(x > 0.0)) throw DomainError("x must be > 0");
    auto integrand = [&model](double t) { return t * model.pdf_prime(t); };
    const quad::QuadResult g = quad::integrate(integrand, 0.0, x);
    if (!g.converged) throw OracleError("G(x) quadrature did not converge", g.value, g.abs_error);
    return std::abs(cdf_value(model, x) - x * model.pdf(x) + g.value);
}

double deficit_derivative(const DistributionModel& model, double x, const BoundKind& kind) {
    const double anchor = bound_anchor(model, kind);
    const DensityJet j = model.jet(x);
    const double y = x - anchor;
    const double a = kind.effective_a();
    switch (kind.tag) {
        case BoundTag::upper_cor2: return j.f * detail::curvature_ratio(j);
        case BoundTag::upper_thm1:
        case BoundTag::upper_thm2:
        case BoundTag::upper_cor1: {
            const double den = j.f + std::pow(y, a) * j.d1;
            const auto m = detail::upper_second_order(j, y, a);
            if (m.scaled) return m.value;  // sign only
            return j.f * m.value / (y * den * den);
        }
        case BoundTag::lower_thm3:
        case BoundTag::lower_thm4:
        case BoundTag::lower_cor3: {
            const double den = j.f + std::pow(y, a) * j.d1;
            const double w = 1.0 + std::pow(y, kind.b);
            const auto m = detail::lower_master(j, y, a, kind.b);
            if (m.scaled) return m.value;
            return j.f * m.value / (y * w * w * den * den);
        }
        case BoundTag::lower_cor4:
        case BoundTag::lower_thm5: {
            const double w = 1.0 + std::pow(y, kind.b);
            const auto m = detail::limit_master(j, y, kind.b);
            if (m.scaled) return m.value;
            return j.f * m.value / (w * w);
        }
    }
    return detail::kNaN;
}

ValidationDiagnostic derivative_sign_check(const DistributionModel& model, const BoundKind& kind, double lo,
                                           double hi, int n) {
    ValidationDiagnostic diag;
    diag.name = "deficit_derivative_sign:" + kind.label();
    int compared = 0;
    int skipped = 0;
    std::string mismatch;
    for (double x : uniform(lo, hi, n)) {
        const double h = fd_step(x);
        if (!model.support().contains_strictly(x - h)) {
            ++skipped;
            continue;
        }
        double closed = 0.0;
        double fd = 0.0;
        double noise = 0.0;
        try {
            closed = deficit_derivative(model, x, kind);
            const double plus = evaluate_bound(model, x + h, kind).value;
            const double minus = evaluate_bound(model, x - h, kind).value;
            const double f = model.pdf(x);
            const double slope = (plus - minus) / (2.0 * h);
            fd = slope + f;  // d/dx of (bound - tail) = bound' + f
            noise = 1e-5 * (std::abs(slope) + f);
        } catch (const Error&) {
            ++skipped;
            continue;
        }
        diag.x_samples.push_back(x);
        diag.values.push_back(closed);
        if (!std::isfinite(closed) || !std::isfinite(fd) || std::abs(fd) <= noise || closed == 0.0) {
            ++skipped;
            continue;
        }
        ++compared;
        if ((closed > 0.0) != (fd > 0.0) && mismatch.empty())
            mismatch = "sign mismatch at x = " + fmt(x) + " (closed " + fmt(closed) + ", difference " + fmt(fd) + ")";
    }
    if (compared == 0) {
        diag.verdict = Verdict::skipped;
        diag.detail = "no point above the finite-difference noise floor";
        return diag;
    }
    diag.verdict = mismatch.empty() ? Verdict::pass : Verdict::fail;
    diag.detail = std::to_string(compared) + " compared, " + std::to_string(skipped) + " skipped" +
                  (mismatch.empty() ? "" : "; " + mismatch);
    return diag;
}

ValidationDiagnostic probe_conjecture_real_line(const DistributionModel& model, double lo, double hi, int n) {
    if (model.support().lower_finite() || model.support().upper_finite())
        throw PreconditionError("real_line_support", "probe needs support (-inf, inf)");
    ValidationDiagnostic diag;
    diag.name = "conjecture_real_line";
    diag.x_samples = uniform(lo, hi, n);
    for (double x : diag.x_samples)
        diag.values.push_back(evaluate_conditions(model, x, BoundKind::cor2()).all_satisfied ? 1.0 : 0.0);
    std::size_t start = diag.values.size();
    while (start > 0 && diag.values[start - 1] == 1.0) --start;
    if (start == diag.values.size()) {
        diag.verdict = Verdict::fail;
        diag.detail = "cor2 conditions fail at the right end of the range";
    } else {
        diag.verdict = Verdict::pass;
        diag.detail = "x0 = " + fmt(diag.x_samples[start]);
    }
    return diag;
}

ValidationDiagnostic probe_conjecture_optimal_a(const DistributionModel& model, double lo, double hi) {
    ValidationDiagnostic diag;
    diag.name = "conjecture_optimal_a";
    if (!model.support().lower_finite()) {
        diag.detail = "skipped: needs a finite lower endpoint";
        return diag;
    }
    const auto xs = uniform(lo, hi, 16);
    bool witnessed = false;
    for (double x : xs) {
        if (!model.support().contains_strictly(x)) continue;
        const auto cor2 = evaluate_conditions(model, x, BoundKind::cor2());
        const auto* curv = cor2.find("cor2.curvature_ratio");
        if (!curv->satisfied && evaluate_conditions(model, x, BoundKind::cor1()).all_satisfied) witnessed = true;
    }
    if (!witnessed) {
        diag.detail = "skipped: no sampled x has cor1 holding while the cor2 curvature condition fails";
        return diag;
    }

    constexpr std::array<double, 6> kAs = {0.5, 0.75, 1.0, 1.5, 2.0, 4.0};
    // a counts as feasible at a sample when thm2(a) is valid there and at every later sample
    std::vector<std::array<bool, kAs.size()>> holds_onward(xs.size());
    std::array<bool, kAs.size()> onward;
    onward.fill(true);
    for (std::size_t i = xs.size(); i-- > 0;) {
        for (std::size_t j = 0; j < kAs.size(); ++j) {
            const bool valid = model.support().contains_strictly(xs[i]) &&
                               evaluate_conditions(model, xs[i], BoundKind::thm2(kAs[j])).all_satisfied;
            onward[j] = onward[j] && valid;
        }
        holds_onward[i] = onward;
    }

    std::ostringstream detail;
    double best_last = detail::kNaN;
    int pointwise_only_violations = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        double best_gap = kInfA;
        double best_a = detail::kNaN;
        const double tail = true_tail(model, x).value;
        detail << "x=" << fmt(x) << ":";
        for (std::size_t j = 0; j < kAs.size(); ++j) {
            const BoundValue bv = upper_bound(model, x, BoundKind::thm2(kAs[j]));
            if (!bv.valid) continue;
            const double gap = bv.value - tail;
            if (!holds_onward[i][j]) {
                if (gap < 0.0) ++pointwise_only_violations;
                continue;
            }
            detail << " a" << fmt(kAs[j]) << "=" << fmt(gap);
            if (gap < best_gap) {
                best_gap = gap;
                best_a = kAs[j];
            }
        }
        detail << "; ";
        diag.x_samples.push_back(x);
        diag.values.push_back(best_a);
        best_last = best_a;
    }
    if (pointwise_only_violations > 0)
        detail << pointwise_only_violations << " (x, a) with conditions holding only pointwise fell below the tail";
    diag.verdict = best_last == 1.0 ? Verdict::pass : Verdict::fail;
    diag.detail = "gap-minimizing a at largest x: " + fmt(best_last) + "; " + detail.str();
    return diag;
}

namespace {

/// First x (doubling outward from start) whose tail drops below target.
double tail_horizon(const DistributionModel& model, double start, double step, double target, double cap) {
    double x = start + step;
    while (x < cap) {
        if (true_tail(model, x).value < target) return x;
        step *= 2.0;
        x = start + step;
    }
    return cap;
}

ValidationDiagnostic skipped_diag(std::string name, std::string detail) {
    ValidationDiagnostic d;
    d.name = std::move(name);
    d.verdict = Verdict::skipped;
    d.detail = std::move(detail);
    return d;
}

}  // namespace

std::vector<ValidationDiagnostic> run_validation_suite(const DistributionModel& model) {
    std::vector<ValidationDiagnostic> out;
    const SupportSpec& s = model.support();
    const bool real_line = !s.lower_finite();
    if (real_line && !model.mean())
        throw PreconditionError("mean_known", "real-line validation needs the mean");

    const double center = real_line ? *model.mean() : s.lower;
    const double hi = tail_horizon(model, center, 1.0, 1e-6, center + 1e5);
    const double lo = real_line ? center - 0.5 * (hi - center) : s.lower + std::min(1e-3 * (hi - s.lower), 0.05);

    std::vector<BoundKind> kinds;
    if (real_line) kinds = {BoundKind::cor2(), BoundKind::thm5(1.0)};
    else kinds = {BoundKind::cor2(), BoundKind::cor1(), BoundKind::cor4(1.0), BoundKind::cor3(1.0)};

    for (const auto& kind : kinds) {
        const double kind_lo = kind.tag == BoundTag::lower_thm5 ? center + 1e-3 * (hi - center) : lo;
        const FeasibleRegion region = feasible_region(model, kind, kind_lo, hi, 513);
        const std::string name = "deficit_monotonicity:" + kind.label();
        if (region.empty()) {
            out.push_back(skipped_diag(name, "empty feasible region on [" + fmt(kind_lo) + ", " + fmt(hi) + "]"));
        } else {
            const Interval& tail_part = region.intervals.back();
            out.push_back(monotonicity_audit(model, kind, tail_part.lo, tail_part.hi, 200));
        }
        out.push_back(derivative_sign_check(model, kind, kind_lo, hi, 32));
    }

    if (s.lower == 0.0) {
        ValidationDiagnostic ibp;
        ibp.name = "integration_by_parts";
        const double top = std::min(hi, 50.0);
        double worst = 0.0;
        for (int i = 0; i < 16; ++i) {
            const double x = 1e-6 * std::pow(top / 1e-6, i / 15.0);
            const double r = integration_by_parts_check(model, x);
            ibp.x_samples.push_back(x);
            ibp.values.push_back(r);
            worst = std::max(worst, r);
        }
        ibp.verdict = worst <= 1e-8 ? Verdict::pass : Verdict::fail;
        ibp.detail = "max residual " + fmt(worst);
        out.push_back(ibp);
    }

    if (real_line) {
        out.push_back(probe_conjecture_real_line(model, lo, hi, 500));
    } else {
        const FeasibleRegion cor1 = feasible_region(model, BoundKind::cor1(), lo, hi, 513);
        if (cor1.empty()) {
            out.push_back(skipped_diag("conjecture_optimal_a", "skipped: cor1 never holds"));
        } else {
            const double start = std::max(1.5 * cor1.left_endpoint(), cor1.left_endpoint() + 1.0);
            out.push_back(probe_conjecture_optimal_a(model, start, 10.0 * start));
        }
    }
    return out;
}

bool suite_passes(const std::vector<ValidationDiagnostic>& diagnostics) {
    return std::none_of(diagnostics.begin(), diagnostics.end(),
                        [](const ValidationDiagnostic& d) { return d.verdict == Verdict::fail; });
}

}  // namespace tailbound
