#include "tailbound/pairing.hpp"

#include "tailbound/bounds.hpp"
#include "tailbound/errors.hpp"
#include "tailbound/optimize.hpp"
#include "tailbound/oracle.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <sstream>

namespace tailbound {

namespace {

constexpr std::array<double, 4> kBCandidates = {1.0, 0.8, 0.5, 0.25};

double pow_neg(double f, double y, double a) { return std::isinf(a) ? 0.0 : f * std::pow(y, -a); }

std::string percent(double fraction) {
    std::ostringstream out;
    out.precision(3);
    out << 100.0 * fraction << "%";
    return out.str();
}

/// Raw P_U / P_L - 1 with no validity requirement.
double raw_rate(const DistributionModel& model, double x, const BoundKind& upper, const BoundKind& lower) {
    return upper_bound(model, x, upper).value / lower_bound(model, x, lower).value - 1.0;
}

}  // namespace

std::string_view rate_class_name(RateClass rc) {
    switch (rc) {
        case RateClass::matched_a: return "matched_a";
        case RateClass::cor1_cor4_mix: return "cor1_cor4_mix";
        case RateClass::real_line: return "real_line";
        case RateClass::general: return "general";
    }
    return "unknown";
}

RateClass classify_pair(const BoundKind& upper, const BoundKind& lower) {
    if (!upper.is_upper() || lower.is_upper())
        throw InvalidParameter("pair", "expected an upper kind and a lower kind");
    if (lower.tag == BoundTag::lower_thm5)
        return upper.tag == BoundTag::upper_cor2 ? RateClass::real_line : RateClass::general;
    if (upper.effective_a() == lower.effective_a()) return RateClass::matched_a;
    if (upper.effective_a() == 1.0 && lower.tag == BoundTag::lower_cor4) return RateClass::cor1_cor4_mix;
    return RateClass::general;
}

double rate_closed_form(const DistributionModel& model, double x, const BoundKind& upper, const BoundKind& lower) {
    const RateClass rc = classify_pair(upper, lower);
    const double anchor_l = bound_anchor(model, lower);
    const double anchor_u = bound_anchor(model, upper);
    const double y_l = x - anchor_l;
    const double y_u = upper.tag == BoundTag::upper_cor2 ? y_l : x - anchor_u;
    const double b = lower.b;
    const bool same_y = y_u == y_l;

    if (rc == RateClass::real_line || (rc == RateClass::matched_a && same_y)) return 1.0 / std::pow(y_l, b);
    const DensityJet j = model.jet(x);
    if (rc == RateClass::cor1_cor4_mix && same_y) {
        const double y = y_l;
        return (1.0 + std::pow(y, b)) / std::pow(y, b - 1.0) * j.d1 / (j.f + y * j.d1) - 1.0;
    }
    const double a_u = upper.effective_a();
    const double a_l = lower.effective_a();
    return (1.0 + std::pow(y_l, -b)) * (pow_neg(j.f, y_l, a_l) + j.d1) / (pow_neg(j.f, y_u, a_u) + j.d1) - 1.0;
}

double convergence_rate(const DistributionModel& model, double x, const BoundKind& upper, const BoundKind& lower) {
    classify_pair(upper, lower);
    BoundValue up;
    BoundValue low;
    try {
        up = upper_bound(model, x, upper);
        low = lower_bound(model, x, lower);
    } catch (const PreconditionError& e) {
        throw PairingError(std::string("pair not evaluable: ") + e.what());
    } catch (const SingularDenominator& e) {
        throw PairingError(std::string("pair not evaluable: ") + e.what());
    }
    if (!up.valid) throw PairingError(upper.label() + " is not valid at x = " + std::to_string(x));
    if (!low.valid) throw PairingError(lower.label() + " is not valid at x = " + std::to_string(x));
    if (!(low.value > 0.0)) throw PairingError("lower bound is not positive at x = " + std::to_string(x));
    return up.value / low.value - 1.0;
}

RateBoundCheck rate_bound_check(const DistributionModel& model, double x, const BoundKind& upper,
                                const BoundKind& lower) {
    RateBoundCheck out;
    out.r = convergence_rate(model, x, upper, lower);
    const double up = upper_bound(model, x, upper).value;
    const double low = lower_bound(model, x, lower).value;
    const double tail = true_tail(model, x).value;
    out.upper_side = up / tail - 1.0;
    out.lower_side = tail / low - 1.0;
    out.holds = std::max(out.upper_side, out.lower_side) <= out.r + 1e-12;
    return out;
}

PairingReport make_pairing(const DistributionModel& model, const BoundKind& upper, const BoundKind& lower,
                           double lo, double hi, const PairingOptions& opts) {
    PairingReport report;
    report.upper = upper;
    report.lower = lower;
    report.rate_class = classify_pair(upper, lower);
    report.joint_region = joint_region(model, {upper, lower}, lo, hi, opts.n_grid);
    report.cascade_step = "explicit";
    for (double x : GridSpec{lo, hi, opts.n_samples}.points()) {
        try {
            report.samples.push_back({x, convergence_rate(model, x, upper, lower)});
        } catch (const Error&) {
            // not jointly valid here
        }
    }
    return report;
}

PairingReport select_pair(const DistributionModel& model, double lo, double hi, const PairingOptions& opts) {
    if (!(lo < hi)) throw InvalidParameter("x_range", "lo must be < hi");
    if (model.support().upper_finite())
        throw PairingError("right-tail pairing needs support extending to +inf");

    std::vector<std::string> diag;
    auto attempt = [&](const BoundKind& up, const BoundKind& low, const std::string& step) {
        PairingReport rep = make_pairing(model, up, low, lo, hi, opts);
        rep.cascade_step = step;
        return rep;
    };
    auto note = [&](const PairingReport& rep, const std::string& why) {
        diag.push_back(rep.cascade_step + " " + rep.upper.label() + " + " + rep.lower.label() + ": " + why +
                       " (joint coverage " + percent(rep.joint_region.coverage()) + ")");
    };
    auto finish = [&](PairingReport rep) {
        rep.diagnostics = diag;
        return rep;
    };
    const double mid = 0.5 * (lo + hi);

    if (!model.support().lower_finite()) {
        if (!model.mean()) throw PairingError("real-line pairing needs the mean");
        PairingReport first = attempt(BoundKind::cor2(), BoundKind::thm5(1.0), "real_line_b1");
        if (first.joint_region.coverage() >= opts.min_coverage) return finish(first);
        note(first, "coverage below threshold");
        for (double b : kBCandidates) {
            PairingReport rep = attempt(BoundKind::cor2(), BoundKind::thm5(b), "real_line_candidate_b");
            if (!rep.joint_region.empty()) return finish(rep);
            note(rep, "empty joint region");
        }
        try {
            const OptimizedParam ob = optimize_b_real_line(model, mid);
            if (ob.achieved_by == AchievedBy::root_of_equality) {
                PairingReport rep = attempt(BoundKind::cor2(), BoundKind::thm5(ob.value), "real_line_optimized_b");
                if (!rep.joint_region.empty()) return finish(rep);
                note(rep, "empty joint region");
            } else {
                diag.push_back("real_line_optimized_b: " + ob.diagnostic);
            }
        } catch (const Error& e) {
            diag.push_back(std::string("real_line_optimized_b: ") + e.what());
        }
    } else {
        PairingReport step1 = attempt(BoundKind::cor2(), BoundKind::cor4(1.0), "cor2_cor4_b1");
        if (step1.joint_region.coverage() >= opts.min_coverage) return finish(step1);
        note(step1, "coverage below threshold");

        PairingReport step2 = attempt(BoundKind::cor1(), BoundKind::cor3(1.0), "cor1_cor3_b1");
        if (step2.joint_region.coverage() >= opts.min_coverage) return finish(step2);
        note(step2, "coverage below threshold");

        std::optional<PairingReport> step3;
        for (double b : kBCandidates) {
            PairingReport rep = attempt(BoundKind::cor1(), BoundKind::cor3(b), "cor1_cor3_candidate_b");
            if (!rep.joint_region.empty()) {
                step3 = std::move(rep);
                break;
            }
            note(rep, "empty joint region");
        }
        std::optional<PairingReport> step4;
        {
            PairingReport rep = attempt(BoundKind::cor1(), BoundKind::cor4(1.0), "cor1_cor4_b1");
            if (!rep.joint_region.empty()) step4 = std::move(rep);
            else note(rep, "empty joint region");
        }
        if (step3 && step4) {
            const double r3 = raw_rate(model, mid, step3->upper, step3->lower);
            const double r4 = raw_rate(model, mid, step4->upper, step4->lower);
            std::ostringstream why;
            why.precision(6);
            why << "midpoint R " << r3 << " (cor3) vs " << r4 << " (cor4)";
            diag.push_back(why.str());
            return finish(r4 < r3 ? *step4 : *step3);
        }
        if (step3) return finish(*step3);
        if (step4) return finish(*step4);

        try {
            const OptimizedParam oa = optimize_a(model, mid);
            if (oa.achieved_by == AchievedBy::fallback_none) {
                diag.push_back("optimized_thm2_thm4: " + oa.diagnostic);
            } else {
                const OptimizedParam ob = optimize_b_semibounded(model, mid, oa.value);
                if (ob.achieved_by == AchievedBy::fallback_none) {
                    diag.push_back("optimized_thm2_thm4: " + ob.diagnostic);
                } else {
                    const bool limit = std::isinf(oa.value);
                    const BoundKind up = limit ? BoundKind::cor2() : BoundKind::thm2(oa.value);
                    const BoundKind low = limit ? BoundKind::cor4(ob.value) : BoundKind::thm4(oa.value, ob.value);
                    PairingReport rep = attempt(up, low, "optimized_thm2_thm4");
                    if (!rep.joint_region.empty()) return finish(rep);
                    note(rep, "empty joint region");
                }
            }
        } catch (const Error& e) {
            diag.push_back(std::string("optimized_thm2_thm4: ") + e.what());
        }
    }

    std::string message = "no feasible upper/lower pair on the range";
    for (const auto& d : diag) message += "\n  " + d;
    throw PairingError(message);
}

}  // namespace tailbound
