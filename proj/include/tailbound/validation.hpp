#pragma once

#include "tailbound/bound_kind.hpp"
#include "tailbound/distributions.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace tailbound {

enum class Verdict { pass, fail, skipped };

std::string_view verdict_name(Verdict verdict);

struct ValidationDiagnostic {
    std::string name;
    std::vector<double> x_samples;
    std::vector<double> values;
    Verdict verdict = Verdict::skipped;
    std::string detail;
};

/// Upper deficit F(x) + P_U(x) - 1 = P_U(x) - P(X >= x), formed from the
/// oracle tail so no 1 - F cancellation occurs. Non-negative wherever the
/// kind's conditions hold.
double deficit_upper(const DistributionModel& model, double x, const BoundKind& kind);

/// Shorthand for deficit_upper with thm1(a) (support starting at 0) or cor2
/// when a is +inf. Throws PreconditionError if the lower endpoint is not 0
/// and a is finite.
double deficit_upper(const DistributionModel& model, double x, double a);

/// Lower deficit P_L(x) - P(X >= x); non-positive wherever the conditions hold.
double deficit_lower(const DistributionModel& model, double x, const BoundKind& kind);

/// Shorthand for deficit_lower with thm3(a, b), or cor4(b) when a is +inf.
double deficit_lower(const DistributionModel& model, double x, double a, double b);

/// Samples the kind's deficit at n uniform points of [lo, hi] where the kind
/// is valid. Upper kinds pass when the samples are non-increasing, all
/// >= -1e-10, and the last is <= first * 1e-2 + 1e-10. Lower kinds mirror this
/// (non-decreasing, <= 1e-10, magnitude decaying the same way). Each step may
/// move against the expected direction by at most 1e-12 (|bound| + |tail|).
/// Throws PreconditionError when lo >= hi or no sampled point is valid.
ValidationDiagnostic monotonicity_audit(const DistributionModel& model, const BoundKind& kind, double lo, double hi,
                                        int n = 200);

/// |F(x) - x f(x) + G(x)| with G(x) = integral_0^x t f'(t) dt by quadrature.
/// Throws PreconditionError unless the support starts at 0.
double integration_by_parts_check(const DistributionModel& model, double x);

/// Compares the sign of the closed derivative of the deficit (the master lhs
/// times its positive prefactor) with a central difference of the deficit at
/// n uniform points of [lo, hi]. Points where either side is within numerical
/// noise of zero are skipped.
ValidationDiagnostic derivative_sign_check(const DistributionModel& model, const BoundKind& kind, double lo,
                                           double hi, int n = 32);

/// Closed deficit derivative used by derivative_sign_check.
double deficit_derivative(const DistributionModel& model, double x, const BoundKind& kind);

/// Finds the smallest sampled x0 from which both cor2 conditions hold at every
/// later sample of n uniform points on [lo, hi]. Passes when such an x0 exists.
/// Throws PreconditionError unless the support is the whole real line.
ValidationDiagnostic probe_conjecture_real_line(const DistributionModel& model, double lo, double hi, int n = 500);

/// At 16 points of [lo, hi] records the gap thm2(a) - tail for feasible
/// a in {1/2, 3/4, 1, 3/2, 2, 4}; passes when a = 1 has the smallest gap at
/// the largest sampled x. Skipped unless the support lower endpoint is finite
/// and some sampled x has cor1 holding while the cor2 curvature condition fails.
ValidationDiagnostic probe_conjecture_optimal_a(const DistributionModel& model, double lo, double hi);

/// Runs the whole suite for a catalog model: deficit audits, integration by
/// parts (support starting at 0), derivative sign checks and the conjecture probes.
std::vector<ValidationDiagnostic> run_validation_suite(const DistributionModel& model);

/// True when no diagnostic failed.
bool suite_passes(const std::vector<ValidationDiagnostic>& diagnostics);

}  // namespace tailbound
