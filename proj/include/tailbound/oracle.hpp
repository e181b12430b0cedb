#pragma once

#include "tailbound/distributions.hpp"
#include "tailbound/quadrature.hpp"

#include <string_view>
#include <vector>

namespace tailbound {

struct PairingReport;

enum class TailMethod { closed_form, quadrature, series };

std::string_view tail_method_name(TailMethod method);

struct TailValue {
    double value = 0.0;
    TailMethod method = TailMethod::closed_form;
    double abs_error_estimate = 0.0;
};

/// Ground-truth P(X >= x). Uses the model's cancellation-safe closed-form tail
/// when present (the noncentral chi-square tail is the Marcum-Q series),
/// otherwise adaptive quadrature of the density over [x, inf). Throws
/// DomainError outside the support and OracleError when quadrature does not
/// converge within the panel budget.
TailValue true_tail(const DistributionModel& model, double x);

/// Always integrates the density over [x, inf).
TailValue quadrature_tail(const DistributionModel& model, double x,
                          const quad::QuadOptions& opts = quad::default_options());

/// Integral of the density over (lower, x].
TailValue quadrature_cdf(const DistributionModel& model, double x,
                         const quad::QuadOptions& opts = quad::default_options());

/// P(X <= x): closed-form CDF when present, quadrature otherwise.
double cdf_value(const DistributionModel& model, double x);

/// Generalized Marcum Q function Q_m(a, b), m >= 1/2.
double marcum_q(double order_m, double a_param, double b_param);

/// Uniform grid of n points on [lo, hi] (n = 1 gives {lo}).
struct GridSpec {
    double lo = 0.0;
    double hi = 1.0;
    int n = 200;

    std::vector<double> points() const;
};

struct AuditPoint {
    double x = 0.0;
    double lower = 0.0;
    double tail = 0.0;
    double upper = 0.0;
    bool lower_ok = true;  // lower - slack <= tail
    bool upper_ok = true;  // tail <= upper + slack
};

struct AuditReport {
    std::vector<AuditPoint> points;  // jointly valid grid points only
    std::vector<double> skipped;     // grid points where the pair is not jointly valid
    std::vector<double> violations;  // x of points failing either side
    double slack = 1e-12;

    bool clean() const { return violations.empty(); }
};

/// Checks lower - slack <= tail <= upper + slack at every grid point where both
/// bounds of the pair are valid. Violations are reported, never thrown.
AuditReport sandwich_audit(const DistributionModel& model, const PairingReport& pair, const GridSpec& grid,
                           double slack = 1e-12);

}  // namespace tailbound
