#include "tailbound/oracle.hpp"

#include "tailbound/bounds.hpp"
#include "tailbound/errors.hpp"
#include "tailbound/pairing.hpp"
#include "tailbound/special.hpp"

#include <algorithm>
#include <cmath>

namespace tailbound {

std::string_view tail_method_name(TailMethod method) {
    switch (method) {
        case TailMethod::closed_form: return "closed_form";
        case TailMethod::quadrature: return "quadrature";
        case TailMethod::series: return "series";
    }
    return "unknown";
}

TailValue quadrature_tail(const DistributionModel& model, double x, const quad::QuadOptions& opts) {
    auto pdf = [&model](double t) { return model.pdf(t); };
    const quad::QuadResult r = quad::integrate_upper(pdf, x, opts);
    if (!r.converged)
        throw OracleError("tail quadrature did not converge at x = " + std::to_string(x), r.value, r.abs_error);
    return {std::clamp(r.value, 0.0, 1.0), TailMethod::quadrature, r.abs_error};
}

TailValue quadrature_cdf(const DistributionModel& model, double x, const quad::QuadOptions& opts) {
    auto pdf = [&model](double t) { return model.pdf(t); };
    const SupportSpec& s = model.support();
    const quad::QuadResult r =
        s.lower_finite() ? quad::integrate(pdf, s.lower, x, opts) : quad::integrate_lower(pdf, x, opts);
    if (!r.converged)
        throw OracleError("cdf quadrature did not converge at x = " + std::to_string(x), r.value, r.abs_error);
    return {std::clamp(r.value, 0.0, 1.0), TailMethod::quadrature, r.abs_error};
}

TailValue true_tail(const DistributionModel& model, double x) {
    if (!model.support().contains_strictly(x))
        throw DomainError("x = " + std::to_string(x) + " is not strictly inside the support of " + model.name());
    if (model.has_tail_closed_form()) {
        const bool series = model.catalog_entry() &&
                            model.catalog_entry()->family == Family::chi_square_noncentral &&
                            model.catalog_entry()->param("lambda") > 0.0;
        const double v = std::clamp(model.tail_closed_form(x), 0.0, 1.0);
        return {v, series ? TailMethod::series : TailMethod::closed_form, series ? 1e-14 : 0.0};
    }
    return quadrature_tail(model, x);
}

double cdf_value(const DistributionModel& model, double x) {
    if (model.has_cdf_closed_form()) return model.cdf_closed_form(x);
    return quadrature_cdf(model, x).value;
}

double marcum_q(double order_m, double a_param, double b_param) {
    return special::marcum_q(order_m, a_param, b_param);
}

std::vector<double> GridSpec::points() const {
    if (n < 1) throw InvalidParameter("n", "grid needs at least one point");
    std::vector<double> xs(n);
    if (n == 1) {
        xs[0] = lo;
        return xs;
    }
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) xs[i] = i == n - 1 ? hi : lo + i * step;
    return xs;
}

AuditReport sandwich_audit(const DistributionModel& model, const PairingReport& pair, const GridSpec& grid,
                           double slack) {
    AuditReport report;
    report.slack = slack;
    for (double x : grid.points()) {
        if (!model.support().contains_strictly(x)) {
            report.skipped.push_back(x);
            continue;
        }
        BoundValue up;
        BoundValue low;
        try {
            up = upper_bound(model, x, pair.upper);
            low = lower_bound(model, x, pair.lower);
        } catch (const Error&) {
            report.skipped.push_back(x);
            continue;
        }
        if (!up.valid || !low.valid) {
            report.skipped.push_back(x);
            continue;
        }
        AuditPoint p;
        p.x = x;
        p.upper = up.value;
        p.lower = low.value;
        p.tail = true_tail(model, x).value;
        p.lower_ok = p.lower - slack <= p.tail;
        p.upper_ok = p.tail <= p.upper + slack;
        if (!p.lower_ok || !p.upper_ok) report.violations.push_back(x);
        report.points.push_back(p);
    }
    return report;
}

}  // namespace tailbound
