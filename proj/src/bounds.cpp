#include "tailbound/bounds.hpp"

#include "formulas.hpp"
#include "tailbound/errors.hpp"
#include "tailbound/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace tailbound {

namespace {

constexpr double kSingular = 1e-300;
constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;

void require_interior(const DistributionModel& model, double x) {
    if (!model.support().contains_strictly(x))
        throw DomainError("x = " + std::to_string(x) + " is not strictly inside the support of " + model.name());
}

/// Shared evaluation of the upper expression for any kind (lower kinds reuse
/// it with their effective a).
double raw_upper(const DensityJet& j, double y, double a, const BoundKind& kind, bool& underflow) {
    if (j.f == 0.0 || j.f * j.f == 0.0) {
        underflow = true;
        return 0.0;
    }
    const double den = detail::upper_denominator(j, y, a);
    const double scale = (std::isinf(a) || !(y > 1.0)) ? 1.0 : std::pow(y, a);
    if (den == 0.0 || std::abs(den) * scale < kSingular)
        throw SingularDenominator(kind.label() + ": denominator vanishes at x");
    return detail::upper_value(j, y, a);
}

double log_weight(double y, double b) { return -std::log1p(std::pow(y, -b)); }

}  // namespace

double shifted_coordinate(double x, double x0) { return x - x0; }

BoundValue upper_bound(const DistributionModel& model, double x, const BoundKind& kind) {
    if (!kind.is_upper()) throw InvalidParameter("kind", kind.label() + " is not an upper bound");
    require_interior(model, x);
    const double anchor = bound_anchor(model, kind);
    const double y = kind.tag == BoundTag::upper_cor2 ? detail::kNaN : shifted_coordinate(x, anchor);
    const DensityJet j = model.jet(x);

    BoundValue out;
    out.value = raw_upper(j, y, kind.effective_a(), kind, out.underflow);
    out.condition_report = evaluate_conditions(model, x, kind);
    out.valid = out.condition_report.all_satisfied;
    return out;
}

BoundValue lower_bound(const DistributionModel& model, double x, const BoundKind& kind) {
    if (kind.is_upper()) throw InvalidParameter("kind", kind.label() + " is not a lower bound");
    require_interior(model, x);
    const double anchor = bound_anchor(model, kind);
    if (kind.tag == BoundTag::lower_thm5 && !(x > anchor))
        throw PreconditionError("x_gt_mean", "thm5 needs x > mean");
    const double y = shifted_coordinate(x, anchor);
    const DensityJet j = model.jet(x);

    BoundValue out;
    out.value = detail::lower_weight(y, kind.b) * raw_upper(j, y, kind.effective_a(), kind, out.underflow);
    out.condition_report = evaluate_conditions(model, x, kind);
    out.valid = out.condition_report.all_satisfied;
    return out;
}

BoundValue evaluate_bound(const DistributionModel& model, double x, const BoundKind& kind) {
    return kind.is_upper() ? upper_bound(model, x, kind) : lower_bound(model, x, kind);
}

double closed_form_bound(const CatalogEntry& entry, double x, Side side, double b) {
    if (!(b > 0.0) || !std::isfinite(b)) throw InvalidParameter("b", "must be finite and > 0");
    const bool lower = side == Side::lower;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    switch (entry.family) {
        case Family::gaussian: {
            const double mu = entry.param("mu");
            const double sigma = entry.param("sigma");
            if (!(x > mu)) throw RegionError(mu, "gaussian closed form needs x > mu");
            const double y = x - mu;
            double log_v = std::log(sigma) - kLogSqrt2Pi - std::log(y) - 0.5 * y * y / (sigma * sigma);
            if (lower) log_v += log_weight(y, b);
            return std::exp(log_v);
        }
        case Family::chi_square_central: {
            const double k = entry.param("k");
            if (k < 2.0) throw RegionError(2.0, "chi-square closed form needs k >= 2");
            if (!(x > k - 2.0)) throw RegionError(k - 2.0, "chi-square closed form needs x > k - 2");
            const double half_k = 0.5 * k;
            double log_v = (1.0 - half_k) * std::numbers::ln2 + half_k * std::log(x) - 0.5 * x -
                           std::lgamma(half_k) - std::log(x + 2.0 - k);
            if (lower) log_v += log_weight(x, b);
            return std::exp(log_v);
        }
        case Family::chi_square_noncentral: {
            const double k = entry.param("k");
            const double lambda = entry.param("lambda");
            if (lambda == 0.0)
                return closed_form_bound(CatalogEntry::chi_square_central(k), x, side, b);
            if (k < 2.0) throw RegionError(2.0, "noncentral chi-square closed form needs k >= 2");
            const double nu = 0.5 * k - 1.0;
            const double s = std::sqrt(lambda * x);
            const double ratio = special::bessel_i_ratio(nu, s);
            // (k - x - 2) I_nu + s I_{k/2} = I_nu * (k - x - 2 + s * ratio)
            const double reduced = k - x - 2.0 + s * ratio;
            if (!(reduced < 0.0))
                throw RegionError(nan, "noncentral chi-square closed form needs a negative denominator");
            const double log_i = special::bessel_i_scaled(nu, s).log_value;
            double log_v = std::log(s) + 0.25 * k * std::log(x / lambda) + log_i - 0.5 * lambda - 0.5 * x -
                           std::log(-reduced);
            if (lower) log_v += log_weight(x, b);
            return std::exp(log_v);
        }
        case Family::gaussian_squared: {
            const double sigma = entry.param("sigma");
            const double mu = entry.param("mu");
            const double var = sigma * sigma;
            if (!(x > 0.0)) throw RegionError(0.0, "gaussian-squared closed form needs x > 0");
            const double t = std::sqrt(x);
            const double m = std::abs(mu);
            // e^{-(t+mu)^2/2s^2} (e^{2 mu t/s^2} + 1) = e^{-(t-m)^2/2s^2} (1 + e^{-2 m t/s^2})
            const double log_mix = -0.5 * (t - m) * (t - m) / var + std::log1p(std::exp(-2.0 * m * t / var));
            const double drift = mu * t * std::tanh(mu * t / var);
            const double upper_den = x - var - drift;
            if (!(upper_den > 0.0))
                throw RegionError(nan, "gaussian-squared closed form needs x - s^2 - mu t tanh(mu t/s^2) > 0");
            const double log_front = std::log(sigma) + std::log(t) - kLogSqrt2Pi + log_mix;
            if (!lower) return std::exp(log_front - std::log(upper_den));
            const double lower_den = x + var - drift;
            if (!(lower_den > 0.0))
                throw RegionError(nan, "gaussian-squared lower closed form needs x + s^2 - mu t tanh(mu t/s^2) > 0");
            return std::exp(log_front - std::log(lower_den) + log_weight(x, b));
        }
        case Family::beta_prime: {
            const double alpha = entry.param("alpha");
            const double beta = entry.param("beta");
            if (!(x > alpha / beta)) throw RegionError(alpha / beta, "beta-prime closed form needs x > alpha/beta");
            double log_v = alpha * std::log(x) + (1.0 - alpha - beta) * std::log1p(x) -
                           special::log_beta(alpha, beta) - std::log(beta * x - alpha);
            if (lower) log_v += log_weight(x, b);
            return std::exp(log_v);
        }
    }
    throw InvalidParameter("family", "unknown family");
}

BoundKind closed_form_counterpart(const CatalogEntry& entry, Side side, double b) {
    const bool upper = side == Side::upper;
    switch (entry.family) {
        case Family::gaussian: return upper ? BoundKind::cor2() : BoundKind::thm5(b);
        case Family::chi_square_central:
        case Family::chi_square_noncentral: return upper ? BoundKind::cor2() : BoundKind::cor4(b);
        case Family::gaussian_squared: return upper ? BoundKind::thm1(1.0) : BoundKind::cor4(b);
        case Family::beta_prime: return upper ? BoundKind::cor1() : BoundKind::cor3(b);
    }
    throw InvalidParameter("family", "unknown family");
}

}  // namespace tailbound
