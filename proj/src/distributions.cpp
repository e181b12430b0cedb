#include "tailbound/distributions.hpp"

#include "tailbound/errors.hpp"
#include "tailbound/quadrature.hpp"
#include "tailbound/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace tailbound {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;

std::string format_params(const std::vector<Param>& params) {
    std::ostringstream out;
    out.precision(17);
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out << ',';
        out << params[i].name << '=' << params[i].value;
    }
    return out.str();
}

void require_finite(const CatalogEntry& e, std::string_view name) {
    const double v = e.param(name);
    if (!std::isfinite(v)) throw InvalidParameter(std::string(name), "must be finite");
}

void require_positive(const CatalogEntry& e, std::string_view name) {
    require_finite(e, name);
    if (!(e.param(name) > 0.0)) throw InvalidParameter(std::string(name), "must be > 0");
}

void require_dof(const CatalogEntry& e) {
    const double k = e.param("k");
    if (!std::isfinite(k) || k < 1.0 || std::floor(k) != k)
        throw InvalidParameter("k", "degrees of freedom must be an integer >= 1");
}

DistributionModel make_gaussian(const CatalogEntry& e) {
    require_finite(e, "mu");
    require_positive(e, "sigma");
    const double mu = e.param("mu");
    const double sigma = e.param("sigma");
    auto jet = [mu, sigma](double x) {
        const double z = (x - mu) / sigma;
        const double f = std::exp(-0.5 * z * z - kLogSqrt2Pi) / sigma;
        return DensityJet{f, -z / sigma * f, (z * z - 1.0) / (sigma * sigma) * f};
    };
    auto cdf = [mu, sigma](double x) { return special::normal_cdf((x - mu) / sigma); };
    auto tail = [mu, sigma](double x) { return special::normal_tail((x - mu) / sigma); };
    return DistributionModel("gaussian", e.params, jet, SupportSpec{}, mu, cdf, tail);
}

// Central chi-square; also serves the lambda = 0 noncentral case.
DistributionModel make_chi_square(const CatalogEntry& e, double k, std::string name) {
    const double half_k = 0.5 * k;
    const double nu_minus = half_k - 1.0;
    const double log_norm = -half_k * std::numbers::ln2 - std::lgamma(half_k);
    auto jet = [nu_minus, log_norm](double x) {
        const double log_x_term = nu_minus == 0.0 ? 0.0 : nu_minus * std::log(x);
        const double f = std::exp(log_norm + log_x_term - 0.5 * x);
        const double g = nu_minus / x - 0.5;
        const double g_prime = -nu_minus / (x * x);
        return DensityJet{f, g * f, (g * g + g_prime) * f};
    };
    auto cdf = [half_k](double x) { return special::lower_reg_gamma(half_k, 0.5 * x); };
    auto tail = [half_k](double x) { return special::upper_reg_gamma(half_k, 0.5 * x); };
    SupportSpec support{0.0, k < 2.0, kInf, true};
    return DistributionModel(std::move(name), e.params, jet, support, k, cdf, tail);
}

DistributionModel make_noncentral_chi_square(const CatalogEntry& e) {
    require_dof(e);
    require_finite(e, "lambda");
    const double k = e.param("k");
    const double lambda = e.param("lambda");
    if (lambda < 0.0) throw InvalidParameter("lambda", "noncentrality must be >= 0");
    if (lambda == 0.0) return make_chi_square(e, k, "chi_square_noncentral");

    const double nu = 0.5 * k - 1.0;
    const double sqrt_lambda = std::sqrt(lambda);
    auto jet = [nu, lambda, sqrt_lambda](double x) {
        // log f = -ln 2 - (x + lambda)/2 + (nu/2) ln(x/lambda) + ln I_nu(sqrt(lambda x))
        const double s = std::sqrt(lambda * x);
        const auto bessel = special::bessel_i_scaled(nu, s);
        const double log_f =
            -std::numbers::ln2 - 0.5 * (x + lambda) + 0.5 * nu * std::log(x / lambda) + bessel.log_value;
        const double f = std::exp(log_f);
        const double r = special::bessel_i_ratio(nu, s);
        const double sqrt_x = std::sqrt(x);
        const double g = -0.5 + nu / x + r * sqrt_lambda / (2.0 * sqrt_x);
        const double r_prime = 1.0 - r * r - (2.0 * nu + 1.0) * r / s;
        const double g_prime =
            -nu / (x * x) + r_prime * lambda / (4.0 * x) - r * sqrt_lambda / (4.0 * x * sqrt_x);
        return DensityJet{f, g * f, (g * g + g_prime) * f};
    };
    const double order = 0.5 * k;
    auto tail = [order, sqrt_lambda](double x) {
        return special::marcum_q(order, sqrt_lambda, std::sqrt(std::max(x, 0.0)));
    };
    auto cdf = [tail](double x) { return 1.0 - tail(x); };
    SupportSpec support{0.0, k < 2.0, kInf, true};
    return DistributionModel("chi_square_noncentral", e.params, jet, support, k + lambda, cdf, tail);
}

DistributionModel make_gaussian_squared(const CatalogEntry& e) {
    require_positive(e, "sigma");
    require_finite(e, "mu");
    const double sigma = e.param("sigma");
    const double mu = e.param("mu");
    const double var = sigma * sigma;
    // f(x) = h(t) / (2t), t = sqrt(x), h(t) = phi_s(t + mu) + phi_s(t - mu).
    auto jet = [mu, sigma, var](double x) {
        const double t = std::sqrt(x);
        const double up = t + mu;
        const double dn = t - mu;
        const double pu = std::exp(-0.5 * up * up / var - kLogSqrt2Pi) / sigma;
        const double pd = std::exp(-0.5 * dn * dn / var - kLogSqrt2Pi) / sigma;
        const double h = pu + pd;
        const double h1 = -(up * pu + dn * pd) / var;
        const double h2 = ((up * up / var - 1.0) * pu + (dn * dn / var - 1.0) * pd) / var;
        const double m = h / (2.0 * t);
        const double m1 = h1 / (2.0 * t) - h / (2.0 * t * t);
        const double m2 = h2 / (2.0 * t) - h1 / (t * t) + h / (t * t * t);
        return DensityJet{m, m1 / (2.0 * t), (m2 * t - m1) / (4.0 * t * t * t)};
    };
    auto tail = [mu, sigma](double x) {
        const double t = std::sqrt(std::max(x, 0.0));
        return special::normal_tail((t - mu) / sigma) + special::normal_tail((t + mu) / sigma);
    };
    auto cdf = [mu, sigma](double x) {
        const double t = std::sqrt(std::max(x, 0.0));
        const double c = sigma * std::numbers::sqrt2;
        return 0.5 * (std::erfc((-t - mu) / c) - std::erfc((t - mu) / c));
    };
    SupportSpec support{0.0, true, kInf, true};
    return DistributionModel("gaussian_squared", e.params, jet, support, var + mu * mu, cdf, tail);
}

DistributionModel make_beta_prime(const CatalogEntry& e) {
    require_positive(e, "alpha");
    require_positive(e, "beta");
    const double alpha = e.param("alpha");
    const double beta = e.param("beta");
    const double log_b = special::log_beta(alpha, beta);
    auto jet = [alpha, beta, log_b](double x) {
        const double f = std::exp((alpha - 1.0) * std::log(x) - (alpha + beta) * std::log1p(x) - log_b);
        const double g = (alpha - 1.0) / x - (alpha + beta) / (1.0 + x);
        const double g_prime = -(alpha - 1.0) / (x * x) + (alpha + beta) / ((1.0 + x) * (1.0 + x));
        return DensityJet{f, g * f, (g * g + g_prime) * f};
    };
    auto cdf = [alpha, beta](double x) {
        if (x <= 0.0) return 0.0;
        return special::reg_inc_beta(alpha, beta, x / (1.0 + x));
    };
    // 1 - I_{x/(1+x)}(a, b) = I_{1/(1+x)}(b, a); the second form keeps precision for large x.
    auto tail = [alpha, beta](double x) {
        if (x <= 0.0) return 1.0;
        return special::reg_inc_beta(beta, alpha, 1.0 / (1.0 + x));
    };
    std::optional<double> mean;
    if (beta > 1.0) mean = alpha / (beta - 1.0);
    SupportSpec support{0.0, alpha < 1.0, kInf, true};
    return DistributionModel("beta_prime", e.params, jet, support, mean, cdf, tail);
}

}  // namespace

std::string_view family_name(Family family) {
    switch (family) {
        case Family::gaussian: return "gaussian";
        case Family::chi_square_central: return "chi_square_central";
        case Family::chi_square_noncentral: return "chi_square_noncentral";
        case Family::gaussian_squared: return "gaussian_squared";
        case Family::beta_prime: return "beta_prime";
    }
    return "unknown";
}

std::optional<Family> parse_family(std::string_view text) {
    if (text == "gaussian" || text == "normal") return Family::gaussian;
    if (text == "chi_square_central" || text == "chi2" || text == "chi-square") return Family::chi_square_central;
    if (text == "chi_square_noncentral" || text == "chi2-nc" || text == "ncchi2" || text == "noncentral-chi2")
        return Family::chi_square_noncentral;
    if (text == "gaussian_squared" || text == "gaussian-squared") return Family::gaussian_squared;
    if (text == "beta_prime" || text == "beta-prime") return Family::beta_prime;
    return std::nullopt;
}

CatalogEntry CatalogEntry::gaussian(double mu, double sigma) {
    return {Family::gaussian, {{"mu", mu}, {"sigma", sigma}}};
}
CatalogEntry CatalogEntry::chi_square_central(double k) { return {Family::chi_square_central, {{"k", k}}}; }
CatalogEntry CatalogEntry::chi_square_noncentral(double k, double lambda) {
    return {Family::chi_square_noncentral, {{"k", k}, {"lambda", lambda}}};
}
CatalogEntry CatalogEntry::gaussian_squared(double sigma, double mu) {
    return {Family::gaussian_squared, {{"sigma", sigma}, {"mu", mu}}};
}
CatalogEntry CatalogEntry::beta_prime(double alpha, double beta) {
    return {Family::beta_prime, {{"alpha", alpha}, {"beta", beta}}};
}

double CatalogEntry::param(std::string_view name) const {
    for (const auto& p : params)
        if (p.name == name) return p.value;
    throw InvalidParameter(std::string(name), "missing for family " + std::string(family_name(family)));
}

DistributionModel::DistributionModel(std::string name, std::vector<Param> params, JetFn jet,
                                     SupportSpec support, std::optional<double> mean, ScalarFn cdf,
                                     ScalarFn tail)
    : name_(std::move(name)),
      params_(std::move(params)),
      jet_(std::move(jet)),
      support_(support),
      mean_(mean),
      cdf_(std::move(cdf)),
      tail_(std::move(tail)) {}

double DistributionModel::cdf_closed_form(double x) const {
    if (!cdf_) throw PreconditionError("cdf_closed_form", "model '" + name_ + "' has no closed-form CDF");
    return cdf_(x);
}

double DistributionModel::tail_closed_form(double x) const {
    if (!tail_) throw PreconditionError("tail_closed_form", "model '" + name_ + "' has no closed-form tail");
    return tail_(x);
}

DistributionModel DistributionModel::with_mean(double mean) const {
    DistributionModel copy = *this;
    copy.mean_ = mean;
    return copy;
}

DistributionModel DistributionModel::with_catalog_entry(CatalogEntry entry) const {
    DistributionModel copy = *this;
    copy.entry_ = std::move(entry);
    return copy;
}

DistributionModel make_catalog_distribution(const CatalogEntry& entry) {
    DistributionModel model = [&] {
        switch (entry.family) {
            case Family::gaussian: return make_gaussian(entry);
            case Family::chi_square_central:
                require_dof(entry);
                return make_chi_square(entry, entry.param("k"), "chi_square_central");
            case Family::chi_square_noncentral: return make_noncentral_chi_square(entry);
            case Family::gaussian_squared: return make_gaussian_squared(entry);
            case Family::beta_prime: return make_beta_prime(entry);
        }
        throw InvalidParameter("family", "unknown family");
    }();
    model.name_ = std::string(family_name(entry.family)) + "(" + format_params(entry.params) + ")";
    return model.with_catalog_entry(entry);
}

std::vector<CatalogEntry> catalog_scenarios() {
    return {
        CatalogEntry::gaussian(0.0, 1.0),
        CatalogEntry::gaussian(-1.7, 1.9),
        CatalogEntry::chi_square_central(2.0),
        CatalogEntry::chi_square_central(3.0),
        CatalogEntry::chi_square_central(6.0),
        CatalogEntry::chi_square_central(10.0),
        CatalogEntry::chi_square_noncentral(6.0, 1.2),
        CatalogEntry::gaussian_squared(1.5, 0.0),
        CatalogEntry::gaussian_squared(1.5, -1.2),
        CatalogEntry::beta_prime(2.1, 1.3),
    };
}

DistributionModel reflect(const DistributionModel& model) {
    auto jet = [inner = model.jet_](double x) {
        const DensityJet j = inner(-x);
        return DensityJet{j.f, -j.d1, j.d2};
    };
    const SupportSpec& s = model.support_;
    SupportSpec reflected{-s.upper, s.upper_open, -s.lower, s.lower_open};
    std::optional<double> mean;
    if (model.mean_) mean = -*model.mean_;
    DistributionModel::ScalarFn cdf;
    DistributionModel::ScalarFn tail;
    // P(-X <= x) = P(X >= -x) and P(-X >= x) = P(X <= -x).
    if (model.tail_) cdf = [t = model.tail_](double x) { return t(-x); };
    if (model.cdf_) tail = [c = model.cdf_](double x) { return c(-x); };
    std::string name = model.name_.rfind("reflected(", 0) == 0 && model.name_.back() == ')'
                           ? model.name_.substr(10, model.name_.size() - 11)
                           : "reflected(" + model.name_ + ")";
    DistributionModel out(std::move(name), model.params_, jet, reflected, mean, cdf, tail);
    return out;
}

DistributionModel with_quadrature_mean(const DistributionModel& model) {
    if (model.mean()) return model;
    const auto& s = model.support();
    auto integrand = [&model](double x) { return x * model.pdf(x); };
    const quad::QuadResult r = quad::integrate_any(integrand, s.lower, s.upper);
    if (!r.converged || !std::isfinite(r.value))
        throw OracleError("mean quadrature did not converge", r.value, r.abs_error);
    return model.with_mean(r.value);
}

namespace {

bool judge_sequence(AssumptionCheck& check) {
    std::vector<double> mags;
    for (const auto& s : check.samples)
        if (!s.skipped) mags.push_back(std::abs(s.value));
    if (mags.size() < 5) {
        check.detail = "fewer than 5 usable probe samples";
        return false;
    }
    for (std::size_t i = mags.size() - 4; i < mags.size(); ++i) {
        if (mags[i] > mags[i - 1]) {
            check.detail = "magnitude increases within the last five samples";
            return false;
        }
    }
    if (!(mags.back() < 1e-8 * mags.front()) && !(mags.front() == 0.0 && mags.back() == 0.0)) {
        std::ostringstream out;
        out.precision(6);
        out << "final magnitude " << mags.back() << " not below 1e-8 of first " << mags.front();
        check.detail = out.str();
        return false;
    }
    check.detail = "decays";
    return true;
}

}  // namespace

AssumptionReport check_assumptions(const DistributionModel& model, const AssumptionProbe& probe) {
    const SupportSpec& support = model.support();
    if (support.upper_finite())
        throw PreconditionError("right_unbounded_support", "assumption probes need an unbounded right tail");

    AssumptionReport report;
    report.tail_ratio.assumption = "f^2/f' -> 0 as x -> inf";
    report.lower_mass.assumption = "x f(x) -> 0 as x -> lower endpoint";

    const double base = support.lower_finite() ? std::max(support.lower, 0.0) : 0.0;
    double step = probe.tail_start;
    for (int i = 0; i < probe.tail_count; ++i, step *= probe.tail_ratio) {
        const double x = base + step;
        const DensityJet j = model.jet(x);
        const double v = j.f * j.f / j.d1;
        const bool skip = j.d1 == 0.0 || !std::isfinite(v);
        report.tail_ratio.samples.push_back({x, skip ? 0.0 : v, skip});
    }

    if (support.lower_finite()) {
        double off = probe.lower_start;
        for (int i = 0; i < probe.lower_count; ++i, off *= probe.lower_ratio) {
            const double x = support.lower + off;
            if (!(x > support.lower)) break;
            const double v = x * model.pdf(x);
            report.lower_mass.samples.push_back({x, std::isfinite(v) ? v : 0.0, !std::isfinite(v)});
        }
    } else {
        double off = probe.tail_start;
        for (int i = 0; i < probe.tail_count; ++i, off *= probe.tail_ratio) {
            const double x = -off;
            const double v = x * model.pdf(x);
            report.lower_mass.samples.push_back({x, std::isfinite(v) ? v : 0.0, !std::isfinite(v)});
        }
    }

    report.tail_ratio.pass = judge_sequence(report.tail_ratio);
    report.lower_mass.pass = judge_sequence(report.lower_mass);
    return report;
}

}  // namespace tailbound
