#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tailbound {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Density and its first two derivatives at one point.
struct DensityJet {
    double f = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Support of a density. Bound formulas only ever need the lower endpoint; the
/// upper endpoint exists so that reflected (right-bounded) models can be described
/// and rejected by the right-tail machinery.
struct SupportSpec {
    double lower = -kInf;
    bool lower_open = true;
    double upper = kInf;
    bool upper_open = true;

    bool lower_finite() const { return lower > -kInf; }
    bool upper_finite() const { return upper < kInf; }
    /// Openness is metadata only: evaluation always happens strictly inside.
    bool contains_strictly(double x) const { return x > lower && x < upper; }
};

enum class Family { gaussian, chi_square_central, chi_square_noncentral, gaussian_squared, beta_prime };

/// Canonical name used in reports ("gaussian", "chi_square_central", ...).
std::string_view family_name(Family family);

/// Accepts canonical names and CLI aliases (chi2, chi2-nc, gaussian-squared, beta-prime, ...).
std::optional<Family> parse_family(std::string_view text);

struct Param {
    std::string name;
    double value;
};

/// A catalog family plus its parameters. Factories do not validate;
/// make_catalog_distribution does.
struct CatalogEntry {
    Family family;
    std::vector<Param> params;

    static CatalogEntry gaussian(double mu, double sigma);
    static CatalogEntry chi_square_central(double k);
    static CatalogEntry chi_square_noncentral(double k, double lambda);
    static CatalogEntry gaussian_squared(double sigma, double mu);
    static CatalogEntry beta_prime(double alpha, double beta);

    /// Value of a named parameter; throws InvalidParameter if absent.
    double param(std::string_view name) const;
};

/// Immutable continuous distribution: density jet, support and optional
/// analytic extras. Copies share nothing mutable, so models are safe to share
/// across threads.
class DistributionModel {
public:
    using JetFn = std::function<DensityJet(double)>;
    using ScalarFn = std::function<double(double)>;

    DistributionModel(std::string name, std::vector<Param> params, JetFn jet, SupportSpec support,
                      std::optional<double> mean = std::nullopt, ScalarFn cdf = {},
                      ScalarFn tail = {});

    const std::string& name() const { return name_; }
    const std::vector<Param>& params() const { return params_; }
    const SupportSpec& support() const { return support_; }
    std::optional<double> mean() const { return mean_; }

    DensityJet jet(double x) const { return jet_(x); }
    double pdf(double x) const { return jet_(x).f; }
    double pdf_prime(double x) const { return jet_(x).d1; }
    double pdf_double_prime(double x) const { return jet_(x).d2; }

    bool has_cdf_closed_form() const { return static_cast<bool>(cdf_); }
    /// Closed-form CDF; throws PreconditionError when the model has none.
    double cdf_closed_form(double x) const;

    /// Cancellation-safe closed-form right tail (erfc, Q-gamma, Marcum-Q, ...).
    bool has_tail_closed_form() const { return static_cast<bool>(tail_); }
    double tail_closed_form(double x) const;

    /// Catalog entry this model was built from, if any.
    const std::optional<CatalogEntry>& catalog_entry() const { return entry_; }

    DistributionModel with_mean(double mean) const;
    DistributionModel with_catalog_entry(CatalogEntry entry) const;

private:
    std::string name_;
    std::vector<Param> params_;
    JetFn jet_;
    SupportSpec support_;
    std::optional<double> mean_;
    ScalarFn cdf_;
    ScalarFn tail_;
    std::optional<CatalogEntry> entry_;

    friend DistributionModel reflect(const DistributionModel& model);
    friend DistributionModel make_catalog_distribution(const CatalogEntry& entry);
};

/// Builds a catalog model with analytic derivatives, mean and closed-form CDF/tail.
/// Throws InvalidParameter naming the offending parameter.
DistributionModel make_catalog_distribution(const CatalogEntry& entry);

/// Reference parameter sets, one or more per family, used by `validate --all`
/// and the catalog-wide checks.
std::vector<CatalogEntry> catalog_scenarios();

/// Model of -X. pdf_r(x) = pdf(-x), pdf_r'(x) = -pdf'(-x), pdf_r''(x) = pdf''(-x).
DistributionModel reflect(const DistributionModel& model);

/// Fills a missing mean by quadrature of x * pdf over the support.
/// Returns the model unchanged if it already carries a mean.
DistributionModel with_quadrature_mean(const DistributionModel& model);

/// Geometric probe sequences for the limit assumptions.
struct AssumptionProbe {
    /// Right-tail sequence x_i = base + tail_start * tail_ratio^(i-1), i = 1..tail_count,
    /// with base = max(lower, 0) for finite lower endpoints and 0 otherwise.
    double tail_start = 2.0;
    double tail_ratio = 2.0;
    int tail_count = 6;
    /// Finite lower endpoint x0: x_i = x0 + lower_start * lower_ratio^(i-1).
    /// Infinite lower endpoint: mirrored tail sequence -(tail_start * tail_ratio^(i-1)).
    double lower_start = 1.0;
    double lower_ratio = 0.5;
    int lower_count = 64;
};

struct ProbeSample {
    double x;
    double value;
    bool skipped;  // f'(x) = 0 (or a non-finite value) at this probe point
};

struct AssumptionCheck {
    std::string assumption;
    std::vector<ProbeSample> samples;
    bool pass = false;
    std::string detail;
};

struct AssumptionReport {
    AssumptionCheck tail_ratio;  // f^2/f' -> 0 as x -> inf
    AssumptionCheck lower_mass;  // x f(x) -> 0 as x -> lower endpoint
    bool all_pass() const { return tail_ratio.pass && lower_mass.pass; }
};

/// Samples f^2/f' along the right-tail sequence and x f(x) toward the lower
/// endpoint. A sequence passes when its magnitudes are non-increasing over the
/// last five usable samples and the final magnitude is below 1e-8 of the first.
AssumptionReport check_assumptions(const DistributionModel& model,
                                   const AssumptionProbe& probe = {});

}  // namespace tailbound
