#pragma once

// Special functions used by the catalog densities and the ground-truth tails.
// Incomplete gamma/beta and Bessel I are delegated to Boost.Math; the
// Marcum-Q function is assembled here from its Poisson-mixture form.

namespace tailbound::special {

/// Upper standard normal tail Q(z) = P(Z >= z), via erfc (no 1 - Phi cancellation).
double normal_tail(double z);

/// Standard normal CDF Phi(z).
double normal_cdf(double z);

/// Regularized lower incomplete gamma P(s, z).
double lower_reg_gamma(double s, double z);

/// Regularized upper incomplete gamma Q(s, z) = Gamma(s, z) / Gamma(s).
double upper_reg_gamma(double s, double z);

/// log B(a, b).
double log_beta(double a, double b);

/// Regularized incomplete beta I_z(a, b).
double reg_inc_beta(double a, double b, double z);

/// Complement 1 - I_z(a, b), evaluated without cancellation.
double reg_inc_beta_complement(double a, double b, double z);

/// Result of a modified Bessel evaluation in scaled form: I_nu(s) = scaled * exp(s).
struct ScaledBessel {
    double scaled;  // I_nu(s) * exp(-s)
    double log_value;  // log I_nu(s)
};

/// Modified Bessel function of the first kind, I_nu(s), s > 0, returned in scaled
/// form so that arguments beyond the exp() overflow threshold remain usable.
/// Uses Boost for s <= 700 and the large-argument asymptotic series above.
ScaledBessel bessel_i_scaled(double nu, double s);

/// I_nu(s); overflows to +inf for very large s.
double bessel_i(double nu, double s);

/// Ratio I_{nu+1}(s) / I_nu(s), s > 0.
double bessel_i_ratio(double nu, double s);

/// Generalized Marcum Q function Q_m(a, b) for order m >= 1/2, computed as the
/// Poisson mixture sum_j Pois(j; a^2/2) * Q(m + j, b^2/2), truncated once the
/// remaining Poisson weight drops below 1e-14.
double marcum_q(double order_m, double a_param, double b_param);

}  // namespace tailbound::special
