#include "tailbound/special.hpp"

#include "tailbound/errors.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace tailbound::special {

namespace {

constexpr double kBesselBoostLimit = 700.0;

// Hankel large-argument series for exp(-s) * sqrt(2 pi s) * I_nu(s).
double bessel_i_asymptotic_scaled(double nu, double s) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 30; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (k * 8.0 * s);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace

double normal_tail(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double lower_reg_gamma(double s, double z) {
    if (z <= 0.0) return 0.0;
    return boost::math::gamma_p(s, z);
}

double upper_reg_gamma(double s, double z) {
    if (z <= 0.0) return 1.0;
    return boost::math::gamma_q(s, z);
}

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double reg_inc_beta(double a, double b, double z) {
    if (z <= 0.0) return 0.0;
    if (z >= 1.0) return 1.0;
    return boost::math::ibeta(a, b, z);
}

double reg_inc_beta_complement(double a, double b, double z) {
    if (z <= 0.0) return 1.0;
    if (z >= 1.0) return 0.0;
    return boost::math::ibetac(a, b, z);
}

ScaledBessel bessel_i_scaled(double nu, double s) {
    if (!(s > 0.0)) throw DomainError("bessel_i_scaled: argument must be positive");
    if (s <= kBesselBoostLimit) {
        const double value = boost::math::cyl_bessel_i(nu, s);
        return {value * std::exp(-s), std::log(value)};
    }
    const double series = bessel_i_asymptotic_scaled(nu, s);
    const double scaled = series / std::sqrt(2.0 * std::numbers::pi * s);
    return {scaled, s + std::log(scaled)};
}

double bessel_i(double nu, double s) {
    if (s == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    return boost::math::cyl_bessel_i(nu, s);
}

double bessel_i_ratio(double nu, double s) {
    if (s <= kBesselBoostLimit) {
        return boost::math::cyl_bessel_i(nu + 1.0, s) / boost::math::cyl_bessel_i(nu, s);
    }
    return bessel_i_asymptotic_scaled(nu + 1.0, s) / bessel_i_asymptotic_scaled(nu, s);
}

double marcum_q(double order_m, double a_param, double b_param) {
    if (!(order_m >= 0.5)) throw InvalidParameter("order_m", "Marcum-Q order must be >= 1/2");
    if (a_param < 0.0) throw InvalidParameter("a_param", "must be non-negative");
    if (b_param < 0.0) throw InvalidParameter("b_param", "must be non-negative");
    if (b_param == 0.0) return 1.0;

    const double half_nc = 0.5 * a_param * a_param;
    const double z = 0.5 * b_param * b_param;
    if (half_nc == 0.0) return upper_reg_gamma(order_m, z);

    // Sum outward from j = 0; weights in log space so large noncentralities do not underflow.
    double weight_sum = 0.0;
    double total = 0.0;
    const double log_h = std::log(half_nc);
    for (int j = 0; j < 100000; ++j) {
        const double log_w = -half_nc + j * log_h - std::lgamma(j + 1.0);
        const double w = std::exp(log_w);
        weight_sum += w;
        total += w * upper_reg_gamma(order_m + j, z);
        if (j > half_nc && 1.0 - weight_sum < 1e-14) break;
    }
    return std::min(1.0, total);
}

}  // namespace tailbound::special
