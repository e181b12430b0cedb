#include "oracles.hpp"
#include "support.hpp"

#include "tailbound/errors.hpp"
#include "tailbound/oracle.hpp"
#include "tailbound/pairing.hpp"
#include "tailbound/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>

using namespace tailbound;

TEST_SUITE("oracle") {

TEST_CASE("reference tails") {
    const auto chi2 = make_catalog_distribution(CatalogEntry::chi_square_central(2));
    const TailValue t = true_tail(chi2, 3.0);
    CHECK(t.method == TailMethod::closed_form);
    CHECK(oracle::rel_diff(t.value, std::exp(-1.5)) < 1e-14);

    const auto g = make_catalog_distribution(CatalogEntry::gaussian(0, 1));
    // Q(2) to 17 digits
    CHECK(oracle::rel_diff(true_tail(g, 2.0).value, 0.022750131948179208) < 1e-14);

    const auto chi6 = make_catalog_distribution(CatalogEntry::chi_square_central(6));
    for (double x : {0.5, 4.0, 10.0, 30.0})
        CHECK(oracle::rel_diff(true_tail(chi6, x).value, oracle::upper_gamma_integer(3, x / 2)) < 1e-13);
}

TEST_CASE("noncentral tail: Marcum-Q against quadrature of the density") {
    const auto nc = make_catalog_distribution(CatalogEntry::chi_square_noncentral(6, 1.2));
    const TailValue series = true_tail(nc, 8.0);
    CHECK(series.method == TailMethod::series);
    CHECK(oracle::rel_diff(series.value, marcum_q(3.0, std::sqrt(1.2), std::sqrt(8.0))) < 1e-15);
    CHECK(std::abs(series.value - quadrature_tail(nc, 8.0).value) < 1e-9);

    // quadrature of the independent Poisson-mixture density
    const auto mix = quad::integrate_upper([](double x) { return oracle::noncentral_chi2_pdf_mixture(x, 6, 1.2); }, 8.0);
    CHECK(std::abs(series.value - mix.value) < 1e-9);
}

TEST_CASE("Marcum-Q boundary identities") {
    for (int m : {1, 2, 3, 5})
        for (double b : {0.3, 1.0, 2.5, 6.0})
            CHECK(std::abs(marcum_q(m, 0.0, b) - oracle::upper_gamma_integer(m, b * b / 2)) <= 1e-14);
    for (double m : {0.5, 1.5, 3.0})
        for (double a : {0.0, 0.7, 4.0}) CHECK(std::abs(marcum_q(m, a, 0.0) - 1.0) <= 1e-14);

    double prev = 1.0;
    for (double b = 0.0; b <= 12.0; b += 0.25) {
        const double q = marcum_q(3.0, 1.1, b);
        CHECK(q <= prev);
        prev = q;
    }
}

TEST_CASE("closed-form tails agree with quadrature") {
    for (const auto& m : testsupport::catalog_models()) {
        CAPTURE(m.name());
        const auto [lo, hi] = testsupport::body_range(m);
        for (int i = 0; i < 16; ++i) {
            const double x = lo + (hi - lo) * (i + 0.5) / 16.0;
            CAPTURE(x);
            const double closed = true_tail(m, x).value;
            CHECK(std::abs(closed - quadrature_tail(m, x).value) <= 1e-8);
        }
    }
}

TEST_CASE("tails are non-increasing and in [0, 1]") {
    for (const auto& m : testsupport::catalog_models()) {
        CAPTURE(m.name());
        const auto [lo, hi] = testsupport::body_range(m);
        double prev = 1.0;
        for (double x : GridSpec{lo, hi, 200}.points()) {
            const TailValue t = true_tail(m, x);
            CHECK(t.value >= 0.0);
            CHECK(t.value <= prev);
            CHECK(t.abs_error_estimate >= 0.0);
            CHECK(t.abs_error_estimate <= 1e-8);
            prev = t.value;
        }
    }
}

TEST_CASE("no cancellation in the Gaussian tail at x = 8") {
    const auto g = make_catalog_distribution(CatalogEntry::gaussian(0, 1));
    const double asym = oracle::std_normal_pdf(8.0) / 8.0 * (1.0 - 1.0 / 64.0 + 3.0 / 4096.0);
    CHECK(oracle::rel_diff(true_tail(g, 8.0).value, asym) < 1e-3);
}

TEST_CASE("quadrature fallback for models without a closed-form tail") {
    const auto g = make_catalog_distribution(CatalogEntry::gaussian(0.4, 1.3));
    const DistributionModel bare("bare", {}, [&g](double x) { return g.jet(x); }, g.support(), 0.4);
    const TailValue t = true_tail(bare, 1.7);
    CHECK(t.method == TailMethod::quadrature);
    CHECK(std::abs(t.value - oracle::q_function((1.7 - 0.4) / 1.3)) < 1e-10);
    CHECK(cdf_value(bare, 1.7) == doctest::Approx(1.0 - t.value).epsilon(1e-12));
}

TEST_CASE("errors and grids") {
    const auto chi2 = make_catalog_distribution(CatalogEntry::chi_square_central(2));
    CHECK_THROWS_AS(true_tail(chi2, -1.0), DomainError);
    CHECK(GridSpec{3.0, 9.0, 1}.points() == std::vector<double>{3.0});
    const auto pts = GridSpec{1.0, 2.0, 5}.points();
    REQUIRE(pts.size() == 5);
    CHECK(pts.front() == 1.0);
    CHECK(pts.back() == 2.0);
}

TEST_CASE("quadrature tolerance override") {
    unsetenv("TAILBOUND_QUAD_TOL");
    CHECK(quad::default_abs_tol() == 1e-10);
    setenv("TAILBOUND_QUAD_TOL", "1e-6", 1);
    CHECK(quad::default_abs_tol() == 1e-6);
    unsetenv("TAILBOUND_QUAD_TOL");
    CHECK(quad::default_abs_tol() == 1e-10);
}

TEST_CASE("sandwich audits") {
    const auto g = make_catalog_distribution(CatalogEntry::gaussian(-1.7, 1.9));
    const PairingReport pair = make_pairing(g, BoundKind::cor2(), BoundKind::thm5(1.0), 1.2, 10.0);
    const AuditReport audit = sandwich_audit(g, pair, GridSpec{1.2, 10.0, 200});
    CHECK(audit.points.size() == 200);
    CHECK(audit.clean());

    const auto chi2 = make_catalog_distribution(CatalogEntry::chi_square_central(2));
    const PairingReport exact = make_pairing(chi2, BoundKind::cor2(), BoundKind::cor4(1.0), 0.5, 40.0);
    const AuditReport a2 = sandwich_audit(chi2, exact, GridSpec{0.5, 40.0, 64});
    CHECK(a2.clean());
    for (const auto& p : a2.points) CHECK(std::abs(p.upper - p.tail) <= 1e-12 * p.tail);

    const auto bp = make_catalog_distribution(CatalogEntry::beta_prime(2.1, 1.3));
    const PairingReport bpp = make_pairing(bp, BoundKind::cor1(), BoundKind::cor3(0.8), 3.0, 20.0);
    const AuditReport a3 = sandwich_audit(bp, bpp, GridSpec{3.0, 20.0, 200});
    // the pair is only jointly valid above ~11.4; those points sandwich the tail
    CHECK_FALSE(a3.skipped.empty());
    CHECK_FALSE(a3.points.empty());
    CHECK(a3.clean());
}

}  // TEST_SUITE
