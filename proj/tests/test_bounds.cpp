#include "oracles.hpp"
#include "support.hpp"

#include "tailbound/bounds.hpp"
#include "tailbound/errors.hpp"
#include "tailbound/oracle.hpp"

#include <doctest.h>

#include <array>
#include <cmath>

using namespace tailbound;

namespace {

const std::array<double, 6> kAs = {0.5, 1.0, 2.0, 4.0, 8.0, 16.0};

/// Points with y in [1.5, 40] where f' < 0.
std::vector<double> decreasing_points(const DistributionModel& m, int n) {
    std::vector<double> xs;
    const double x0 = m.support().lower;
    for (double x : GridSpec{x0 + 1.5, x0 + 40.0, n}.points())
        if (m.pdf_prime(x) < 0.0) xs.push_back(x);
    return xs;
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("shifted coordinate") {
    CHECK(shifted_coordinate(3.0, 0.0) == 3.0);
    CHECK(shifted_coordinate(3.0, 1.0) == 2.0);
    CHECK(shifted_coordinate(5.0, -1.7) == doctest::Approx(6.7));
}

TEST_CASE("upper bound examples") {
    const auto chi2 = make_catalog_distribution(CatalogEntry::chi_square_central(2));
    const BoundValue e = upper_bound(chi2, 3.0, BoundKind::cor2());
    CHECK(e.valid);
    CHECK(oracle::rel_diff(e.value, std::exp(-1.5)) < 1e-12);
    CHECK(oracle::rel_diff(e.value, true_tail(chi2, 3.0).value) < 1e-12);

    const auto g = make_catalog_distribution(CatalogEntry::gaussian(0, 1));
    const BoundValue u = upper_bound(g, 2.0, BoundKind::cor2());
    CHECK(u.valid);
    CHECK(oracle::rel_diff(u.value, oracle::std_normal_pdf(2.0) / 2.0) < 1e-14);
    CHECK(u.value >= oracle::q_function(2.0));

    const auto bp = make_catalog_distribution(CatalogEntry::beta_prime(2.1, 1.3));
    const BoundValue c1 = upper_bound(bp, 1.0, BoundKind::cor1());
    CHECK_FALSE(c1.valid);
    CHECK(std::isfinite(c1.value));
    CHECK_FALSE(c1.condition_report.all_satisfied);
    CHECK(upper_bound(bp, 2.0, BoundKind::cor1()).valid);
}

TEST_CASE("lower bound examples") {
    const auto g = make_catalog_distribution(CatalogEntry::gaussian(0, 1));
    const BoundValue l = lower_bound(g, 2.0, BoundKind::thm5(1.0));
    CHECK(l.valid);
    CHECK(oracle::rel_diff(l.value, oracle::std_normal_pdf(2.0) / 3.0) < 1e-14);
    CHECK(l.value <= oracle::q_function(2.0));

    const auto chi2 = make_catalog_distribution(CatalogEntry::chi_square_central(2));
    const BoundValue c4 = lower_bound(chi2, 3.0, BoundKind::cor4(1.0));
    CHECK(oracle::rel_diff(c4.value, 0.75 * std::exp(-1.5)) < 1e-12);
    CHECK(c4.value <= std::exp(-1.5));

    const auto chi6 = make_catalog_distribution(CatalogEntry::chi_square_central(6));
    const BoundValue bad = lower_bound(chi6, 3.0, BoundKind::cor4(1.0));
    CHECK_FALSE(bad.valid);
    CHECK(std::isfinite(bad.value));
}

TEST_CASE("bound errors") {
    const auto g = make_catalog_distribution(CatalogEntry::gaussian(0, 1));
    const auto chi2 = make_catalog_distribution(CatalogEntry::chi_square_central(2));
    CHECK_THROWS_AS(upper_bound(g, 1.0, BoundKind::thm5(1.0)), InvalidParameter);
    CHECK_THROWS_AS(lower_bound(g, 1.0, BoundKind::cor2()), InvalidParameter);
    CHECK_THROWS_AS(upper_bound(chi2, -1.0, BoundKind::cor2()), DomainError);
    CHECK_THROWS_AS(upper_bound(chi2, 0.0, BoundKind::cor1()), DomainError);
    CHECK_THROWS_AS(lower_bound(g, -0.5, BoundKind::thm5(1.0)), PreconditionError);
    CHECK_THROWS_AS(upper_bound(g, 1.0, BoundKind::thm1(1.0)), PreconditionError);
    CHECK_THROWS_AS(lower_bound(chi2, 1.0, BoundKind::thm5(1.0)), PreconditionError);
    CHECK_THROWS_AS(BoundKind::thm2(0.0), InvalidParameter);
    CHECK_THROWS_AS(BoundKind::cor4(-1.0), InvalidParameter);

    // f = e^-x: f + y f' vanishes exactly at y = 1
    auto jet = [](double x) { return DensityJet{std::exp(-x), -std::exp(-x), std::exp(-x)}; };
    const DistributionModel expo("expo", {}, jet, SupportSpec{0.0, true, kInf, true}, 1.0);
    CHECK_THROWS_AS(upper_bound(expo, 1.0, BoundKind::cor1()), SingularDenominator);
}

TEST_CASE("bound kind labels round-trip") {
    for (const BoundKind& k : {BoundKind::thm1(0.5), BoundKind::thm2(2.0), BoundKind::cor1(), BoundKind::cor2(),
                               BoundKind::thm3(1.5, 0.25), BoundKind::thm4(2.0, 0.8), BoundKind::cor3(0.8),
                               BoundKind::cor4(1.0), BoundKind::thm5(3.0)}) {
        CAPTURE(k.label());
        CHECK(parse_bound_kind(k.label()) == k);
    }
    CHECK(parse_bound_kind("thm2:a=inf") == BoundKind::cor2());
    CHECK(parse_bound_kind("thm4:a=inf,b=0.5") == BoundKind::cor4(0.5));
    CHECK(parse_bound_kind("thm4") == BoundKind::thm4(1.0, 1.0));
    CHECK_THROWS_AS(parse_bound_kind("thm9"), InvalidParameter);
    CHECK_THROWS_AS(parse_bound_kind("cor2:a=2"), InvalidParameter);
    CHECK_THROWS_AS(parse_bound_kind("thm2:a=-1"), InvalidParameter);
}

TEST_CASE("closed forms match the generic path") {
    for (const auto& m : testsupport::catalog_models()) {
        const CatalogEntry& entry = *m.catalog_entry();
        CAPTURE(m.name());
        const auto [lo, hi] = testsupport::body_range(m);
        int compared = 0;
        for (double b : {1.0, 0.8, 2.0}) {
            for (double x : GridSpec{lo, hi, 64}.points()) {
                for (Side side : {Side::upper, Side::lower}) {
                    double closed = 0.0;
                    try {
                        closed = closed_form_bound(entry, x, side, b);
                    } catch (const RegionError&) {
                        continue;
                    }
                    const BoundKind kind = closed_form_counterpart(entry, side, b);
                    const double generic = evaluate_bound(m, x, kind).value;
                    CAPTURE(x);
                    CAPTURE(kind.label());
                    CHECK(oracle::rel_diff(closed, generic) <= 1e-12);
                    ++compared;
                }
            }
        }
        CHECK(compared > 50);
    }
}

TEST_CASE("closed-form examples and regions") {
    const auto gaussian = CatalogEntry::gaussian(-1.7, 1.9);
    const double expected = 1.9 / (std::sqrt(2 * oracle::kPi) * 4.7) * std::exp(-4.7 * 4.7 / (2 * 1.9 * 1.9));
    CHECK(oracle::rel_diff(closed_form_bound(gaussian, 3.0, Side::upper), expected) < 1e-13);

    const auto chi6 = CatalogEntry::chi_square_central(6);
    const double verbatim = -std::pow(2.0, -2.0) * 1000.0 * std::exp(-5.0) / ((6.0 - 10.0 - 2.0) * 2.0);
    CHECK(oracle::rel_diff(closed_form_bound(chi6, 10.0, Side::upper), verbatim) < 1e-13);
    CHECK(closed_form_bound(chi6, 10.0, Side::upper) > oracle::upper_gamma_integer(3, 5.0));

    const auto bp = CatalogEntry::beta_prime(2.1, 1.3);
    const auto bpm = make_catalog_distribution(bp);
    CHECK(oracle::rel_diff(closed_form_bound(bp, 5.0, Side::lower, 0.8),
                           lower_bound(bpm, 5.0, BoundKind::cor3(0.8)).value) < 1e-12);

    auto threshold = [](const CatalogEntry& e, double x) {
        try {
            closed_form_bound(e, x, Side::upper);
        } catch (const RegionError& err) {
            return err.threshold();
        }
        return std::nan("");
    };
    CHECK(threshold(gaussian, -2.0) == -1.7);
    CHECK(threshold(chi6, 3.0) == 4.0);
    CHECK(threshold(bp, 1.0) == doctest::Approx(2.1 / 1.3));
    CHECK_THROWS_AS(closed_form_bound(CatalogEntry::chi_square_central(1), 3.0, Side::upper), RegionError);
}

TEST_CASE("specialization chain") {
    for (const auto& m : testsupport::semibounded_models()) {
        CAPTURE(m.name());
        const auto xs = decreasing_points(m, 32);
        CHECK(xs.size() >= 20);
        for (double x : xs) {
            CAPTURE(x);
            CHECK(upper_bound(m, x, BoundKind::thm2(1.0)).value == upper_bound(m, x, BoundKind::cor1()).value);
            CHECK(oracle::rel_diff(upper_bound(m, x, BoundKind::thm2(1e6)).value,
                                   upper_bound(m, x, BoundKind::cor2()).value) <= 1e-9);
            for (double b : {0.5, 1.0, 2.0}) {
                CHECK(lower_bound(m, x, BoundKind::thm4(1.0, b)).value == lower_bound(m, x, BoundKind::cor3(b)).value);
                CHECK(oracle::rel_diff(lower_bound(m, x, BoundKind::thm4(1e6, b)).value,
                                       lower_bound(m, x, BoundKind::cor4(b)).value) <= 1e-9);
            }
            if (m.support().lower == 0.0) {
                CHECK(upper_bound(m, x, BoundKind::thm1(2.0)).value == upper_bound(m, x, BoundKind::thm2(2.0)).value);
                CHECK(lower_bound(m, x, BoundKind::thm3(2.0, 0.5)).value ==
                      lower_bound(m, x, BoundKind::thm4(2.0, 0.5)).value);
            }
        }
    }
}

TEST_CASE("upper bound is non-increasing in a for y > 1") {
    for (const auto& m : testsupport::semibounded_models()) {
        CAPTURE(m.name());
        for (double x : decreasing_points(m, 32)) {
            CAPTURE(x);
            double prev = kInf;
            for (double a : kAs) {
                const double u = upper_bound(m, x, BoundKind::thm2(a)).value;
                // only meaningful while the denominator is negative
                if (!(u > 0.0)) break;
                CHECK(u <= prev * (1 + 1e-14));
                prev = u;
            }
            CHECK(upper_bound(m, x, BoundKind::cor2()).value <= prev * (1 + 1e-14));
        }
    }
}

TEST_CASE("lower weight monotonicity in b") {
    const auto chi = make_catalog_distribution(CatalogEntry::chi_square_central(6));
    for (double x : {1.5, 3.0, 7.0, 20.0}) {
        double prev = -kInf;
        for (double b : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            const double l = lower_bound(chi, x, BoundKind::cor4(b)).value;
            const double u = upper_bound(chi, x, BoundKind::cor2()).value;
            const double w = l / u;
            CHECK(w == doctest::Approx(std::pow(x, b) / (1 + std::pow(x, b))).epsilon(1e-14));
            if (x > 1.0 && u > 0.0) CHECK(l >= prev);
            prev = l;
        }
    }
    // the weight decreases in b for y < 1
    const double y = 0.5;
    double prev = kInf;
    for (double b : {0.25, 0.5, 1.0, 2.0}) {
        const double w = std::pow(y, b) / (1 + std::pow(y, b));
        CHECK(w < prev);
        prev = w;
    }
}

TEST_CASE("sandwich wherever a simple kind is valid onward") {
    for (const auto& m : testsupport::catalog_models()) {
        CAPTURE(m.name());
        std::vector<BoundKind> kinds;
        if (m.support().lower_finite())
            kinds = {BoundKind::cor2(), BoundKind::cor1(), BoundKind::cor4(1.0), BoundKind::cor3(1.0),
                     BoundKind::cor4(0.5), BoundKind::cor3(0.5)};
        else
            kinds = {BoundKind::cor2(), BoundKind::thm5(1.0), BoundKind::thm5(0.5)};
        const auto [lo, hi] = testsupport::body_range(m);
        const std::vector<double> xs = GridSpec{lo, 4.0 * hi, 800}.points();
        int checked = 0;
        for (const auto& kind : kinds) {
            std::vector<BoundValue> vals(xs.size());
            std::vector<bool> onward(xs.size(), false);
            for (std::size_t i = 0; i < xs.size(); ++i) {
                try {
                    vals[i] = evaluate_bound(m, xs[i], kind);
                } catch (const Error&) {
                    vals[i].valid = false;
                }
            }
            bool tail_ok = true;
            for (std::size_t i = xs.size(); i-- > 0;) {
                tail_ok = tail_ok && vals[i].valid;
                onward[i] = tail_ok;
            }
            for (std::size_t i = 0; i < xs.size() && xs[i] <= hi; ++i) {
                if (!onward[i]) continue;
                const double t = true_tail(m, xs[i]).value;
                CAPTURE(xs[i]);
                CAPTURE(kind.label());
                if (kind.is_upper()) CHECK(t <= vals[i].value * (1 + 1e-12) + 1e-300);
                else CHECK(vals[i].value * (1 - 1e-12) <= t);
                ++checked;
            }
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("pointwise validity alone does not guarantee the bound") {
    // chi-square k=1: thm2(a=4) conditions hold at x=2, yet the bound lies below the tail
    const auto chi1 = make_catalog_distribution(CatalogEntry::gaussian_squared(1.0, 0.0));
    const BoundValue u = evaluate_bound(chi1, 2.0, BoundKind::thm2(4.0));
    CHECK(u.valid);
    CHECK(u.value < true_tail(chi1, 2.0).value);
}

TEST_CASE("reciprocal forms") {
    for (const auto& m : testsupport::catalog_models()) {
        const auto [lo, hi] = testsupport::body_range(m);
        for (double x : GridSpec{lo, hi, 32}.points()) {
            const DensityJet j = m.jet(x);
            if (!(j.d1 < 0.0) || !(j.f > 0.0)) continue;
            const double u = upper_bound(m, x, BoundKind::cor2()).value;
            CHECK(std::abs(u * (-j.d1 / (j.f * j.f)) - 1.0) <= 4e-16);
        }
    }
    const auto g = make_catalog_distribution(CatalogEntry::gaussian(-1.7, 1.9));
    for (double x : GridSpec{1.2, 10.0, 50}.points()) {
        const BoundValue u = upper_bound(g, x, BoundKind::cor2());
        const BoundValue l = lower_bound(g, x, BoundKind::thm5(1.0));
        if (!u.valid || !l.valid) continue;
        const double t = true_tail(g, x).value;
        CHECK(1.0 / u.value <= 1.0 / t);
        CHECK(1.0 / t <= 1.0 / l.value);
    }
}

TEST_CASE("underflow is clamped and flagged") {
    const auto g = make_catalog_distribution(CatalogEntry::gaussian(0, 1));
    const BoundValue v = upper_bound(g, 60.0, BoundKind::cor2());
    CHECK(v.value == 0.0);
    CHECK(v.underflow);
    CHECK(closed_form_bound(CatalogEntry::gaussian(0, 1), 30.0, Side::upper) > 0.0);
}

}  // TEST_SUITE
