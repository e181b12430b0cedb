#include "oracles.hpp"
#include "support.hpp"

#include "tailbound/bounds.hpp"
#include "tailbound/conditions.hpp"
#include "tailbound/errors.hpp"
#include "tailbound/optimize.hpp"
#include "tailbound/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace tailbound;

namespace {

/// Largest b in a uniform fine scan of (0, b_max] where g changes sign from >= 0 to < 0.
double fine_scan_last_root(const std::function<double(double)>& g, double lo, double hi, int n) {
    double last = std::nan("");
    double prev_x = lo;
    double prev = g(lo);
    for (int i = 1; i <= n; ++i) {
        const double x = lo + (hi - lo) * i / n;
        const double v = g(x);
        if ((prev >= 0.0) != (v >= 0.0)) last = 0.5 * (prev_x + x);
        prev_x = x;
        prev = v;
    }
    return last;
}

}  // namespace

TEST_SUITE("optimize") {

TEST_CASE("optimize_a returns inf where cor2 holds") {
    const auto g = make_catalog_distribution(CatalogEntry::gaussian(0, 1));
    const OptimizedParam p = optimize_a(g, 2.0);
    CHECK(p.name == "a");
    CHECK(std::isinf(p.value));
    CHECK(p.achieved_by == AchievedBy::cor2_conditions_hold);
    for (double x : {0.2, 1.0, 5.0}) CHECK(std::isinf(optimize_a(g, x).value));
    const auto g2 = make_catalog_distribution(CatalogEntry::gaussian(-1.7, 1.9));
    CHECK(std::isinf(optimize_a(g2, 3.0).value));
}

TEST_CASE("optimize_a finite root for beta-prime") {
    const auto bp = make_catalog_distribution(CatalogEntry::beta_prime(2.1, 1.3));
    const OptimizedParam p = optimize_a(bp, 5.0);
    REQUIRE(p.achieved_by == AchievedBy::root_of_equality);
    CHECK(std::isfinite(p.value));
    CHECK(p.value > 0.0);
    CHECK(std::abs(p.residual) <= 1e-8);
    const ConditionReport rep = evaluate_conditions(bp, 5.0, BoundKind::thm2(p.value * (1 - 1e-9)));
    CHECK(rep.all_satisfied);

    // independent fine scan of the second-order lhs, written from the literal transcription
    const DensityJet j = bp.jet(5.0);
    auto lhs = [&](double a) {
        return oracle::literal_conditions(BoundTag::upper_thm2, a, 1.0, 5.0, j.f, j.d1, j.d2)[1];
    };
    const double root = fine_scan_last_root([&](double a) { return -lhs(a); }, 1e-3, 64.0, 100000);
    CHECK(std::abs(root - p.value) <= 64.0 / 100000);
    // no sign change above the returned root at 10x the default resolution
    double prev = lhs(p.value * (1 + 1e-6));
    for (int i = 1; i <= 2560; ++i) {
        const double a = p.value * std::pow(64.0 / p.value, i / 2560.0);
        const double v = lhs(a);
        CHECK((v <= 0.0) == (prev <= 0.0));
        prev = v;
    }
}

TEST_CASE("optimize_a fallback carries a suggestion") {
    const auto chi6 = make_catalog_distribution(CatalogEntry::chi_square_central(6));
    const OptimizedParam p = optimize_a(chi6, 1.0);
    CHECK(p.achieved_by == AchievedBy::fallback_none);
    CHECK(std::isnan(p.value));
    CHECK_FALSE(p.diagnostic.empty());
    REQUIRE(p.suggested_x.has_value());
    CHECK(*p.suggested_x > 1.0);
    CHECK(optimize_a(chi6, *p.suggested_x).achieved_by != AchievedBy::fallback_none);
}

TEST_CASE("optimize_a errors") {
    const auto chi6 = make_catalog_distribution(CatalogEntry::chi_square_central(6));
    CHECK_THROWS_AS(optimize_a(chi6, -1.0), PreconditionError);
    CHECK_THROWS_AS(optimize_a(chi6, 0.0), PreconditionError);
}

TEST_CASE("optimize_b on the real line") {
    const auto g = make_catalog_distribution(CatalogEntry::gaussian(0, 1));
    const OptimizedParam p = optimize_b_real_line(g, 2.0);
    CHECK(p.name == "b");
    CHECK(p.value >= 1.0);
    const double root = fine_scan_last_root([&](double b) { return thm5_master_lhs(g, 2.0, b); }, 1e-3, 64.0, 100000);
    if (std::isnan(root)) {
        CHECK(p.non_binding);
        CHECK(p.value == 64.0);
    } else {
        CHECK(std::abs(root - p.value) <= 64.0 / 100000);
        CHECK(std::abs(p.residual) <= 1e-8);
    }

    const auto g2 = make_catalog_distribution(CatalogEntry::gaussian(-1.7, 1.9));
    const OptimizedParam q = optimize_b_real_line(g2, 3.0);
    CHECK(q.value >= 1.0);
    CHECK((q.non_binding || std::abs(q.residual) <= 1e-8));
    CHECK(thm5_master_lhs(g2, 3.0, q.value * (1 - 1e-9)) >= 0.0);

    const auto err_name = [&](double x) {
        try {
            optimize_b_real_line(g2, x);
        } catch (const PreconditionError& e) {
            return std::string(e.precondition());
        }
        return std::string("none");
    };
    CHECK(err_name(-1.7) == "x_gt_mean");
    CHECK(err_name(-3.0) == "x_gt_mean");
    const auto chi6 = make_catalog_distribution(CatalogEntry::chi_square_central(6));
    CHECK_THROWS_AS(optimize_b_real_line(chi6, 10.0), PreconditionError);
}

TEST_CASE("optimize_b on a semi-bounded support") {
    const auto chi6 = make_catalog_distribution(CatalogEntry::chi_square_central(6));
    const OptimizedParam p = optimize_b_semibounded(chi6, 10.0, kInf);
    REQUIRE(p.achieved_by == AchievedBy::root_of_equality);
    CHECK(std::abs(cor4_master_lhs(chi6, 10.0, p.value)) <= 1e-8);
    CHECK(p.value > 0.5);
    CHECK(p.value < 1.0);
    CHECK(cor4_master_lhs(chi6, 10.0, 1.0) < 0.0);
    const double root = fine_scan_last_root([&](double b) { return cor4_master_lhs(chi6, 10.0, b); }, 1e-3, 64.0, 100000);
    CHECK(std::abs(root - p.value) <= 64.0 / 100000);

    const auto bp = make_catalog_distribution(CatalogEntry::beta_prime(2.1, 1.3));
    const OptimizedParam q = optimize_b_semibounded(bp, 5.0, 1.0);
    REQUIRE(q.achieved_by == AchievedBy::root_of_equality);
    CHECK(q.value == doctest::Approx(0.1465).epsilon(1e-3));
    CHECK_FALSE(evaluate_conditions(bp, 5.0, BoundKind::cor3(0.8)).all_satisfied);
    CHECK(evaluate_conditions(bp, 15.0, BoundKind::cor3(0.8)).all_satisfied);
    CHECK_FALSE(evaluate_conditions(bp, 15.0, BoundKind::cor3(1.0)).all_satisfied);

    CHECK_THROWS_AS(optimize_b_semibounded(chi6, 0.0, kInf), Error);
    const auto g = make_catalog_distribution(CatalogEntry::gaussian(0, 1));
    CHECK_THROWS_AS(optimize_b_semibounded(g, 2.0, kInf), PreconditionError);
}

TEST_CASE("optimized b never loosens the lower bound for y > 1") {
    for (const auto& m : testsupport::semibounded_models()) {
        CAPTURE(m.name());
        const double x0 = m.support().lower;
        for (double x : GridSpec{x0 + 1.5, x0 + 30.0, 12}.points()) {
            CAPTURE(x);
            OptimizedParam p;
            try {
                p = optimize_b_semibounded(m, x, kInf);
            } catch (const PreconditionError&) {
                continue;
            }
            if (p.achieved_by == AchievedBy::fallback_none) continue;
            const BoundValue opt = lower_bound(m, x, BoundKind::cor4(p.value));
            const BoundValue one = lower_bound(m, x, BoundKind::cor4(1.0));
            if (!opt.valid || !one.valid) continue;
            CHECK(opt.value >= one.value * (1 - 1e-14));
        }
    }
}

TEST_CASE("cor2 is below every valid finite-a bound where optimize_a returns inf") {
    for (const auto& m : testsupport::semibounded_models()) {
        CAPTURE(m.name());
        const double x0 = m.support().lower;
        for (double x : GridSpec{x0 + 1.5, x0 + 30.0, 16}.points()) {
            if (!std::isinf(optimize_a(m, x).value)) continue;
            const double c2 = upper_bound(m, x, BoundKind::cor2()).value;
            for (double a : {0.5, 1.0, 2.0, 4.0, 16.0}) {
                CAPTURE(x);
                CAPTURE(a);
                const BoundValue ua = upper_bound(m, x, BoundKind::thm2(a));
                if (!ua.valid) continue;
                CHECK(c2 <= ua.value * (1 + 1e-14));
            }
        }
    }
}

}  // TEST_SUITE
