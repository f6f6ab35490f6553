#include <doctest.h>

#include "gm/parallel.hpp"
#include "gm/rank2.hpp"
#include "gm/wmax.hpp"
#include "support/fixtures.hpp"

using namespace gm;
using namespace gm::test;

TEST_SUITE("wmax") {

TEST_CASE("symmetric-subspace formula is the closed form restricted to gamma2 = pi/2 - gamma1") {
    Xorshift64Star rng(61);
    for (int i = 0; i < 1000; ++i) {
        const double g1 = rng.uniform(kPi / 4, kPi / 2);
        const double x3 = rng.uniform(-1, 1);
        CHECK(std::abs(g_symmetric_subspace(x3, g1) - g_closed_form(x3, g1, kPi / 2 - g1)) <= 1e-9);
    }
}

TEST_CASE("equal-angle formula is the closed form restricted to gamma1 = gamma2") {
    Xorshift64Star rng(62);
    for (int i = 0; i < 1000; ++i) {
        const double g1 = rng.uniform(0, kPi / 4);
        const double x3 = rng.uniform(-1, 1);
        CHECK(std::abs(g_equal_gamma(x3, g1) - g_closed_form(x3, g1, g1)) <= 1e-9);
    }
}

TEST_CASE("special-subspace examples") {
    for (double g1 : {kPi / 4, 1.0, 1.3, kPi / 2}) {
        CHECK(std::abs(g_symmetric_subspace(0.0, g1) - 0.5) < 1e-15);
        CHECK(std::abs(g_symmetric_subspace(-1.0, g1) - 0.5) < 1e-15);
    }
    CHECK(std::abs(g_symmetric_subspace(-1.0 / 3, kPi / 4) - 4.0 / 9.0) < 1e-15);
    for (double x3 : {0.0, 0.3, 1.0})
        for (double g1 : {0.0, 0.4, kPi / 4}) CHECK(g_equal_gamma(x3, g1) == (1 + x3) / 2);
    CHECK(g_equal_gamma(-1.0, 0.0) == 1.0);
    CHECK(std::abs(g_equal_gamma(-1.0 / 3, kPi / 4) - 4.0 / 9.0) < 1e-15);
    CHECK_THROWS_AS(g_symmetric_subspace(0.0, 0.5), ValidationError);
    CHECK_THROWS_AS(g_equal_gamma(0.0, 1.0), ValidationError);
}

TEST_CASE("x3 star") {
    CHECK(std::abs(x3_star_symmetric(kPi / 4) + 1.0 / 3) < 1e-15);
    CHECK(std::abs(x3_star_symmetric(kPi / 2) - (1 - std::sqrt(2.0))) < 1e-15);
    Xorshift64Star rng(63);
    for (int i = 0; i < 50; ++i) {
        const double g1 = rng.uniform(kPi / 4, kPi / 2);
        const double x = x3_star_symmetric(g1);
        CHECK(std::abs(x3_star_quadratic(x, g1)) <= 1e-10);
        CHECK(std::abs(x) <= 1.0);
        CHECK(std::abs(g_min_symmetric(g1) - g_symmetric_subspace(x, g1)) <= 1e-10);
    }
}

TEST_CASE("g_min_symmetric grows from 4/9 to 1/2") {
    CHECK(std::abs(g_min_symmetric(kPi / 4) - 4.0 / 9.0) < 1e-15);
    CHECK(std::abs(g_min_symmetric(kPi / 2) - 0.5) < 1e-15);
    double prev = g_min_symmetric(kPi / 4);
    for (int k = 1; k <= 200; ++k) {
        const double v = g_min_symmetric(kPi / 4 + (kPi / 4) * k / 200);
        CHECK(v > prev);
        CHECK(v > 4.0 / 9.0);
        prev = v;
    }
}

TEST_CASE("uniqueness bound") {
    CHECK(std::abs(w_uniqueness_bound(0.0) - 4.0 / 9.0) < 1e-15);
    CHECK(w_uniqueness_bound(1.0) > 4.0 / 9.0);
    CHECK(std::abs(w_uniqueness_bound(1.0) - (8 + std::sqrt(66.0)) / 18) < 1e-15);
    const auto cert = w_uniqueness_certificate();
    CHECK(cert.passed);
    CHECK(cert.rotation_max_deviation <= 1e-8);
    for (const auto& row : cert.rows) {
        CHECK(row.ok);
        if (row.x1 > 0.0) CHECK(row.analytic_bound > 4.0 / 9.0);
    }
    CHECK(verify_w_uniqueness());
}

TEST_CASE("scan at the smallest resolution") {
    CHECK_THROWS_AS(scan_global_min(31), ValidationError);
    const GlobalMinReport rep = scan_global_min(32);
    CHECK(std::abs(rep.min_g - 4.0 / 9.0) < 1e-9);
    CHECK(rep.gamma1 == doctest::Approx(kPi / 4));
    CHECK(rep.gamma2 == doctest::Approx(kPi / 4));
    CHECK(rep.margin > 0.0);
    CHECK(rep.grid.size() == 32 * 32);
    for (const auto& c : rep.grid) {
        CHECK(c.x3 > -1.0);
        CHECK(c.x3 <= 0.0);
        CHECK(c.g >= rep.min_g);
        CHECK(c.g <= 0.5 + 1e-12);
        CHECK(c.gamma2 <= c.gamma1 + 1e-15);
        CHECK(c.gamma1 + c.gamma2 <= kPi / 2 + 1e-12);
    }
}

TEST_CASE("scan is independent of the worker count") {
    const auto a = scan_global_min(32);
    gm::set_worker_threads(1);
    const auto b = scan_global_min(32);
    gm::set_worker_threads(0);
    REQUIRE(a.grid.size() == b.grid.size());
    for (std::size_t i = 0; i < a.grid.size(); ++i) CHECK(a.grid[i].g == b.grid[i].g);
}

}
