#include <doctest.h>

#include "gm/oracle.hpp"
#include "gm/parallel.hpp"
#include "support/fixtures.hpp"

using namespace gm;
using namespace gm::test;

TEST_SUITE("oracle") {

TEST_CASE("pure oracle examples") {
    CHECK(gm_pure_oracle(dicke_to_dense(dicke({1, 0, 0, 0}))).G == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(gm_pure_oracle(dicke_to_dense(w_dicke())).G_squared - 4.0 / 9.0) <= 1e-9);
    CHECK(std::abs(gm_pure_oracle(dicke_to_dense(ghz_dicke())).G_squared - 0.5) <= 1e-9);
}

TEST_CASE("pure oracle is deterministic and independent of worker count") {
    Xorshift64Star rng(71);
    const PureState psi = random_pure(rng, 4);
    const GmResult a = gm_pure_oracle(psi);
    set_worker_threads(1);
    const GmResult b = gm_pure_oracle(psi);
    set_worker_threads(3);
    const GmResult c = gm_pure_oracle(psi);
    set_worker_threads(0);
    CHECK(a.G == b.G);
    CHECK(a.G == c.G);
    CHECK(a.diagnostics == b.diagnostics);
}

TEST_CASE("more restarts never lower the result") {
    Xorshift64Star rng(72);
    for (int i = 0; i < 5; ++i) {
        const PureState psi = random_pure(rng, 5);
        double prev = 0.0;
        for (int restarts : {1, 2, 4, 8, 16}) {
            OracleConfig cfg;
            cfg.restarts = restarts;
            const double g = gm_pure_oracle(psi, cfg).G;
            CHECK(g >= prev);
            prev = g;
        }
    }
}

TEST_CASE("a different seed finds the same maximum") {
    Xorshift64Star rng(73);
    const PureState psi = random_pure(rng, 3);
    OracleConfig cfg;
    cfg.seed = 12345;
    CHECK(std::abs(gm_pure_oracle(psi).G - gm_pure_oracle(psi, cfg).G) <= 1e-9);
}

TEST_CASE("configuration validation") {
    OracleConfig cfg;
    cfg.restarts = 0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = {};
    cfg.tol = 0.0;
    CHECK_THROWS_AS(gm_pure_oracle(dicke_to_dense(w_dicke()), cfg), ValidationError);
}

TEST_CASE("non-convergence sets the warning flag") {
    Xorshift64Star rng(74);
    OracleConfig cfg;
    cfg.max_iters = 1;
    cfg.restarts = 2;
    const GmResult r = gm_pure_oracle(random_pure(rng, 6), cfg);
    CHECK(r.warning);
    CHECK(r.G > 0.0);
}

TEST_CASE("consistency triangle G^2 = g(reduced pair)") {
    Xorshift64Star rng(75);
    for (int i = 0; i < 5; ++i) {
        const PureState psi = random_pure(rng, 3);
        const double g2 = gm_pure_oracle(psi).G_squared;
        for (auto keep : {std::array<int, 2>{0, 1}, std::array<int, 2>{0, 2}, std::array<int, 2>{1, 2}}) {
            const Eigen::Matrix4cd rho = reduced_density_matrix(psi, keep);
            CHECK(std::abs(g_mixed_oracle(rho) - g2) <= 1e-7);
        }
    }
}

TEST_CASE("local unitaries do not change G") {
    Xorshift64Star rng(76);
    for (int i = 0; i < 5; ++i) {
        const PureState psi = random_pure(rng, 3 + i % 2);
        std::vector<Eigen::Matrix2cd> us;
        for (int q = 0; q < psi.n_qubits(); ++q) us.push_back(random_unitary(rng));
        const PureState rotated = apply_local_unitaries(psi, us);
        CHECK(std::abs(gm_pure_oracle(psi).G - gm_pure_oracle(rotated).G) <= 1e-8);
    }
}

TEST_CASE("symmetric oracle examples") {
    CHECK(std::abs(gm_symmetric_oracle(w_dicke()).G_squared - 4.0 / 9.0) <= 1e-12);
    CHECK(std::abs(gm_symmetric_oracle(ghz_dicke()).G_squared - 0.5) <= 1e-12);
    // complex amplitudes are fine here
    const SymmetricDickeState c = dicke({0.6, cplx(0, 0.8)});
    CHECK(std::abs(gm_symmetric_oracle(c).G_squared - 1.0) <= 1e-12);
}

TEST_CASE("theta = 0 attains the symmetric maximum for non-negative amplitudes") {
    // theta itself is degenerate for some states (single Dicke, GHZ), so the
    // check is on the value: the best overlap at theta = 0 equals the maximum.
    Xorshift64Star rng(77);
    for (int i = 0; i < 10; ++i) {
        const int n = 2 + i % 5;
        Eigen::VectorXcd a(n + 1);
        for (int m = 0; m <= n; ++m) a[m] = std::abs(rng.normal());
        a.normalize();
        const SymmetricDickeState s(a);
        const GmResult r = gm_symmetric_oracle(s);
        const double alpha = r.diagnostics.at("alpha");
        double best_theta0 = 0.0;
        for (int k = 0; k <= 4096; ++k) best_theta0 = std::max(best_theta0, symmetric_overlap(s, kPi / 2 * k / 4096, 0.0));
        best_theta0 = std::max(best_theta0, symmetric_overlap(s, alpha, 0.0));
        CHECK(std::abs(best_theta0 - r.G) <= 1e-8);
    }
    // where theta is determined, it is zero
    Eigen::VectorXcd a(4);
    a << 0.5, 0.5, 0.5, 0.5;
    a.normalize();
    const GmResult r = gm_symmetric_oracle(SymmetricDickeState(a));
    const double theta = std::remainder(r.diagnostics.at("theta"), 2 * kPi);
    CHECK(std::abs(theta) <= 1e-8);
}

TEST_CASE("symmetric and multi-party oracles agree for N <= 6") {
    Xorshift64Star rng(78);
    for (int n = 2; n <= 6; ++n) {
        Eigen::VectorXcd a(n + 1);
        for (int m = 0; m <= n; ++m) a[m] = cplx(rng.normal(), rng.normal());
        a.normalize();
        const SymmetricDickeState s(a);
        CHECK(std::abs(gm_symmetric_oracle(s).G - gm_pure_oracle(dicke_to_dense(s)).G) <= 1e-7);
    }
}

TEST_CASE("mixed oracle examples") {
    CHECK(std::abs(g_mixed_oracle(rank2_to_matrix(RankTwoCanonical(kPi / 4, kPi / 4, {0, 0, -1.0 / 3}))) - 4.0 / 9.0) <= 1e-8);
    CHECK(std::abs(g_mixed_oracle(Eigen::Matrix4cd::Identity() / 4.0) - 0.25) <= 1e-12);
    Eigen::Vector4cd bell(0, kInvSqrt2, kInvSqrt2, 0);
    CHECK(std::abs(g_mixed_oracle(bell * bell.adjoint()) - 0.5) <= 1e-8);
}

TEST_CASE("mixed oracle rejects non-states") {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho.diagonal() << 0.5, 0.5, 0.5, -0.5;
    CHECK_THROWS_AS(g_mixed_oracle(rho), ValidationError);
    rho.diagonal() << 0.5, 0.5, 0.5, 0.5;
    CHECK_THROWS_AS(g_mixed_oracle(rho), ValidationError);
    rho = Eigen::Matrix4cd::Identity() / 4.0;
    rho(0, 1) = 0.1;
    CHECK_THROWS_AS(g_mixed_oracle(rho), ValidationError);
}

}
