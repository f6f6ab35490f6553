#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "gm/states.hpp"
#include "support/fixtures.hpp"

using namespace gm;
using namespace gm::test;

namespace {

/// Dense vector with its qubits reordered: new qubit k is old qubit perm[k].
Eigen::VectorXcd permute_qubits(const Eigen::VectorXcd& v, int n, const std::vector<int>& perm) {
    Eigen::VectorXcd out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        Eigen::Index j = 0;
        for (int k = 0; k < n; ++k) {
            const int bit = (i >> (n - 1 - perm[k])) & 1;
            j |= static_cast<Eigen::Index>(bit) << (n - 1 - k);
        }
        out[j] = v[i];
    }
    return out;
}

Eigen::Vector4d sorted_eigenvalues(const Eigen::Matrix4cd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m);
    return es.eigenvalues();
}

} // namespace

TEST_SUITE("states") {

TEST_CASE("dicke_to_dense places a_m / sqrt(C(N,m)) on every weight-m bitstring") {
    const PureState one = dicke_to_dense(dicke({1, 0}));
    CHECK(one.n_qubits() == 1);
    CHECK(std::abs(one[0] - 1.0) < 1e-15);
    CHECK(std::abs(one[1]) < 1e-15);

    const PureState w = dicke_to_dense(w_dicke());
    for (int i = 0; i < 8; ++i) {
        const bool weight_one = i == 1 || i == 2 || i == 4;
        CHECK(std::abs(w[i] - (weight_one ? 1.0 / std::sqrt(3.0) : 0.0)) < 1e-15);
    }

    const PureState ghz = dicke_to_dense(ghz_dicke());
    CHECK(std::abs(ghz[0] - kInvSqrt2) < 1e-15);
    CHECK(std::abs(ghz[7] - kInvSqrt2) < 1e-15);
    CHECK(ghz.amplitudes().segment(1, 6).norm() < 1e-15);
}

TEST_CASE("dicke_to_dense refuses more than 20 qubits") {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(22);
    a[0] = 1.0;
    CHECK_THROWS_AS(dicke_to_dense(SymmetricDickeState(a)), CapacityError);
}

TEST_CASE("dicke_to_dense is invariant under qubit permutations") {
    Xorshift64Star rng(11);
    for (int sample = 0; sample < 20; ++sample) {
        const int n = 2 + sample % 4;
        Eigen::VectorXcd a(n + 1);
        for (int m = 0; m <= n; ++m) a[m] = cplx(rng.normal(), rng.normal());
        a.normalize();
        const PureState psi = dicke_to_dense(SymmetricDickeState(a));
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int k = n - 1; k > 0; --k) std::swap(perm[k], perm[static_cast<int>(rng.uniform() * (k + 1))]);
        const Eigen::VectorXcd q = permute_qubits(psi.amplitudes(), n, perm);
        CHECK((q - psi.amplitudes()).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("sym3q_to_dense follows the canonical form literally") {
    const PureState product = sym3q_to_dense(SymThreeQubitCanonical(1, 0, 0, 0));
    CHECK(std::abs(product[0] - 1.0) < 1e-15);

    const double t = 1 / std::sqrt(3.0);
    const PureState w = sym3q_to_dense(SymThreeQubitCanonical(0, t, 0, 0));
    for (int i : {3, 5, 6}) CHECK(std::abs(w[i] - t) < 1e-15);
    CHECK(std::abs(w[0]) + std::abs(w[7]) < 1e-15);

    const PureState ghz = sym3q_to_dense(SymThreeQubitCanonical(kInvSqrt2, 0, kInvSqrt2, kPi / 2));
    CHECK(std::abs(ghz[0] - kInvSqrt2) < 1e-15);
    CHECK(std::abs(ghz[7] - cplx(0, kInvSqrt2)) < 1e-15);
}

TEST_CASE("sym3q_to_dicke matches the dense form") {
    const SymThreeQubitCanonical s = SymThreeQubitCanonical::projected(0.5, 0.4, 0.3, -0.9);
    const PureState a = sym3q_to_dense(s);
    const PureState b = dicke_to_dense(sym3q_to_dicke(s));
    CHECK((a.amplitudes() - b.amplitudes()).norm() < 1e-14);
}

TEST_CASE("rank2_to_matrix examples") {
    const Eigen::Matrix4cd p00 = rank2_to_matrix(RankTwoCanonical(0, 0, {0, 0, 1}));
    Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
    expected(0, 0) = 1.0;
    CHECK((p00 - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs((p00 * p00).trace() - 1.0) < 1e-12);

    const Eigen::Matrix4cd w = rank2_to_matrix(RankTwoCanonical(kPi / 4, kPi / 4, {0, 0, -1.0 / 3}));
    Eigen::Vector4cd psi_plus(0, kInvSqrt2, kInvSqrt2, 0);
    Eigen::Matrix4cd w_expected = (2.0 / 3.0) * psi_plus * psi_plus.adjoint();
    w_expected(0, 0) += 1.0 / 3.0;
    CHECK((w - w_expected).cwiseAbs().maxCoeff() < 1e-12);

    const Eigen::Matrix4cd bell = rank2_to_matrix(RankTwoCanonical(kPi / 4, kPi / 4, {0, 0, -1}));
    CHECK((bell - psi_plus * psi_plus.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("rank2_to_matrix is a rank-two density matrix") {
    Xorshift64Star rng(12);
    for (int sample = 0; sample < 200; ++sample) {
        const auto [g1, g2] = random_canonical_angles(rng);
        const Eigen::Matrix4cd rho = rank2_to_matrix(RankTwoCanonical(g1, g2, random_ball(rng)));
        CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
        const Eigen::Vector4d ev = sorted_eigenvalues(rho);
        CHECK(ev.minCoeff() >= -1e-10);
        CHECK(ev.maxCoeff() <= 1 + 1e-10);
        CHECK(std::abs(ev.sum() - 1.0) <= 1e-10);
        CHECK((ev.array() > 1e-10).count() <= 2);
    }
}

TEST_CASE("sign flips of x1, x2 under sigma3 tau3 and complex conjugation") {
    Eigen::Matrix4cd zz = Eigen::Matrix4cd::Zero();
    zz.diagonal() << 1, -1, -1, 1;
    Xorshift64Star rng(13);
    for (int sample = 0; sample < 50; ++sample) {
        const auto [g1, g2] = random_canonical_angles(rng);
        const Vec3 x = random_ball(rng);
        const Eigen::Matrix4cd rho = rank2_to_matrix(RankTwoCanonical(g1, g2, x));
        const Eigen::Matrix4cd flipped = rank2_to_matrix(RankTwoCanonical(g1, g2, {-x[0], -x[1], x[2]}));
        CHECK((zz * rho * zz - flipped).cwiseAbs().maxCoeff() <= 1e-12);
        const Eigen::Matrix4cd conj = rank2_to_matrix(RankTwoCanonical(g1, g2, {x[0], -x[1], x[2]}));
        CHECK((rho.conjugate() - conj).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("PureState validation") {
    Eigen::VectorXcd three(3);
    three << 1, 0, 0;
    CHECK_THROWS_AS(PureState{three}, ValidationError);

    Eigen::VectorXcd off(2);
    off << 1.0 + 1e-5, 0;
    CHECK_THROWS_AS(PureState{off}, ValidationError);

    Eigen::VectorXcd close(2);
    close << 0.6, 0.8 * (1 + 1e-8);
    const PureState s(close);
    CHECK(std::abs(s.amplitudes().norm() - 1.0) <= 1e-9);

    Eigen::VectorXcd four(4);
    four << 1, 0, 0, 0;
    CHECK_THROWS_AS(PureState(3, four), ValidationError);
    CHECK(PureState(2, four).n_qubits() == 2);
}

TEST_CASE("SymmetricDickeState non-negative flag") {
    CHECK(w_dicke().non_negative());
    CHECK_FALSE(dicke({kInvSqrt2, -kInvSqrt2}).non_negative());
    CHECK_FALSE(dicke({kInvSqrt2, cplx(0, kInvSqrt2)}).non_negative());
    CHECK(dicke({kInvSqrt2, cplx(kInvSqrt2, 1e-13)}).non_negative());
    CHECK(std::abs(w_dicke().amplitudes().norm() - 1.0) < 1e-9);
}

TEST_CASE("SymThreeQubitCanonical enforces g^2 + 3t^2 + h^2 = 1") {
    CHECK_THROWS_AS(SymThreeQubitCanonical(0.5, 0.5, 0.5, 0.0), ValidationError);
    CHECK_THROWS_AS(SymThreeQubitCanonical(-0.1, 0.5, 0.5, 0.0), ValidationError);
    CHECK_THROWS_AS(SymThreeQubitCanonical(1, 0, 0, 2.0), ValidationError);
    const auto p = SymThreeQubitCanonical::projected(0.5, 0.5, 0.5, 0.0);
    CHECK(std::abs(p.g() * p.g() + 3 * p.t() * p.t() + p.h() * p.h() - 1.0) < 1e-12);
}

TEST_CASE("RankTwoCanonical enforces the canonical triangle and the Bloch ball") {
    CHECK_THROWS_AS(RankTwoCanonical(0.2, 0.3, {0, 0, 0}), ValidationError);
    CHECK_THROWS_AS(RankTwoCanonical(1.2, 0.5, {0, 0, 0}), ValidationError);
    CHECK_THROWS_AS(RankTwoCanonical(0.5, 0.2, {0.8, 0.8, 0}), ValidationError);
    CHECK_NOTHROW(RankTwoCanonical(kPi / 2, 0, {0, 0, 1}));
    CHECK_NOTHROW(RankTwoCanonical(kPi / 4, kPi / 4, {0, 0, -1}));
}

TEST_CASE("BlochVector") {
    CHECK_THROWS_AS(BlochVector({1, 1, 0}), ValidationError);
    const BlochVector s = BlochVector::from_ket(kInvSqrt2, cplx(0, kInvSqrt2));
    CHECK(std::abs(s[1] - 1.0) < 1e-12);
    const Eigen::Matrix2cd rho = BlochVector::from_angles(0.4, 1.1).density();
    CHECK(std::abs(rho.trace() - 1.0) < 1e-14);
    CHECK(std::abs((rho * rho).trace() - 1.0) < 1e-14);
}

TEST_CASE("GmResult keeps E_G = 1 - G^2 exactly") {
    for (double g2 : {0.0, 4.0 / 9.0, 0.5, 1.0}) {
        const GmResult r = GmResult::from_squared(g2, Method::oracle);
        CHECK(r.E_G == 1.0 - r.G_squared);
        CHECK(r.G >= 0.0);
        CHECK(r.G <= 1.0);
    }
    const GmResult r = GmResult::from_overlap(2.0 / 3.0, Method::dicke);
    CHECK(r.E_G == 1.0 - r.G_squared);
}

TEST_CASE("reduced_density_matrix of W") {
    const std::array<int, 2> keep{1, 2};
    const Eigen::MatrixXcd rho = reduced_density_matrix(dicke_to_dense(w_dicke()), keep);
    const Eigen::Matrix4cd expected = rank2_to_matrix(RankTwoCanonical(kPi / 4, kPi / 4, {0, 0, -1.0 / 3}));
    CHECK((rho - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("tag names round-trip") {
    for (auto m : {Method::dicke, Method::sym3q, Method::rank2_closed, Method::rank2_numeric, Method::oracle}) {
        CHECK(method_from_string(to_string(m)) == m);
    }
    for (auto c : {CaseTag::Case1, CaseTag::Case21, CaseTag::Case22, CaseTag::Case23}) {
        CHECK(case_tag_from_string(to_string(c)) == c);
    }
    CHECK_THROWS_AS(method_from_string("nope"), ValidationError);
}

}
