#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "gm/rng.hpp"
#include "gm/states.hpp"

namespace gm::test {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2;

inline SymmetricDickeState dicke(std::initializer_list<cplx> amps) {
    Eigen::VectorXcd a(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index i = 0;
    for (cplx v : amps) a[i++] = v;
    return SymmetricDickeState(a);
}

inline SymmetricDickeState w_dicke() { return dicke({0, 1, 0, 0}); }
inline SymmetricDickeState ghz_dicke() { return dicke({kInvSqrt2, 0, 0, kInvSqrt2}); }

/// Dicke state |m, N>.
inline SymmetricDickeState single_dicke(int n, int m) {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(n + 1);
    a[m] = 1.0;
    return SymmetricDickeState(a);
}

inline PureState random_pure(Xorshift64Star& rng, int n) {
    Eigen::VectorXcd a(Eigen::Index{1} << n);
    for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = cplx(rng.normal(), rng.normal());
    a.normalize();
    return PureState(n, a);
}

/// Haar-distributed 2x2 unitary from a normalized complex Gaussian column pair.
inline Eigen::Matrix2cd random_unitary(Xorshift64Star& rng) {
    Eigen::Matrix2cd z;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) z(i, j) = cplx(rng.normal(), rng.normal());
    Eigen::HouseholderQR<Eigen::Matrix2cd> qr(z);
    Eigen::Matrix2cd q = qr.householderQ();
    const Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < 2; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
    return q;
}

/// Uniform (gamma1, gamma2) on the canonical triangle 0 <= g2 <= g1, g1 + g2 <= pi/2.
inline std::array<double, 2> random_canonical_angles(Xorshift64Star& rng) {
    for (;;) {
        const double g1 = rng.uniform(0.0, kPi / 2);
        const double g2 = rng.uniform(0.0, kPi / 4);
        if (g2 <= g1 && g1 + g2 <= kPi / 2) return {g1, g2};
    }
}

/// Uniform point in the ball of the given radius.
inline Vec3 random_ball(Xorshift64Star& rng, double radius = 1.0) {
    for (;;) {
        const Vec3 v{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const double r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if (r2 <= 1.0) return {radius * v[0], radius * v[1], radius * v[2]};
    }
}

/// g, t, h > 0.05 and 0.05 < |gamma| < pi/2 - 0.05.
inline SymThreeQubitCanonical random_generic_sym3q(Xorshift64Star& rng) {
    for (;;) {
        const double g = std::abs(rng.normal()), t = std::abs(rng.normal()) / std::sqrt(3.0), h = std::abs(rng.normal());
        const double norm = std::sqrt(g * g + 3 * t * t + h * h);
        if (g / norm <= 0.05 || t / norm <= 0.05 || h / norm <= 0.05) continue;
        const double mag = rng.uniform(0.05, kPi / 2 - 0.05);
        const double gamma = rng.uniform() < 0.5 ? -mag : mag;
        return SymThreeQubitCanonical::projected(g, t, h, gamma);
    }
}

/**
 * Bloch-form stationarity of tr[rho_AB (rho_s (x) rho_s)] for a symmetric
 * three-qubit state: with r_i = tr[rho_A sigma_i] and G_ij = tr[rho_AB
 * sigma_i (x) sigma_j], s is stationary iff v = r + G s is parallel to s.
 * Returns max |v - (s.v) s|.
 */
inline double bloch_stationarity_residual(const PureState& phi, const Vec3& s) {
    const std::array<int, 2> ab{0, 1};
    const std::array<int, 1> a{0};
    const Eigen::MatrixXcd rho_ab = reduced_density_matrix(phi, ab);
    const Eigen::MatrixXcd rho_a = reduced_density_matrix(phi, a);
    const auto& p = pauli();
    Eigen::Vector3d r, v;
    Eigen::Matrix3d G;
    for (int i = 0; i < 3; ++i) {
        r[i] = (rho_a * p[i]).trace().real();
        for (int j = 0; j < 3; ++j) {
            Eigen::Matrix4cd k;
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y)
                    for (int z = 0; z < 2; ++z)
                        for (int w = 0; w < 2; ++w) k(2 * x + z, 2 * y + w) = p[i](x, y) * p[j](z, w);
            G(i, j) = (rho_ab * k).trace().real();
        }
    }
    const Eigen::Vector3d sv(s[0], s[1], s[2]);
    v = r + G * sv;
    return (v - sv.dot(v) * sv).cwiseAbs().maxCoeff();
}

} // namespace gm::test
