#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "gm/states.hpp"

namespace gm {

inline constexpr std::uint64_t kDefaultOracleSeed = 0x5EED0F6E0A11ULL;

struct OracleConfig {
    int restarts = 32;
    int max_iters = 500;
    double tol = 1e-12;
    std::uint64_t seed = kDefaultOracleSeed;

    void validate() const;
};

/**
 * Brute-force G for any dense pure state. Each restart draws one uniform
 * Bloch vector per party, then sweeps the parties: with all others fixed, the
 * optimal state of a party is its normalized partial contraction with the
 * target, so overlaps never decrease. Converged when a sweep improves the
 * overlap by less than cfg.tol. Restart k uses PRNG stream k of cfg.seed,
 * so adding restarts never lowers the result.
 */
GmResult gm_pure_oracle(const PureState& psi, const OracleConfig& cfg = {});

/**
 * Maximizes |<a|^N psi| over |a> = cos(alpha)|0> + e^{i theta} sin(alpha)|1>
 * on a 1024 x 1024 (alpha, theta) grid followed by simplex refinement.
 */
GmResult gm_symmetric_oracle(const SymmetricDickeState& state, const OracleConfig& cfg = {});

/// |<a|^N psi| for the symmetric product built from (alpha, theta).
double symmetric_overlap(const SymmetricDickeState& state, double alpha, double theta);

/**
 * g(rho) = max over pure rho1 (x) rho2 of tr[rho (rho1 (x) rho2)] for a
 * two-qubit density matrix. The inner maximization over rho2 is the largest
 * eigenvalue of tr_1[rho (rho1 (x) I)], leaving a sphere search over rho1.
 * Throws ValidationError unless rho is Hermitian, unit-trace and PSD within 1e-8.
 */
double g_mixed_oracle(const Eigen::Matrix4cd& rho, const OracleConfig& cfg = {});

/// Largest eigenvalue of the conditional operator tr_1[rho (rho1 (x) I)].
double conditional_max_eigenvalue(const Eigen::Matrix4cd& rho, const BlochVector& s1);

} // namespace gm
