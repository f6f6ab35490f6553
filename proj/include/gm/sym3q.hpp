#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gm/oracle.hpp"
#include "gm/states.hpp"

namespace gm {

/// The two closed forms for tan(theta/2) in terms of phi.
enum class ThetaBranch {
    A, ///< tan(theta/2) = g / (h csc(2 phi) sin(gamma - phi))
    B, ///< tan(theta/2) = -t / (h csc(2 phi) sin(gamma + phi))
};

/// Left minus right of the three stationarity equations after lambda elimination.
struct StationaryResidual {
    double r1 = 0.0;
    double r2 = 0.0;
    double r3 = 0.0;
    double lambda = 0.0;

    double max_abs() const;
};

/**
 * Residual of the Bloch-sphere stationarity conditions at s = (sin theta cos
 * phi, sin theta sin phi, cos theta). lambda is taken from the third equation
 * when |cos theta| > 1e-8, otherwise from the first (or second) one.
 */
StationaryResidual stationary_residual(const SymThreeQubitCanonical& state, double phi, double theta);

/// G_j^2 candidate value at (phi, theta).
double gm_candidate(const SymThreeQubitCanonical& state, double phi, double theta);

/// theta = 0 candidate, G^2 = g^2.
CandidateRecord candidate_case1(const SymThreeQubitCanonical& state);

struct Case21Outcome {
    std::optional<CandidateRecord> candidate;
    std::string diagnostic;
    /// theta from both closed-form branches, when they exist.
    std::optional<double> theta_a;
    std::optional<double> theta_b;
};

/// The tan(phi) = (t+g)/(t-g) tan(gamma) candidate; absent when degenerate or not stationary.
Case21Outcome candidate_case21(const SymThreeQubitCanonical& state);

/// theta in (0, pi) from the branch formula, or nullopt at poles / non-positive tan(theta/2).
std::optional<double> theta_from_phi(const SymThreeQubitCanonical& state, double phi, ThetaBranch branch);

struct StationaryPoint {
    double phi;
    double theta;
    double residual;
};

/**
 * Stationary points on one theta branch: the lambda-eliminated first equation
 * (with its cos theta denominator cleared) is scanned in phi, with the circle
 * cut at multiples of pi/2 and at the branch pole, and sign changes are
 * bisected to full precision. Roots whose full residual exceeds 1e-8 get a
 * Newton polish in (phi, theta) and are discarded if it fails. Roots whose
 * Bloch vectors lie within 1e-7 are merged; roots within 1e-6 of the Case 1
 * point (theta = 0) are dropped.
 */
std::vector<StationaryPoint> find_case2_roots(const SymThreeQubitCanonical& state, ThetaBranch branch);

/// True when a parameter sits on an excluded value (g, t or h zero, gamma in {0, +-pi/2}).
bool sym3q_is_boundary(const SymThreeQubitCanonical& state);

/**
 * G^2 of the canonical symmetric three-qubit state as the maximum over all
 * stationary-point candidates (Case 1, Case 2.1, and both root branches).
 * In boundary regimes, and within 1e-8 of one (diagnostics["near_boundary"]),
 * the symmetric oracle is also run; if it beats the candidate maximum by more
 * than 1e-9 its value is returned and diagnostics["oracle_override"] is set.
 */
GmResult gm_sym3q(const SymThreeQubitCanonical& state, const OracleConfig& cfg = {});

} // namespace gm
