#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gm/errors.hpp"

namespace gm {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr int kMaxDenseQubits = 20;

/// Inputs whose norm is off by more than this are rejected; smaller deviations
/// are renormalized silently.
inline constexpr double kNormRejectTolerance = 1e-6;

/**
 * Dense pure state on n qubits. Amplitude index bits are read with qubit 0 as
 * the most significant bit, so |q0 q1 ... q_{n-1}> lives at
 * sum_k q_k 2^{n-1-k}.
 */
class PureState {
public:
    explicit PureState(Eigen::VectorXcd amplitudes);
    PureState(int n_qubits, Eigen::VectorXcd amplitudes);

    int n_qubits() const noexcept { return n_qubits_; }
    const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
    cplx operator[](Eigen::Index i) const { return amplitudes_[i]; }

private:
    int n_qubits_;
    Eigen::VectorXcd amplitudes_;
};

/// Symmetric N-qubit state sum_m a_m |m,N>, with |m,N> the Dicke state of m ones.
class SymmetricDickeState {
public:
    explicit SymmetricDickeState(Eigen::VectorXcd amplitudes);

    int n_qubits() const noexcept { return static_cast<int>(amplitudes_.size()) - 1; }
    const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
    /// True iff every a_m is real (|Im| <= 1e-12) and non-negative.
    bool non_negative() const noexcept { return non_negative_; }

private:
    Eigen::VectorXcd amplitudes_;
    bool non_negative_;
};

/// g|000> + t(|011>+|101>+|110>) + e^{i gamma} h |111>, g^2 + 3t^2 + h^2 = 1.
class SymThreeQubitCanonical {
public:
    SymThreeQubitCanonical(double g, double t, double h, double gamma);

    /// Scales (g, t, h) onto g^2 + 3t^2 + h^2 = 1 regardless of the deviation.
    static SymThreeQubitCanonical projected(double g, double t, double h, double gamma);

    double g() const noexcept { return g_; }
    double t() const noexcept { return t_; }
    double h() const noexcept { return h_; }
    double gamma() const noexcept { return gamma_; }

private:
    double g_, t_, h_, gamma_;
};

/// Two-qubit rank-two state in its canonical subspace (gamma1, gamma2) with
/// subspace Bloch vector x.
class RankTwoCanonical {
public:
    RankTwoCanonical(double gamma1, double gamma2, Vec3 x);

    double gamma1() const noexcept { return gamma1_; }
    double gamma2() const noexcept { return gamma2_; }
    const Vec3& x() const noexcept { return x_; }

private:
    double gamma1_, gamma2_;
    Vec3 x_;
};

/// Validates 0 <= gamma2 <= gamma1 <= pi/2 and gamma1 + gamma2 <= pi/2.
void check_canonical_angles(double gamma1, double gamma2);

/// Unit Bloch vector of a pure qubit state.
class BlochVector {
public:
    explicit BlochVector(Vec3 s);
    /// (sin theta cos phi, sin theta sin phi, cos theta)
    static BlochVector from_angles(double theta, double phi);
    /// Normalizes any nonzero vector.
    static BlochVector normalized(Vec3 s);
    /// Bloch vector of the normalized qubit ket (c0, c1).
    static BlochVector from_ket(cplx c0, cplx c1);

    const Vec3& s() const noexcept { return s_; }
    double operator[](std::size_t i) const { return s_[i]; }
    /// (I + s.sigma) / 2
    Eigen::Matrix2cd density() const;

private:
    Vec3 s_;
};

enum class CaseTag { Case1, Case21, Case22, Case23 };
enum class Method { dicke, sym3q, rank2_closed, rank2_numeric, oracle };

std::string_view to_string(CaseTag tag);
std::string_view to_string(Method method);
CaseTag case_tag_from_string(std::string_view name);
Method method_from_string(std::string_view name);

struct CandidateRecord {
    double phi = 0.0;
    double theta = 0.0;
    double lambda = 0.0;
    double G_j_squared = 0.0;
    CaseTag case_tag = CaseTag::Case1;
    double residual = 0.0;
};

/**
 * Result of any GM solver. Built through from_overlap / from_squared so that
 * E_G = 1 - G_squared holds exactly.
 */
struct GmResult {
    double G = 0.0;
    double G_squared = 0.0;
    double E_G = 1.0;
    std::vector<BlochVector> closest_product;
    std::vector<CandidateRecord> candidates;
    Method method = Method::oracle;
    /// Solver warning (e.g. oracle non-convergence in every restart).
    bool warning = false;
    /// Solver-specific scalars: optimizer alpha, restart counts, override flags.
    std::map<std::string, double> diagnostics;

    static GmResult from_overlap(double G, Method method);
    static GmResult from_squared(double G_squared, Method method);
};

// Conversions

PureState dicke_to_dense(const SymmetricDickeState& state);
PureState sym3q_to_dense(const SymThreeQubitCanonical& state);
/// Dicke amplitudes (g, 0, sqrt(3) t, e^{i gamma} h) of the canonical state.
SymmetricDickeState sym3q_to_dicke(const SymThreeQubitCanonical& state);
Eigen::Matrix4cd rank2_to_matrix(const RankTwoCanonical& state);

/// sqrt(C(n, k)) via log-gamma.
double binomial_sqrt(int n, int k);

/// Pauli matrices sigma_1..3 (index 0..2).
const std::array<Eigen::Matrix2cd, 3>& pauli();

/// Reduced density matrix on the listed qubits (kept in the given order).
Eigen::MatrixXcd reduced_density_matrix(const PureState& psi, std::span<const int> keep);

/// Applies one single-qubit unitary per party.
PureState apply_local_unitaries(const PureState& psi, std::span<const Eigen::Matrix2cd> unitaries);

} // namespace gm
