#include "gm/states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gm {

namespace {

constexpr double kAngleSlack = 1e-12;

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void normalize_in_place(Eigen::VectorXcd& amps, const char* what) {
    const double norm = amps.norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kNormRejectTolerance) {
        throw ValidationError(std::string(what) + ": amplitude norm " + fmt_double(norm) +
                              " deviates from 1 by more than 1e-6");
    }
    amps /= norm;
}

} // namespace

// ---------------------------------------------------------------------------

PureState::PureState(Eigen::VectorXcd amplitudes) : n_qubits_(0), amplitudes_(std::move(amplitudes)) {
    const auto len = static_cast<std::uint64_t>(amplitudes_.size());
    if (len < 2 || !std::has_single_bit(len)) {
        throw ValidationError("PureState: amplitude count must be a power of two >= 2");
    }
    n_qubits_ = std::countr_zero(len);
    if (n_qubits_ > kMaxDenseQubits) {
        throw CapacityError("PureState: more than 20 qubits in dense form");
    }
    normalize_in_place(amplitudes_, "PureState");
}

PureState::PureState(int n_qubits, Eigen::VectorXcd amplitudes) : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (n_qubits < 1) {
        throw ValidationError("PureState: n_qubits must be positive");
    }
    if (n_qubits > kMaxDenseQubits) {
        throw CapacityError("PureState: more than 20 qubits in dense form");
    }
    if (amplitudes_.size() != (Eigen::Index{1} << n_qubits)) {
        throw ValidationError("PureState: amplitude count must equal 2^n_qubits");
    }
    normalize_in_place(amplitudes_, "PureState");
}

SymmetricDickeState::SymmetricDickeState(Eigen::VectorXcd amplitudes)
    : amplitudes_(std::move(amplitudes)), non_negative_(true) {
    if (amplitudes_.size() < 2) {
        throw ValidationError("SymmetricDickeState: need N >= 1, i.e. at least two amplitudes");
    }
    normalize_in_place(amplitudes_, "SymmetricDickeState");
    for (Eigen::Index m = 0; m < amplitudes_.size(); ++m) {
        const cplx a = amplitudes_[m];
        if (std::abs(a.imag()) > 1e-12 || a.real() < 0.0) {
            non_negative_ = false;
        }
    }
    if (non_negative_) {
        for (Eigen::Index m = 0; m < amplitudes_.size(); ++m) {
            amplitudes_[m] = cplx(amplitudes_[m].real(), 0.0);
        }
    }
}

SymThreeQubitCanonical::SymThreeQubitCanonical(double g, double t, double h, double gamma)
    : g_(g), t_(t), h_(h), gamma_(gamma) {
    if (!(g >= 0.0) || !(t >= 0.0) || !(h >= 0.0)) {
        throw ValidationError("SymThreeQubitCanonical: g, t, h must be non-negative");
    }
    const double half_pi = std::numbers::pi / 2;
    if (!(std::abs(gamma) <= half_pi + kAngleSlack)) {
        throw ValidationError("SymThreeQubitCanonical: gamma must lie in [-pi/2, pi/2]");
    }
    gamma_ = std::clamp(gamma, -half_pi, half_pi);
    const double norm = std::sqrt(g * g + 3 * t * t + h * h);
    if (std::abs(norm - 1.0) > kNormRejectTolerance) {
        throw ValidationError("SymThreeQubitCanonical: g^2 + 3t^2 + h^2 = " + fmt_double(norm * norm) +
                              " is not 1 (use projected() to renormalize)");
    }
    g_ /= norm;
    t_ /= norm;
    h_ /= norm;
}

SymThreeQubitCanonical SymThreeQubitCanonical::projected(double g, double t, double h, double gamma) {
    const double norm = std::sqrt(g * g + 3 * t * t + h * h);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw ValidationError("SymThreeQubitCanonical: cannot project the zero vector");
    }
    return {g / norm, t / norm, h / norm, gamma};
}

void check_canonical_angles(double gamma1, double gamma2) {
    const double half_pi = std::numbers::pi / 2;
    const bool ok = gamma2 >= -kAngleSlack && gamma1 >= gamma2 - kAngleSlack && gamma1 <= half_pi + kAngleSlack &&
                    gamma1 + gamma2 <= half_pi + kAngleSlack;
    if (!ok) {
        throw ValidationError("rank-two angles must satisfy 0 <= gamma2 <= gamma1 <= pi/2 and gamma1 + gamma2 <= pi/2 (got " +
                              fmt_double(gamma1) + ", " + fmt_double(gamma2) + ")");
    }
}

RankTwoCanonical::RankTwoCanonical(double gamma1, double gamma2, Vec3 x) : gamma1_(gamma1), gamma2_(gamma2), x_(x) {
    check_canonical_angles(gamma1, gamma2);
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    if (!(r2 <= 1.0 + 1e-12)) {
        throw ValidationError("RankTwoCanonical: Bloch vector must satisfy x1^2 + x2^2 + x3^2 <= 1");
    }
}

// ---------------------------------------------------------------------------

BlochVector::BlochVector(Vec3 s) : s_(s) {
    const double n = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
    if (!(std::abs(n - 1.0) <= 1e-10)) {
        throw ValidationError("BlochVector: not a unit vector");
    }
}

BlochVector BlochVector::from_angles(double theta, double phi) {
    return normalized({std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)});
}

BlochVector BlochVector::normalized(Vec3 s) {
    const double n = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
    if (!(n > 0.0)) {
        throw ValidationError("BlochVector: cannot normalize the zero vector");
    }
    return BlochVector({s[0] / n, s[1] / n, s[2] / n});
}

BlochVector BlochVector::from_ket(cplx c0, cplx c1) {
    const cplx off = std::conj(c0) * c1;
    return normalized({2 * off.real(), 2 * off.imag(), std::norm(c0) - std::norm(c1)});
}

Eigen::Matrix2cd BlochVector::density() const {
    const auto& p = pauli();
    return 0.5 * (Eigen::Matrix2cd::Identity() + s_[0] * p[0] + s_[1] * p[1] + s_[2] * p[2]);
}

// ---------------------------------------------------------------------------

std::string_view to_string(CaseTag tag) {
    switch (tag) {
    case CaseTag::Case1: return "Case1";
    case CaseTag::Case21: return "Case21";
    case CaseTag::Case22: return "Case22";
    case CaseTag::Case23: return "Case23";
    }
    return "?";
}

std::string_view to_string(Method method) {
    switch (method) {
    case Method::dicke: return "dicke";
    case Method::sym3q: return "sym3q";
    case Method::rank2_closed: return "rank2_closed";
    case Method::rank2_numeric: return "rank2_numeric";
    case Method::oracle: return "oracle";
    }
    return "?";
}

CaseTag case_tag_from_string(std::string_view name) {
    for (auto tag : {CaseTag::Case1, CaseTag::Case21, CaseTag::Case22, CaseTag::Case23}) {
        if (to_string(tag) == name) return tag;
    }
    throw ValidationError("unknown case tag: " + std::string(name));
}

Method method_from_string(std::string_view name) {
    for (auto m : {Method::dicke, Method::sym3q, Method::rank2_closed, Method::rank2_numeric, Method::oracle}) {
        if (to_string(m) == name) return m;
    }
    throw ValidationError("unknown method tag: " + std::string(name));
}

GmResult GmResult::from_overlap(double G, Method method) {
    GmResult r;
    r.G = std::clamp(G, 0.0, 1.0);
    r.G_squared = r.G * r.G;
    r.E_G = 1.0 - r.G_squared;
    r.method = method;
    return r;
}

GmResult GmResult::from_squared(double G_squared, Method method) {
    GmResult r;
    r.G_squared = std::clamp(G_squared, 0.0, 1.0);
    r.G = std::sqrt(r.G_squared);
    r.E_G = 1.0 - r.G_squared;
    r.method = method;
    return r;
}

// ---------------------------------------------------------------------------

double binomial_sqrt(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

const std::array<Eigen::Matrix2cd, 3>& pauli() {
    static const std::array<Eigen::Matrix2cd, 3> p = [] {
        std::array<Eigen::Matrix2cd, 3> m;
        const cplx i(0.0, 1.0);
        m[0] << 0, 1, 1, 0;
        m[1] << 0, -i, i, 0;
        m[2] << 1, 0, 0, -1;
        return m;
    }();
    return p;
}

PureState dicke_to_dense(const SymmetricDickeState& state) {
    const int n = state.n_qubits();
    if (n > kMaxDenseQubits) {
        throw CapacityError("dicke_to_dense: N > 20 is too large for a dense vector");
    }
    const auto dim = Eigen::Index{1} << n;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    std::vector<double> inv_sqrt_binom(n + 1);
    for (int m = 0; m <= n; ++m) {
        inv_sqrt_binom[m] = 1.0 / binomial_sqrt(n, m);
    }
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        const int m = std::popcount(static_cast<std::uint64_t>(idx));
        out[idx] = state.amplitudes()[m] * inv_sqrt_binom[m];
    }
    return PureState(n, std::move(out));
}

PureState sym3q_to_dense(const SymThreeQubitCanonical& state) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
    v[0b000] = state.g();
    v[0b011] = state.t();
    v[0b101] = state.t();
    v[0b110] = state.t();
    v[0b111] = std::polar(state.h(), state.gamma());
    return PureState(3, std::move(v));
}

SymmetricDickeState sym3q_to_dicke(const SymThreeQubitCanonical& state) {
    Eigen::VectorXcd a(4);
    a << state.g(), 0.0, std::sqrt(3.0) * state.t(), std::polar(state.h(), state.gamma());
    return SymmetricDickeState(std::move(a));
}

Eigen::Matrix4cd rank2_to_matrix(const RankTwoCanonical& state) {
    const double g1 = state.gamma1();
    const double g2 = state.gamma2();
    const double s1 = std::sin(g1), c1 = std::cos(g1), s2 = std::sin(g2), c2 = std::cos(g2);
    const double u = c1 * c2, v = s1 * s2, z1 = s1 * c2, z2 = c1 * s2;

    // sigma acts on the first qubit, tau on the second.
    const auto& p = pauli();
    const Eigen::Matrix2cd I = Eigen::Matrix2cd::Identity();
    auto kron = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
        Eigen::Matrix4cd out;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        return out;
    };

    const Eigen::Matrix4cd sigma0 =
        0.5 * (kron(I, I) + u * kron(p[2], I) + v * kron(I, p[2]) + z1 * kron(p[0], p[0]) + z2 * kron(p[1], p[1]));
    const Eigen::Matrix4cd sigma1 =
        0.5 * (s1 * kron(p[0], I) + c2 * kron(I, p[0]) + s2 * kron(p[0], p[2]) + c1 * kron(p[2], p[0]));
    const Eigen::Matrix4cd sigma2 =
        0.5 * (s2 * kron(p[1], I) + c1 * kron(I, p[1]) + s1 * kron(p[1], p[2]) + c2 * kron(p[2], p[1]));
    const Eigen::Matrix4cd sigma3 =
        0.5 * (v * kron(p[2], I) + u * kron(I, p[2]) - z2 * kron(p[0], p[0]) - z1 * kron(p[1], p[1]) + kron(p[2], p[2]));

    const Vec3& x = state.x();
    return 0.5 * (sigma0 + x[0] * sigma1 + x[1] * sigma2 + x[2] * sigma3);
}

Eigen::MatrixXcd reduced_density_matrix(const PureState& psi, std::span<const int> keep) {
    const int n = psi.n_qubits();
    for (int q : keep) {
        if (q < 0 || q >= n) throw ValidationError("reduced_density_matrix: qubit index out of range");
    }
    const int k = static_cast<int>(keep.size());
    std::vector<int> traced;
    for (int q = 0; q < n; ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
    }
    const int nt = static_cast<int>(traced.size());
    const auto kept_dim = Eigen::Index{1} << k;
    const auto env_dim = Eigen::Index{1} << nt;

    // Reshape psi into a (kept x environment) matrix, then rho = M M^dagger.
    Eigen::MatrixXcd m(kept_dim, env_dim);
    for (Eigen::Index idx = 0; idx < (Eigen::Index{1} << n); ++idx) {
        Eigen::Index row = 0, col = 0;
        for (int j = 0; j < k; ++j) row = (row << 1) | ((idx >> (n - 1 - keep[j])) & 1);
        for (int j = 0; j < nt; ++j) col = (col << 1) | ((idx >> (n - 1 - traced[j])) & 1);
        m(row, col) = psi[idx];
    }
    return m * m.adjoint();
}

PureState apply_local_unitaries(const PureState& psi, std::span<const Eigen::Matrix2cd> unitaries) {
    const int n = psi.n_qubits();
    if (static_cast<int>(unitaries.size()) != n) {
        throw ValidationError("apply_local_unitaries: need one unitary per qubit");
    }
    Eigen::VectorXcd v = psi.amplitudes();
    const Eigen::Index dim = v.size();
    for (int q = 0; q < n; ++q) {
        const Eigen::Index bit = Eigen::Index{1} << (n - 1 - q);
        const Eigen::Matrix2cd& u = unitaries[q];
        for (Eigen::Index idx = 0; idx < dim; ++idx) {
            if (idx & bit) continue;
            const cplx a0 = v[idx], a1 = v[idx | bit];
            v[idx] = u(0, 0) * a0 + u(0, 1) * a1;
            v[idx | bit] = u(1, 0) * a0 + u(1, 1) * a1;
        }
    }
    return PureState(n, std::move(v));
}

} // namespace gm
