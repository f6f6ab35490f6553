#include "gm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "gm/numeric.hpp"
#include "gm/parallel.hpp"
#include "gm/rng.hpp"

namespace gm {

void OracleConfig::validate() const {
    if (restarts < 1) throw ValidationError("OracleConfig: restarts must be >= 1");
    if (max_iters < 1) throw ValidationError("OracleConfig: max_iters must be >= 1");
    if (!(tol > 0.0)) throw ValidationError("OracleConfig: tol must be > 0");
}

namespace {

using Qubit = Eigen::Vector2cd;

Qubit ket_from_bloch(const Vec3& s) {
    const double theta = std::acos(std::clamp(s[2], -1.0, 1.0));
    const double phi = std::atan2(s[1], s[0]);
    return {std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)};
}

/// Tensor product of conj(parties[first..last)), qubit `first` most significant.
Eigen::VectorXcd conj_product(const std::vector<Qubit>& parties, int first, int last) {
    Eigen::VectorXcd out(1);
    out[0] = 1.0;
    for (int j = first; j < last; ++j) {
        Eigen::VectorXcd next(out.size() * 2);
        for (Eigen::Index i = 0; i < out.size(); ++i) {
            next[2 * i] = out[i] * std::conj(parties[j][0]);
            next[2 * i + 1] = out[i] * std::conj(parties[j][1]);
        }
        out = std::move(next);
    }
    return out;
}

/// v[b] = sum over the other parties of conj(product) * psi, party k left open.
Qubit partial_contraction(const Eigen::VectorXcd& psi, int n, const std::vector<Qubit>& parties, int k) {
    const Eigen::VectorXcd left = conj_product(parties, 0, k);
    const Eigen::VectorXcd right = conj_product(parties, k + 1, n);
    const Eigen::Index rdim = right.size();
    Qubit v = Qubit::Zero();
    for (Eigen::Index l = 0; l < left.size(); ++l) {
        for (int b = 0; b < 2; ++b) {
            const Eigen::Index base = (l * 2 + b) * rdim;
            cplx acc = 0.0;
            for (Eigen::Index r = 0; r < rdim; ++r) acc += psi[base + r] * right[r];
            v[b] += left[l] * acc;
        }
    }
    return v;
}

struct RestartOutcome {
    double overlap = 0.0;
    std::vector<Qubit> parties;
    int sweeps = 0;
    bool converged = false;
};

RestartOutcome run_restart(const PureState& psi, const OracleConfig& cfg, int restart) {
    const int n = psi.n_qubits();
    Xorshift64Star rng(cfg.seed, static_cast<std::uint64_t>(restart));
    RestartOutcome out;
    out.parties.reserve(n);
    for (int k = 0; k < n; ++k) out.parties.push_back(ket_from_bloch(rng.bloch()));

    double overlap = 0.0;
    for (int sweep = 1; sweep <= cfg.max_iters; ++sweep) {
        const double before = overlap;
        for (int k = 0; k < n; ++k) {
            const Qubit v = partial_contraction(psi.amplitudes(), n, out.parties, k);
            const double norm = v.norm();
            if (norm > 0.0) {
                out.parties[k] = v / norm;
            }
            if (norm < overlap - 1e-12) {
                throw std::logic_error("gm_pure_oracle: overlap decreased during a sweep");
            }
            overlap = std::max(overlap, norm);
        }
        out.sweeps = sweep;
        if (sweep > 1 && overlap - before < cfg.tol) {
            out.converged = true;
            break;
        }
    }
    out.overlap = overlap;
    return out;
}

} // namespace

GmResult gm_pure_oracle(const PureState& psi, const OracleConfig& cfg) {
    cfg.validate();
    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
    parallel_for(outcomes.size(), [&](std::size_t r) { outcomes[r] = run_restart(psi, cfg, static_cast<int>(r)); });

    std::size_t best = 0;
    int converged = 0;
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
        converged += outcomes[r].converged ? 1 : 0;
        if (outcomes[r].overlap > outcomes[best].overlap) best = r;
    }

    GmResult result = GmResult::from_overlap(outcomes[best].overlap, Method::oracle);
    for (const Qubit& q : outcomes[best].parties) {
        result.closest_product.push_back(BlochVector::from_ket(q[0], q[1]));
    }
    result.warning = converged == 0;
    result.diagnostics["restarts"] = cfg.restarts;
    result.diagnostics["converged_restarts"] = converged;
    result.diagnostics["best_restart"] = static_cast<double>(best);
    result.diagnostics["best_sweeps"] = outcomes[best].sweeps;
    return result;
}

// ---------------------------------------------------------------------------

double symmetric_overlap(const SymmetricDickeState& state, double alpha, double theta) {
    const int n = state.n_qubits();
    const double c = std::cos(alpha), s = std::sin(alpha);
    cplx acc = 0.0;
    for (int m = 0; m <= n; ++m) {
        const double weight = binomial_sqrt(n, m) * std::pow(c, n - m) * std::pow(s, m);
        acc += weight * state.amplitudes()[m] * std::polar(1.0, -m * theta);
    }
    return std::abs(acc);
}

GmResult gm_symmetric_oracle(const SymmetricDickeState& state, const OracleConfig& cfg) {
    cfg.validate();
    constexpr int kGrid = 1024;
    constexpr int kSeeds = 4;
    const int n = state.n_qubits();
    const double half_pi = std::numbers::pi / 2;

    std::vector<cplx> coeff(n + 1);
    for (int m = 0; m <= n; ++m) coeff[m] = binomial_sqrt(n, m) * state.amplitudes()[m];
    // phases[j * (n + 1) + m] = e^{-i m theta_j}
    std::vector<cplx> phases(static_cast<std::size_t>(kGrid) * (n + 1));
    for (int j = 0; j < kGrid; ++j) {
        const double theta = 2 * std::numbers::pi * j / kGrid;
        for (int m = 0; m <= n; ++m) phases[static_cast<std::size_t>(j) * (n + 1) + m] = std::polar(1.0, -m * theta);
    }

    std::vector<double> grid(static_cast<std::size_t>(kGrid) * kGrid);
    parallel_for(kGrid, [&](std::size_t i) {
        const double alpha = half_pi * static_cast<double>(i) / (kGrid - 1);
        const double c = std::cos(alpha), s = std::sin(alpha);
        std::vector<cplx> row(n + 1);
        for (int m = 0; m <= n; ++m) row[m] = coeff[m] * std::pow(c, n - m) * std::pow(s, m);
        for (int j = 0; j < kGrid; ++j) {
            const cplx* ph = &phases[static_cast<std::size_t>(j) * (n + 1)];
            cplx acc = 0.0;
            for (int m = 0; m <= n; ++m) acc += row[m] * ph[m];
            grid[i * kGrid + j] = std::abs(acc);
        }
    });

    std::vector<std::size_t> order(grid.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::partial_sort(order.begin(), order.begin() + kSeeds, order.end(),
                      [&](std::size_t a, std::size_t b) { return grid[a] > grid[b] || (grid[a] == grid[b] && a < b); });

    auto objective = [&](double alpha, double theta) { return symmetric_overlap(state, alpha, theta); };
    double best = -1.0, best_alpha = 0.0, best_theta = 0.0;
    for (int k = 0; k < kSeeds; ++k) {
        const std::size_t cell = order[k];
        const double alpha0 = half_pi * static_cast<double>(cell / kGrid) / (kGrid - 1);
        const double theta0 = 2 * std::numbers::pi * static_cast<double>(cell % kGrid) / kGrid;
        const auto r = numeric::nelder_mead_max(objective, {alpha0, theta0}, half_pi / kGrid, 1e-12);
        if (r.value > best) {
            best = r.value;
            best_alpha = r.x[0];
            best_theta = r.x[1];
        }
    }

    // Map the optimizer's unconstrained chart back to alpha in [0, pi/2], theta in [0, 2 pi).
    const auto bloch =
        BlochVector::from_ket(std::cos(best_alpha), std::polar(std::sin(best_alpha), best_theta));
    const double alpha = 0.5 * std::acos(std::clamp(bloch[2], -1.0, 1.0));
    double theta = std::atan2(bloch[1], bloch[0]);
    if (theta < 0.0) theta += 2 * std::numbers::pi;

    GmResult result = GmResult::from_overlap(best, Method::oracle);
    result.closest_product.assign(static_cast<std::size_t>(n), bloch);
    result.diagnostics["alpha"] = alpha;
    result.diagnostics["theta"] = theta;
    return result;
}

// ---------------------------------------------------------------------------

double conditional_max_eigenvalue(const Eigen::Matrix4cd& rho, const BlochVector& s1) {
    const Eigen::Matrix2cd r1 = s1.density();
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap)
            for (int b = 0; b < 2; ++b)
                for (int bp = 0; bp < 2; ++bp) m(b, bp) += r1(ap, a) * rho(2 * a + b, 2 * ap + bp);
    const double m00 = m(0, 0).real(), m11 = m(1, 1).real();
    const double gap = std::sqrt((m00 - m11) * (m00 - m11) + 4.0 * std::norm(m(0, 1)));
    return 0.5 * (m00 + m11 + gap);
}

double g_mixed_oracle(const Eigen::Matrix4cd& rho, const OracleConfig& cfg) {
    cfg.validate();
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8) {
        throw ValidationError("g_mixed_oracle: density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - cplx(1.0, 0.0)) > 1e-8) {
        throw ValidationError("g_mixed_oracle: density matrix trace is not 1");
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(rho, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-8) {
        throw ValidationError("g_mixed_oracle: density matrix is not positive semidefinite");
    }
    const auto best = numeric::maximize_on_sphere(
        [&](double theta, double phi) { return conditional_max_eigenvalue(rho, BlochVector::from_angles(theta, phi)); });
    return best.value;
}

} // namespace gm
