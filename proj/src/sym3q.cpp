#include "gm/sym3q.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "gm/numeric.hpp"

namespace gm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kResidualTol = 1e-8;
constexpr double kDegenerateTol = 1e-9;     // |t - g| in Case 2.1
constexpr double kDenominatorTol = 1e-12;   // G_2^2 denominator
constexpr double kPoleTol = 1e-12;
constexpr double kDedupeRadius = 1e-7;  // Bloch-vector distance
constexpr double kPoleRadius = 1e-6;    // to the Case 1 point
constexpr int kScanSamples = 4096;

/// Left-hand sides of the three stationarity equations.
struct Lhs {
    double l1, l2, l3;
};

Lhs lhs(const SymThreeQubitCanonical& st, double phi, double theta) {
    const double g = st.g(), t = st.t(), h = st.h(), gm = st.gamma();
    const double ct = std::cos(theta), sth = std::sin(theta);
    const double cp = std::cos(phi), sp = std::sin(phi);
    const double htc = 2 * h * t * std::cos(gm);
    const double hts = 2 * h * t * std::sin(gm);
    return {
        htc + 2 * t * (g + t) * sth * cp - htc * ct,
        hts - 2 * t * (g - t) * sth * sp - hts * ct,
        (g * g - t * t) * (1 + ct) - h * h * (1 - ct) - htc * sth * cp - hts * sth * sp,
    };
}

/// First equation with lambda from the third one, multiplied through by cos(theta).
double scan_function(const SymThreeQubitCanonical& st, double phi, double theta) {
    const Lhs l = lhs(st, phi, theta);
    return l.l1 * std::cos(theta) - l.l3 * std::sin(theta) * std::cos(phi);
}

double wrap_two_pi(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

CandidateRecord make_record(const SymThreeQubitCanonical& st, double phi, double theta, CaseTag tag) {
    const StationaryResidual res = stationary_residual(st, phi, theta);
    return {phi, theta, res.lambda, gm_candidate(st, phi, theta), tag, res.max_abs()};
}

// Tangential components of the stationarity residual, (e_theta . l, e_phi . l).
std::array<double, 2> tangential(const SymThreeQubitCanonical& st, double phi, double theta) {
    const Lhs l = lhs(st, phi, theta);
    const double ct = std::cos(theta), sth = std::sin(theta), cp = std::cos(phi), sp = std::sin(phi);
    return {ct * cp * l.l1 + ct * sp * l.l2 - sth * l.l3, -sp * l.l1 + cp * l.l2};
}

// Newton on the tangential residual in (phi, theta). Next to a pole theta(phi)
// is so steep that bisection in phi alone cannot pin theta to 1e-8; the
// residual itself is well conditioned there.
std::pair<double, double> polish_root(const SymThreeQubitCanonical& st, double phi, double theta) {
    constexpr double step = 1e-7;
    for (int it = 0; it < 8; ++it) {
        const auto r = tangential(st, phi, theta);
        const auto rp = tangential(st, phi + step, theta), rm = tangential(st, phi - step, theta);
        const auto tp = tangential(st, phi, theta + step), tm = tangential(st, phi, theta - step);
        const double a = (rp[0] - rm[0]) / (2 * step), b = (tp[0] - tm[0]) / (2 * step);
        const double c = (rp[1] - rm[1]) / (2 * step), d = (tp[1] - tm[1]) / (2 * step);
        const double det = a * d - b * c;
        if (!(std::abs(det) > 1e-300)) break;
        const double dphi = (d * r[0] - b * r[1]) / det;
        const double dtheta = (a * r[1] - c * r[0]) / det;
        phi -= dphi;
        theta -= dtheta;
        if (std::abs(dphi) + std::abs(dtheta) < 1e-15) break;
    }
    return {phi, theta};
}

// Scan nodes for one theta branch over [0, 2 pi). The branch is undefined at
// multiples of pi/2 (sin 2phi = 0) and at its pole phi = +-gamma (mod pi), so
// the circle is cut there; each piece gets a uniform grid plus nodes
// approaching both cut points geometrically, which keeps roots squeezed
// between a pole and a zero of sin 2phi (|gamma| tiny) from hiding in one cell.
std::vector<double> scan_nodes(const SymThreeQubitCanonical& st, ThetaBranch branch) {
    std::vector<double> cuts{0.0, kPi / 2, kPi, 3 * kPi / 2, kTwoPi};
    const double pole = branch == ThetaBranch::A ? st.gamma() : -st.gamma();
    cuts.push_back(wrap_two_pi(pole));
    cuts.push_back(wrap_two_pi(pole + kPi));
    std::sort(cuts.begin(), cuts.end());

    std::vector<double> nodes;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double a = cuts[k], b = cuts[k + 1], w = b - a;
        if (w <= 1e-15) continue;
        const int uniform = std::max(16, static_cast<int>(kScanSamples * w / kTwoPi));
        for (int i = 1; i <= uniform; ++i) nodes.push_back(a + w * i / (uniform + 1));
        for (int e = 1; e <= 44; ++e) {
            const double d = w * std::ldexp(1.0, -e) / (uniform + 1);
            nodes.push_back(a + d);
            nodes.push_back(b - d);
        }
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return nodes;
}

} // namespace

double StationaryResidual::max_abs() const { return std::max({std::abs(r1), std::abs(r2), std::abs(r3)}); }

StationaryResidual stationary_residual(const SymThreeQubitCanonical& state, double phi, double theta) {
    const Lhs l = lhs(state, phi, theta);
    const double s1 = std::sin(theta) * std::cos(phi);
    const double s2 = std::sin(theta) * std::sin(phi);
    const double s3 = std::cos(theta);
    double lambda = 0.0;
    if (std::abs(s3) > 1e-8) {
        lambda = l.l3 / s3;
    } else if (std::abs(s1) >= std::abs(s2)) {
        lambda = l.l1 / s1;
    } else {
        lambda = l.l2 / s2;
    }
    return {l.l1 - lambda * s1, l.l2 - lambda * s2, l.l3 - lambda * s3, lambda};
}

double gm_candidate(const SymThreeQubitCanonical& state, double phi, double theta) {
    const double g = state.g(), t = state.t(), h = state.h(), gm = state.gamma();
    const double half_s = std::sin(theta / 2), half_c = std::cos(theta / 2);
    const double sth = std::sin(theta);
    return (3 - 2 * t * t + 4 * (1 - 2 * h * h - 4 * t * t) * std::cos(theta) + (1 - 6 * t * t) * std::cos(2 * theta) +
            4 * g * t * std::cos(2 * phi) * sth * sth + 32 * h * t * std::cos(gm - phi) * half_c * half_s * half_s * half_s) /
           8;
}

CandidateRecord candidate_case1(const SymThreeQubitCanonical& state) {
    CandidateRecord rec = make_record(state, 0.0, 0.0, CaseTag::Case1);
    rec.G_j_squared = state.g() * state.g();
    return rec;
}

std::optional<double> theta_from_phi(const SymThreeQubitCanonical& state, double phi, ThetaBranch branch) {
    const double sin2phi = std::sin(2 * phi);
    const double angle = branch == ThetaBranch::A ? state.gamma() - phi : state.gamma() + phi;
    const double sin_factor = std::sin(angle);
    if (std::abs(sin2phi) < kPoleTol || std::abs(sin_factor) < kPoleTol) return std::nullopt;
    const double numerator = branch == ThetaBranch::A ? state.g() : -state.t();
    // numerator / (h csc(2 phi) sin(...)) with csc folded into the numerator
    const double rhs = numerator * sin2phi / (state.h() * sin_factor);
    if (!std::isfinite(rhs) || !(rhs > 0.0)) return std::nullopt;
    const double theta = 2 * std::atan(rhs);
    if (!(theta > 0.0 && theta < kPi)) return std::nullopt;
    return theta;
}

Case21Outcome candidate_case21(const SymThreeQubitCanonical& state) {
    Case21Outcome out;
    const double g = state.g(), t = state.t(), h = state.h(), gm = state.gamma();
    if (std::abs(t - g) <= kDegenerateTol) {
        out.diagnostic = "degenerate: t = g";
        return out;
    }
    const double den = t * t - 2 * t * t * t * t + g * g - 6 * g * g * t * t - 2 * g * t * h * h * std::cos(2 * gm);
    if (std::abs(den) <= kDenominatorTol) {
        out.diagnostic = "vanishing denominator";
        return out;
    }
    const double g2 = g * g - std::pow(g * g - t * t, 3) / den;

    // tan(phi) fixes phi only modulo pi.
    const double phi0 = std::atan((t + g) / (t - g) * std::tan(gm));
    for (double phi : {wrap_two_pi(phi0), wrap_two_pi(phi0 + kPi)}) {
        const auto ta = theta_from_phi(state, phi, ThetaBranch::A);
        const auto tb = theta_from_phi(state, phi, ThetaBranch::B);
        if (!ta && !tb) continue;
        out.theta_a = ta;
        out.theta_b = tb;
        if (!ta || !tb) {
            out.diagnostic = "only one theta branch is defined";
            return out;
        }
        if (std::abs(*ta - *tb) > 1e-9) {
            out.diagnostic = "theta branches disagree";
            return out;
        }
        CandidateRecord rec = make_record(state, phi, *ta, CaseTag::Case21);
        if (rec.residual > kResidualTol) {
            out.diagnostic = "stationarity residual too large";
            return out;
        }
        rec.G_j_squared = g2;
        out.candidate = rec;
        return out;
    }
    out.diagnostic = "no phi with theta in (0, pi)";
    return out;
}

std::vector<StationaryPoint> find_case2_roots(const SymThreeQubitCanonical& state, ThetaBranch branch) {
    const numeric::PartialFn f = [&](double phi) -> std::optional<double> {
        const auto theta = theta_from_phi(state, phi, branch);
        if (!theta) return std::nullopt;
        return scan_function(state, phi, *theta);
    };

    std::vector<numeric::Bracket> brackets;
    std::optional<double> prev;
    double prev_x = 0.0;
    for (double x : scan_nodes(state, branch)) {
        const auto v = f(x);
        if (v && *v == 0.0) {
            brackets.push_back({x, x});
        } else if (v && prev && *prev != 0.0 && ((*prev < 0.0) != (*v < 0.0))) {
            brackets.push_back({prev_x, x});
        }
        prev = v;
        prev_x = x;
    }

    std::vector<StationaryPoint> roots;
    for (const auto& br : brackets) {
        // full precision: near a pole theta moves by ~1/|gamma| per unit phi
        const auto phi = numeric::bisect(f, br, 0.0);
        if (!phi) continue;
        const auto theta = theta_from_phi(state, *phi, branch);
        if (!theta) continue;
        double res = stationary_residual(state, *phi, *theta).max_abs();
        if (res <= kResidualTol) {
            roots.push_back({wrap_two_pi(*phi), *theta, res});
            continue;
        }
        const auto [p2, t2] = polish_root(state, *phi, *theta);
        if (std::abs(p2 - *phi) > 1e-6 || std::abs(t2 - *theta) > 1e-4 || !(t2 > 0.0 && t2 < kPi)) continue;
        res = stationary_residual(state, p2, t2).max_abs();
        if (res <= kResidualTol) roots.push_back({wrap_two_pi(p2), t2, res});
    }

    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.phi < b.phi; });
    // Merge by Bloch vector: near theta = 0 or pi, phi says nothing. Roots at
    // the north pole are the Case 1 point reached along the branch as
    // sin 2phi -> 0, so they are dropped here.
    auto bloch = [](const StationaryPoint& p) { return BlochVector::from_angles(p.theta, p.phi).s(); };
    auto dist = [](const Vec3& a, const Vec3& b) { return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]); };
    std::vector<StationaryPoint> unique;
    std::vector<Vec3> seen{{0.0, 0.0, 1.0}};
    for (const auto& r : roots) {
        const Vec3 v = bloch(r);
        if (dist(v, seen[0]) <= kPoleRadius) continue;
        const bool dup = std::any_of(seen.begin() + 1, seen.end(), [&](const Vec3& u) { return dist(u, v) <= kDedupeRadius; });
        if (dup) continue;
        seen.push_back(v);
        unique.push_back(r);
    }
    return unique;
}

bool sym3q_is_boundary(const SymThreeQubitCanonical& state) {
    constexpr double eps = 1e-12;
    const double half_pi = kPi / 2;
    return state.g() <= eps || state.t() <= eps || state.h() <= eps || std::abs(state.gamma()) <= eps ||
           std::abs(std::abs(state.gamma()) - half_pi) <= eps;
}

GmResult gm_sym3q(const SymThreeQubitCanonical& state, const OracleConfig& cfg) {
    std::vector<CandidateRecord> candidates;
    candidates.push_back(candidate_case1(state));
    const Case21Outcome c21 = candidate_case21(state);
    if (c21.candidate) candidates.push_back(*c21.candidate);
    for (const auto& [branch, tag] : {std::pair{ThetaBranch::A, CaseTag::Case22}, std::pair{ThetaBranch::B, CaseTag::Case23}}) {
        for (const auto& root : find_case2_roots(state, branch)) {
            CandidateRecord rec = make_record(state, root.phi, root.theta, tag);
            rec.residual = root.residual;
            candidates.push_back(rec);
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const CandidateRecord& a, const CandidateRecord& b) {
        if (a.case_tag != b.case_tag) return a.case_tag < b.case_tag;
        return a.phi < b.phi;
    });

    const auto best = std::max_element(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        return a.G_j_squared < b.G_j_squared;
    });

    GmResult result = GmResult::from_squared(best->G_j_squared, Method::sym3q);
    result.closest_product.assign(3, BlochVector::from_angles(best->theta, best->phi));
    const bool boundary = sym3q_is_boundary(state);
    // Within 1e-8 of a special value the roots crowd against a pole closer
    // than doubles near pi/2 can resolve, so those states get the same guard.
    constexpr double near = 1e-8;
    const double a = std::abs(state.gamma());
    const bool near_boundary = boundary || std::min({state.g(), state.t(), state.h(), a, kPi / 2 - a}) < near;
    result.diagnostics["boundary"] = boundary ? 1.0 : 0.0;
    result.diagnostics["near_boundary"] = near_boundary ? 1.0 : 0.0;
    result.diagnostics["oracle_override"] = 0.0;
    if (near_boundary) {
        const GmResult oracle = gm_symmetric_oracle(sym3q_to_dicke(state), cfg);
        result.diagnostics["oracle_G_squared"] = oracle.G_squared;
        if (oracle.G_squared > best->G_j_squared + 1e-9) {
            GmResult overridden = GmResult::from_squared(oracle.G_squared, Method::sym3q);
            overridden.closest_product = oracle.closest_product;
            overridden.diagnostics = result.diagnostics;
            overridden.diagnostics["oracle_override"] = 1.0;
            result = std::move(overridden);
        }
    }
    result.candidates = std::move(candidates);
    return result;
}

} // namespace gm
