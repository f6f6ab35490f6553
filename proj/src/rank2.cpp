#include "gm/rank2.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gm/numeric.hpp"

namespace gm {

namespace {

constexpr double kPi = std::numbers::pi;

struct Trig {
    double s1, c1, s2, c2;
    Trig(double gamma1, double gamma2)
        : s1(std::sin(gamma1)), c1(std::cos(gamma1)), s2(std::sin(gamma2)), c2(std::cos(gamma2)) {}
};

struct SphereOptimum {
    double f;
    BlochVector s1;
};

BlochVector meridian_point(double c) {
    c = std::clamp(c, -1.0, 1.0);
    return BlochVector::normalized({std::sqrt(std::max(0.0, 1.0 - c * c)), 0.0, c});
}

double snapped_x2(const RankTwoCanonical& st) { return std::abs(st.x()[1]) < 1e-14 ? 0.0 : st.x()[1]; }

SphereOptimum maximize_f(const RankTwoCanonical& state) {
    const Vec3& x = state.x();
    if (snapped_x2(state) == 0.0 && x[0] >= 0.0) {
        const RankTwoCanonical flat(state.gamma1(), state.gamma2(), {x[0], 0.0, x[2]});
        const LineMax m = maximize_f_on_meridian(flat);
        return {m.f, meridian_point(m.c)};
    }
    const auto best = numeric::maximize_on_sphere(
        [&](double theta, double phi) { return f_objective(state, BlochVector::from_angles(theta, phi)); });
    return {best.value, BlochVector::from_angles(best.theta, best.phi)};
}

std::vector<BlochVector> product_from(const RankTwoCanonical& state, const BlochVector& s1) {
    std::vector<BlochVector> out{s1};
    const TraceDecomposition td = trace_decomposition(state, s1);
    if (td.norm_w() > 1e-14) out.push_back(BlochVector::normalized(td.w));
    return out;
}

} // namespace

double TraceDecomposition::norm_w() const { return std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]); }

TraceDecomposition trace_decomposition(const RankTwoCanonical& state, const BlochVector& s1) {
    const Trig tr(state.gamma1(), state.gamma2());
    const auto [x1, x2, x3] = state.x();
    const double a = s1[0], b = s1[1], c = s1[2];
    TraceDecomposition out;
    out.scalar_part = 1 + a * x1 * tr.s1 + b * x2 * tr.s2 + c * tr.c1 * tr.c2 + c * x3 * tr.s1 * tr.s2;
    out.w = {
        a * (tr.c2 * tr.s1 - x3 * tr.c1 * tr.s2) + c * x1 * tr.c1 + x1 * tr.c2,
        b * (-x3 * tr.c2 * tr.s1 + tr.c1 * tr.s2) + x2 * tr.c1 + c * x2 * tr.c2,
        b * x2 * tr.s1 + a * x1 * tr.s2 + c * x3 + x3 * tr.c1 * tr.c2 + tr.s1 * tr.s2,
    };
    return out;
}

double f_objective(const RankTwoCanonical& state, const BlochVector& s1) { return trace_decomposition(state, s1).f(); }

LineMax maximize_f_on_meridian(const RankTwoCanonical& state) {
    constexpr int kIntervals = 2048;
    auto f = [&](double c) { return f_objective(state, meridian_point(c)); };
    int best_k = 0;
    double best_f = f(-1.0);
    for (int k = 1; k <= kIntervals; ++k) {
        const double v = f(-1.0 + 2.0 * k / kIntervals);
        if (v > best_f) {
            best_f = v;
            best_k = k;
        }
    }
    const double lo = -1.0 + 2.0 * std::max(0, best_k - 1) / kIntervals;
    const double hi = -1.0 + 2.0 * std::min(kIntervals, best_k + 1) / kIntervals;
    const auto m = numeric::golden_section_min([&](double c) { return -f(c); }, lo, hi, 1e-12);
    if (-m.value >= best_f) return {m.x, -m.value};
    return {-1.0 + 2.0 * best_k / kIntervals, best_f};
}

double g_numeric(const RankTwoCanonical& state) { return 0.25 * maximize_f(state).f; }

// ---------------------------------------------------------------------------

bool ClosedFormCoefficients::u_relations_hold() const {
    return u0 > 0.0 && u3 > 0.0 && u2 > u1 && u2 * u2 - u1 * u3 > 0.0 && u0 * u0 - u1 > 0.0;
}

bool ClosedFormCoefficients::threshold_ordering_holds() const {
    constexpr double slack = 1e-12;
    return -1.0 - slack <= x3_2 && x3_2 <= x3_3 + slack && x3_3 < 0.0 + slack && -slack <= x3_4 && x3_4 < x3_1 + slack &&
           x3_1 < 1.0 + slack;
}

ClosedFormCoefficients closed_form_coeffs(double x3, double gamma1, double gamma2) {
    check_canonical_angles(gamma1, gamma2);
    if (!(std::abs(x3) <= 1.0 + 1e-12)) throw ValidationError("closed_form_coeffs: |x3| must be <= 1");
    const Trig tr(gamma1, gamma2);
    const double b = tr.c2 * tr.s1 - x3 * tr.c1 * tr.s2;

    ClosedFormCoefficients k;
    k.u0 = tr.c1 * tr.c2 + x3 * tr.s1 * tr.s2;
    k.u1 = x3 * x3 - b * b;
    k.u2 = (x3 * tr.c1 * tr.c2 + tr.s1 * tr.s2) * x3;
    k.u3 = tr.s1 * tr.s1 + x3 * x3 * tr.c1 * tr.c1;

    k.x3_1 = tr.c2 * tr.s1 / (1.0 + tr.c1 * tr.s2);
    k.x3_2 = tr.c2 * tr.s1 / (-1.0 + tr.c1 * tr.s2);

    const double tan2 = std::tan(gamma2);
    const double inner = (tr.c1 * tr.c2 + tr.s1 * tr.s1) * tr.s2;
    const double den = 1.0 + tr.c1 * (tr.c2 - tr.s2 * (tr.c1 * tr.s2 + tr.s1 * tr.s1 * tan2));
    k.x3_3 = -tr.s1 * (tr.s1 + inner) / den;
    k.x3_4 = -tr.s1 * (-tr.s1 + inner) / den;
    // On gamma1 + gamma2 = pi/2 the thresholds sit on x3 = -1 (or +1), where the
    // rational branch is 0/0; rounding must not push them past the endpoint.
    for (double* v : {&k.x3_1, &k.x3_2, &k.x3_3, &k.x3_4}) {
        if (std::abs(std::abs(*v) - 1.0) <= 1e-12) *v = std::copysign(1.0, *v);
    }

    if (k.u1 < 0.0) {
        const double bracket = x3 * (x3 * tr.c1 * tr.c2 + tr.s1 * tr.s2) +
                               tr.s1 * (tr.c1 * tr.c2 + x3 * tr.s1 * tr.s2) * (tr.s1 - x3 * tr.c1 * tan2);
        k.c_bar = std::clamp(-bracket / k.u1, -1.0, 1.0);
    }
    return k;
}

double f2(const ClosedFormCoefficients& k, double c) {
    double radicand = k.u1 * c * c + 2 * k.u2 * c + k.u3;
    if (radicand < 0.0 && radicand >= -1e-12) radicand = 0.0;
    return 1.0 + k.u0 * c + std::sqrt(radicand);
}

ClosedFormRegion closed_form_region(double x3, double gamma1, double gamma2) {
    const auto k = closed_form_coeffs(x3, gamma1, gamma2);
    if (x3 <= k.x3_3) return ClosedFormRegion::I;
    if (x3 >= k.x3_4) return ClosedFormRegion::III;
    return ClosedFormRegion::II;
}

double g_closed_form_region2(double x3, double gamma1, double gamma2) {
    const Trig tr(gamma1, gamma2);
    const double b = tr.c2 * tr.s1 - x3 * tr.c1 * tr.s2;
    return (1 - x3 * x3) * tr.s1 * tr.c2 * b / (-2.0 * (x3 * x3 - b * b));
}

double g_closed_form(double x3, double gamma1, double gamma2) {
    const auto k = closed_form_coeffs(x3, gamma1, gamma2);
    x3 = std::clamp(x3, -1.0, 1.0);
    const double region1 = (1 - x3) * (1 + std::cos(gamma1 + gamma2)) / 4;
    const double region3 = (1 + x3) * (1 + std::cos(gamma1 - gamma2)) / 4;

    const bool on_threshold = x3 == k.x3_3 || x3 == k.x3_4;
    if (on_threshold) {
        const double linear = x3 == k.x3_3 ? region1 : region3;
        // The rational branch is 0/0 where u1 vanishes (empty middle region).
        if (std::abs(k.u1) > 1e-8) {
            const double rational = g_closed_form_region2(x3, gamma1, gamma2);
            if (std::abs(rational - linear) > 1e-9) {
                throw std::logic_error("g_closed_form: branches disagree at a region threshold");
            }
        }
        return linear;
    }
    if (x3 < k.x3_3) return region1;
    if (x3 > k.x3_4) return region3;
    return g_closed_form_region2(x3, gamma1, gamma2);
}

// ---------------------------------------------------------------------------

double g_from_pure_3qubit(const PureState& psi, int traced_party, const OracleConfig& cfg) {
    if (psi.n_qubits() != 3) throw ValidationError("g_from_pure_3qubit: state must have exactly 3 qubits");
    if (traced_party < 0 || traced_party > 2) throw ValidationError("g_from_pure_3qubit: traced party must be 0, 1 or 2");
    std::array<int, 2> keep{};
    for (int q = 0, j = 0; q < 3; ++q) {
        if (q != traced_party) keep[j++] = q;
    }
    const Eigen::Matrix4cd rho = reduced_density_matrix(psi, keep);
    return g_mixed_oracle(rho, cfg);
}

GmResult gm_rank2(const RankTwoCanonical& state, bool closed_form) {
    if (closed_form) {
        const Vec3& x = state.x();
        if (std::abs(x[0]) > 1e-14 || std::abs(x[1]) > 1e-14) {
            throw ValidationError("closed form needs x1 = x2 = 0");
        }
        const double g = g_closed_form(x[2], state.gamma1(), state.gamma2());
        const auto k = closed_form_coeffs(x[2], state.gamma1(), state.gamma2());
        const auto region = closed_form_region(x[2], state.gamma1(), state.gamma2());
        const double c = (region == ClosedFormRegion::II && k.c_bar) ? *k.c_bar : 1.0;
        GmResult r = GmResult::from_squared(g, Method::rank2_closed);
        r.closest_product = product_from(state, meridian_point(c));
        r.diagnostics["region"] = static_cast<double>(static_cast<int>(region) + 1);
        r.diagnostics["x3_3"] = k.x3_3;
        r.diagnostics["x3_4"] = k.x3_4;
        return r;
    }
    const SphereOptimum opt = maximize_f(state);
    GmResult r = GmResult::from_squared(0.25 * opt.f, Method::rank2_numeric);
    r.closest_product = product_from(state, opt.s1);
    return r;
}

// ---------------------------------------------------------------------------

const std::array<std::array<double, 2>, 4>& fig1_subspaces() {
    static const std::array<std::array<double, 2>, 4> subspaces{{
        {kPi / 4, 0.0},
        {kPi / 2, 0.0},
        {3 * kPi / 8, kPi / 8},
        {kPi / 4, kPi / 4},
    }};
    return subspaces;
}

std::vector<Fig1Row> fig1_curves(int samples) {
    if (samples < 2) throw ValidationError("fig1_curves: need at least two samples");
    std::vector<Fig1Row> rows(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        Fig1Row& row = rows[k];
        row.x3 = -1.0 + 2.0 * k / (samples - 1);
        for (int c = 0; c < 4; ++c) {
            row.g[c] = g_closed_form(row.x3, fig1_subspaces()[c][0], fig1_subspaces()[c][1]);
        }
    }
    return rows;
}

} // namespace gm
