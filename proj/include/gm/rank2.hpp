#pragma once

#include <optional>
#include <vector>

#include "gm/oracle.hpp"
#include "gm/states.hpp"

namespace gm {

/**
 * tr(rho_rk2 rho1 (x) rho2) = (scalar_part + w . s2) / 4 for a fixed first
 * party with Bloch vector s1; the optimum over s2 is parallel to w, giving
 * f = scalar_part + |w|.
 */
struct TraceDecomposition {
    double scalar_part = 0.0;
    Vec3 w{};

    double norm_w() const;
    double f() const { return scalar_part + norm_w(); }
};

TraceDecomposition trace_decomposition(const RankTwoCanonical& state, const BlochVector& s1);

/// f(a, b, c) = scalar_part + |w|; g(rho) is a quarter of its maximum over the unit sphere.
double f_objective(const RankTwoCanonical& state, const BlochVector& s1);

/**
 * g(rho_rk2) = max f / 4. With x2 = 0 and x1 >= 0 the maximum lies at
 * s1 = (sqrt(1 - c^2), 0, c) and only c is searched; otherwise a 256 x 512
 * sphere grid plus simplex refinement is used. |x2| < 1e-14 counts as zero.
 */
double g_numeric(const RankTwoCanonical& state);

/// 1-D search over c in [-1, 1] of f(sqrt(1 - c^2), 0, c). Returns {c, f}.
struct LineMax {
    double c;
    double f;
};
LineMax maximize_f_on_meridian(const RankTwoCanonical& state);

/**
 * Coefficients of f2(c) = 1 + u0 c + sqrt(u1 c^2 + 2 u2 c + u3) for the
 * x1 = x2 = 0 family, together with the zeros x3_1, x3_2 of u1 and the region
 * thresholds x3_3 <= x3_4 of the closed form.
 */
struct ClosedFormCoefficients {
    double u0 = 0.0, u1 = 0.0, u2 = 0.0, u3 = 0.0;
    /// Interior maximizer of f2, present only when u1 < 0; clamped to [-1, 1].
    std::optional<double> c_bar;
    double x3_1 = 0.0, x3_2 = 0.0;
    double x3_3 = 0.0, x3_4 = 0.0;

    /// u0 > 0, u3 > 0, u2 > u1, u2^2 - u1 u3 > 0, u0^2 - u1 > 0.
    bool u_relations_hold() const;
    /// -1 <= x3_2 <= x3_3 < 0 <= x3_4 < x3_1 < 1 (slack 1e-12).
    bool threshold_ordering_holds() const;
};

ClosedFormCoefficients closed_form_coeffs(double x3, double gamma1, double gamma2);

/// f2(c), with a radicand in [-1e-12, 0) clamped to zero.
double f2(const ClosedFormCoefficients& k, double c);

enum class ClosedFormRegion { I, II, III };

ClosedFormRegion closed_form_region(double x3, double gamma1, double gamma2);

/// The rational middle branch of the closed form, valid for x3 in (x3_3, x3_4).
double g_closed_form_region2(double x3, double gamma1, double gamma2);

/**
 * g for x1 = x2 = 0: linear on I (x3 <= x3_3), rational on II, linear on III
 * (x3 >= x3_4). At a threshold both neighbouring branches are evaluated and
 * must agree within 1e-9; the linear value is returned.
 */
double g_closed_form(double x3, double gamma1, double gamma2);

/**
 * G^2 of a pure three-qubit state from the two-qubit reduced state left
 * after tracing out `traced_party`, maximized over product states through the
 * conditional-eigenvalue reduction.
 */
double g_from_pure_3qubit(const PureState& psi, int traced_party, const OracleConfig& cfg = {});

/// Wraps g_closed_form (x1 = x2 = 0 required) or g_numeric as a GmResult with G^2 = g.
GmResult gm_rank2(const RankTwoCanonical& state, bool closed_form);

struct Fig1Row {
    double x3;
    double g[4];
};

/// The subspaces (gamma1, gamma2) of the four closed-form curves: (pi/4, 0), (pi/2, 0), (3pi/8, pi/8), (pi/4, pi/4).
const std::array<std::array<double, 2>, 4>& fig1_subspaces();

/// g(x3) for the four subspaces at `samples` equally spaced x3 in [-1, 1].
std::vector<Fig1Row> fig1_curves(int samples = 201);

} // namespace gm
