#include "gm/wmax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gm/errors.hpp"
#include "gm/numeric.hpp"
#include "gm/parallel.hpp"
#include "gm/rank2.hpp"

namespace gm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSlack = 1e-12;

void check_symmetric_range(double gamma1) {
    if (!(gamma1 >= kPi / 4 - kSlack && gamma1 <= kPi / 2 + kSlack)) {
        throw ValidationError("symmetric subspace needs pi/4 <= gamma1 <= pi/2");
    }
}

void check_x3(double x3) {
    if (!(std::abs(x3) <= 1.0 + kSlack)) throw ValidationError("|x3| must be <= 1");
}

} // namespace

double x3_4_symmetric(double gamma1) {
    check_symmetric_range(gamma1);
    const double s = std::sqrt(2.0) * std::sin(2 * gamma1 + kPi / 4);
    return (1 - s) / (3 + s);
}

double g_symmetric_subspace(double x3, double gamma1) {
    check_symmetric_range(gamma1);
    check_x3(x3);
    const double c = std::cos(gamma1);
    if (x3 < x3_4_symmetric(gamma1)) {
        return 0.5 - (1 + x3) * x3 * c * c / (-1 + 3 * x3 + (1 + x3) * std::cos(2 * gamma1));
    }
    return (1 + x3) * (1 + std::sin(2 * gamma1)) / 4;
}

double x3_star_symmetric(double gamma1) {
    check_symmetric_range(gamma1);
    const double s = std::sin(gamma1);
    return 2 * s * (s - std::sqrt(2.0)) / (3 + std::cos(2 * gamma1));
}

double x3_star_quadratic(double x3, double gamma1) {
    const double c2 = std::cos(2 * gamma1);
    return (3 + c2) * x3 * x3 + (-2 + 2 * c2) * x3 + c2 - 1;
}

double g_min_symmetric(double gamma1) {
    check_symmetric_range(gamma1);
    const double c2 = std::cos(2 * gamma1);
    const double num = 1 + c2 + std::sqrt(2.0) * std::sin(gamma1);
    return num * num / ((3 + c2) * (3 + c2));
}

double g_equal_gamma(double x3, double gamma1) {
    if (!(gamma1 >= -kSlack && gamma1 <= kPi / 4 + kSlack)) {
        throw ValidationError("equal-angle subspace needs 0 <= gamma1 <= pi/4");
    }
    check_x3(x3);
    const double tan1 = std::tan(gamma1);
    const double x3_3 = -tan1 * tan1;
    if (x3 <= x3_3) {
        const double c = std::cos(gamma1);
        return (1 - x3) / 2 * c * c;
    }
    if (x3 < 0.0) {
        const double s2 = std::sin(2 * gamma1);
        const double one_minus = 1 - x3;
        return -one_minus * one_minus * (1 + x3) * s2 * s2 /
               (-1 + x3 * (2 + 7 * x3) + one_minus * one_minus * std::cos(4 * gamma1));
    }
    return (1 + x3) / 2;
}

// ---------------------------------------------------------------------------

SubspaceMinimum subspace_minimum(double gamma1, double gamma2) {
    const auto k = closed_form_coeffs(0.0, gamma1, gamma2);
    const double lo = std::min(k.x3_3, k.x3_4);
    const double hi = std::max(k.x3_3, k.x3_4);
    const auto m = numeric::golden_section_min([&](double x3) { return g_closed_form(x3, gamma1, gamma2); }, lo, hi, 1e-10);
    SubspaceMinimum out{gamma1, gamma2, m.x, m.value};
    // g(0) = 1/2 in every subspace; on a flat bottom (gamma1 = pi/2, gamma2 = 0) report x3 = 0.
    if (lo <= 0.0 && hi >= 0.0) {
        const double at_zero = g_closed_form(0.0, gamma1, gamma2);
        if (at_zero <= m.value + 1e-14) out = {gamma1, gamma2, 0.0, at_zero};
    }
    return out;
}

GlobalMinReport scan_global_min(int resolution) {
    if (resolution < 32) throw ValidationError("scan_global_min: resolution must be >= 32");
    const int n = resolution;
    GlobalMinReport report;
    report.resolution = n;
    report.grid.resize(static_cast<std::size_t>(n) * n);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
        const double gamma2 = (kPi / 4) * static_cast<double>(j) / (n - 1);
        const double span = std::max(0.0, kPi / 2 - 2 * gamma2);
        for (int i = 0; i < n; ++i) {
            // the last row collapses onto the apex; pin it exactly
            const double gamma1 = (static_cast<int>(j) == n - 1) ? kPi / 4 : gamma2 + span * i / (n - 1);
            report.grid[j * n + i] = subspace_minimum(gamma1, std::min(gamma2, gamma1));
        }
    });

    const SubspaceMinimum* best = &report.grid.front();
    for (const auto& cell : report.grid) {
        if (cell.g < best->g ||
            (cell.g == best->g && (cell.gamma1 < best->gamma1 || (cell.gamma1 == best->gamma1 && cell.gamma2 < best->gamma2)))) {
            best = &cell;
        }
    }
    report.min_g = best->g;
    report.gamma1 = best->gamma1;
    report.gamma2 = best->gamma2;
    report.x3 = best->x3;

    double second = std::numeric_limits<double>::infinity();
    for (const auto& cell : report.grid) {
        if (std::abs(cell.gamma1 - best->gamma1) > 1e-12 || std::abs(cell.gamma2 - best->gamma2) > 1e-12) {
            second = std::min(second, cell.g);
        }
    }
    report.margin = second - report.min_g;

    std::ostringstream spec;
    spec << n << "x" << n << " cells; gamma2 = (pi/4) j/" << (n - 1) << ", gamma1 = gamma2 + (pi/2 - 2 gamma2) i/" << (n - 1)
         << "; golden-section over x3 in [x3_3, x3_4], tol 1e-10";
    report.grid_spec = spec.str();
    return report;
}

// ---------------------------------------------------------------------------

double w_uniqueness_bound(double x1) {
    return (2.0 / 9.0) * (5 + 3 * x1 + std::sqrt(9 + 3 * x1 * (10 + 9 * x1))) / 4.0;
}

UniquenessCertificate w_uniqueness_certificate() {
    constexpr double quarter = kPi / 4;
    constexpr double x3 = -1.0 / 3.0;
    constexpr double four_ninths = 4.0 / 9.0;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const BlochVector probe = BlochVector::normalized({2 * std::sqrt(2.0) / 3, 0.0, 1.0 / 3});

    std::vector<double> xs{0.0, 0.01, 0.05};
    for (int k = 1; k <= 10; ++k) xs.push_back(0.1 * k);
    xs.push_back(std::sqrt(8.0) / 3); // largest x1 with (x1, 0, -1/3) inside the Bloch ball

    UniquenessCertificate cert;
    bool all_ok = true;
    for (double x1 : xs) {
        UniquenessRow row{x1, nan, w_uniqueness_bound(x1), nan, false};
        const bool strict = x1 > 0.0;
        const bool bound_ok = strict ? row.analytic_bound > four_ninths : std::abs(row.analytic_bound - four_ninths) <= 1e-15;
        if (x1 * x1 + x3 * x3 <= 1.0) {
            const RankTwoCanonical state(quarter, quarter, {x1, 0.0, x3});
            row.g_numeric = g_numeric(state);
            row.f_direct = f_objective(state, probe);
            const bool formula_ok = std::abs(0.25 * row.f_direct - row.analytic_bound) <= 1e-12;
            const bool dominates = row.g_numeric >= row.analytic_bound - 1e-10;
            row.ok = bound_ok && formula_ok && dominates;
        } else {
            row.ok = bound_ok;
        }
        all_ok = all_ok && row.ok;
        cert.rows.push_back(row);
    }

    // Rotations about the x3 axis carry these samples onto the x2 direction.
    double deviation = 0.0;
    for (double x1 : {0.1, 0.5, 0.9}) {
        const double reference = g_numeric(RankTwoCanonical(quarter, quarter, {x1, 0.0, x3}));
        for (double angle : {kPi / 7, kPi / 3, 2 * kPi / 3, 5 * kPi / 4}) {
            const double rotated =
                g_numeric(RankTwoCanonical(quarter, quarter, {x1 * std::cos(angle), x1 * std::sin(angle), x3}));
            deviation = std::max(deviation, std::abs(rotated - reference));
        }
    }
    cert.rotation_max_deviation = deviation;
    cert.passed = all_ok && deviation <= 1e-8;
    return cert;
}

bool verify_w_uniqueness() { return w_uniqueness_certificate().passed; }

} // namespace gm
