#pragma once

#include <string>
#include <vector>

namespace gm {

/// g on the symmetric subspaces gamma2 = pi/2 - gamma1, pi/4 <= gamma1 <= pi/2.
double g_symmetric_subspace(double x3, double gamma1);

/// Threshold between the two symmetric-subspace branches.
double x3_4_symmetric(double gamma1);

/// The minimizing x3 on the symmetric subspace for given gamma1.
double x3_star_symmetric(double gamma1);

/// [3 + cos 2g] x^2 + [-2 + 2 cos 2g] x + cos 2g - 1, zero at x3_star_symmetric.
double x3_star_quadratic(double x3, double gamma1);

/// Minimum over x3 of g on the symmetric subspace for given gamma1.
double g_min_symmetric(double gamma1);

/// g on the gamma1 = gamma2 subspaces, 0 <= gamma1 <= pi/4.
double g_equal_gamma(double x3, double gamma1);

struct SubspaceMinimum {
    double gamma1;
    double gamma2;
    double x3;
    double g;
};

struct GlobalMinReport {
    double min_g = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double x3 = 0.0;
    std::string grid_spec;
    /// Gap from min_g to the lowest grid cell at a different (gamma1, gamma2).
    double margin = 0.0;
    int resolution = 0;
    /// resolution x resolution cells, row-major in gamma2 then gamma1.
    std::vector<SubspaceMinimum> grid;
};

/// min over x3 in [x3_3, x3_4] of the closed-form g for one subspace (golden section, tol 1e-10).
SubspaceMinimum subspace_minimum(double gamma1, double gamma2);

/**
 * Minimizes g over x3 in every subspace of a resolution x resolution grid on
 * the canonical triangle. Row j has gamma2 = (pi/4) j / (res - 1); within the
 * row gamma1 runs evenly over [gamma2, pi/2 - gamma2], so the apex
 * (pi/4, pi/4) is a grid node. Ties go to the lowest gamma1, then gamma2.
 */
GlobalMinReport scan_global_min(int resolution);

struct UniquenessRow {
    double x1;
    double g_numeric;      ///< NaN when (x1, 0, -1/3) is not a valid Bloch vector
    double analytic_bound; ///< f(2 sqrt2 / 3, 0, 1/3) / 4 from the closed expression
    double f_direct;       ///< same point evaluated through f_objective, NaN if invalid
    bool ok;
};

struct UniquenessCertificate {
    std::vector<UniquenessRow> rows;
    double rotation_max_deviation = 0.0;
    bool passed = false;
};

/// (1/18)[5 + 3 x1 + sqrt(9 + 3 x1 (10 + 9 x1))]
double w_uniqueness_bound(double x1);

/**
 * Finite-sample certificate that the W reduced state is the strict minimum
 * of g in the (pi/4, pi/4) subspace along x1 (and by rotation, x2).
 */
UniquenessCertificate w_uniqueness_certificate();

bool verify_w_uniqueness();

} // namespace gm
