#pragma once

#include "gm/states.hpp"

namespace gm {

struct DickeObjectiveSample {
    double alpha;
    double value;
};

/// sum_m sqrt(C(N,m)) a_m cos^{N-m}(alpha) sin^m(alpha); requires non-negative amplitudes.
double dicke_objective(const SymmetricDickeState& state, double alpha);

/// d/d alpha of dicke_objective.
double dicke_objective_derivative(const SymmetricDickeState& state, double alpha);

/**
 * G for a symmetric state with non-negative Dicke amplitudes. With those
 * amplitudes the relative phase of the product state can be fixed to zero,
 * leaving a one-variable maximization over alpha in [0, pi/2]: the derivative
 * is scanned on 512 N intervals, sign changes are bisected to 1e-12, and the
 * best of the critical points and both endpoints wins (ties within 1e-12 go to
 * the smaller alpha). Throws UnsupportedInputError for negative or complex
 * amplitudes.
 */
GmResult gm_dicke_nonneg(const SymmetricDickeState& state);

/// Critical points and endpoints inspected by gm_dicke_nonneg, in increasing alpha.
std::vector<DickeObjectiveSample> dicke_critical_points(const SymmetricDickeState& state);

} // namespace gm
