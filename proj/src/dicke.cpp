#include "gm/dicke.hpp"

#include <cmath>
#include <numbers>

#include "gm/numeric.hpp"

namespace gm {

namespace {

void require_non_negative(const SymmetricDickeState& state) {
    if (!state.non_negative()) {
        throw UnsupportedInputError(
            "Dicke solver needs real non-negative amplitudes; use the oracle for negative or complex amplitudes");
    }
}

// x^k with 0^0 = 1
double ipow(double x, int k) { return k == 0 ? 1.0 : std::pow(x, k); }

} // namespace

double dicke_objective(const SymmetricDickeState& state, double alpha) {
    require_non_negative(state);
    const int n = state.n_qubits();
    const double c = std::cos(alpha), s = std::sin(alpha);
    double acc = 0.0;
    for (int m = 0; m <= n; ++m) {
        acc += binomial_sqrt(n, m) * state.amplitudes()[m].real() * ipow(c, n - m) * ipow(s, m);
    }
    return acc;
}

double dicke_objective_derivative(const SymmetricDickeState& state, double alpha) {
    require_non_negative(state);
    const int n = state.n_qubits();
    const double c = std::cos(alpha), s = std::sin(alpha);
    double acc = 0.0;
    for (int m = 0; m <= n; ++m) {
        const double b = binomial_sqrt(n, m) * state.amplitudes()[m].real();
        if (b == 0.0) continue;
        double d = 0.0;
        if (m > 0) d += m * ipow(c, n - m + 1) * ipow(s, m - 1);
        if (m < n) d -= (n - m) * ipow(c, n - m - 1) * ipow(s, m + 1);
        acc += b * d;
    }
    return acc;
}

std::vector<DickeObjectiveSample> dicke_critical_points(const SymmetricDickeState& state) {
    require_non_negative(state);
    const double half_pi = std::numbers::pi / 2;
    const int intervals = 512 * state.n_qubits();
    auto deriv = [&](double a) { return dicke_objective_derivative(state, a); };

    std::vector<DickeObjectiveSample> out;
    out.push_back({0.0, dicke_objective(state, 0.0)});
    for (const auto& br : numeric::sign_change_brackets_closed(deriv, 0.0, half_pi, intervals)) {
        const double a = numeric::bisect_total(deriv, br, 1e-12);
        if (a > 0.0 && a < half_pi) out.push_back({a, dicke_objective(state, a)});
    }
    out.push_back({half_pi, dicke_objective(state, half_pi)});
    return out;
}

GmResult gm_dicke_nonneg(const SymmetricDickeState& state) {
    const auto points = dicke_critical_points(state);
    DickeObjectiveSample best = points.front();
    for (const auto& p : points) {
        if (p.value > best.value + 1e-12) best = p;
    }
    GmResult result = GmResult::from_overlap(best.value, Method::dicke);
    result.closest_product.assign(static_cast<std::size_t>(state.n_qubits()),
                                  BlochVector::normalized({std::sin(2 * best.alpha), 0.0, std::cos(2 * best.alpha)}));
    result.diagnostics["alpha"] = best.alpha;
    result.diagnostics["critical_points"] = static_cast<double>(points.size());
    return result;
}

} // namespace gm
