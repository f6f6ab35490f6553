#include "gm/numeric.hpp"

#include <limits>
#include <numbers>
#include <vector>

#include "gm/parallel.hpp"

namespace gm::numeric {

SphereMax maximize_on_sphere(const std::function<double(double, double)>& f, int polar, int azimuthal, int seeds,
                             double xtol) {
    // Row i holds theta_i = pi * i / (polar - 1), including both poles.
    constexpr double pi = std::numbers::pi;
    std::vector<double> values(static_cast<std::size_t>(polar) * azimuthal);
    parallel_for(static_cast<std::size_t>(polar), [&](std::size_t i) {
        const double theta = pi * static_cast<double>(i) / (polar - 1);
        for (int j = 0; j < azimuthal; ++j) {
            const double phi = 2 * pi * j / azimuthal;
            values[i * azimuthal + j] = f(theta, phi);
        }
    });

    std::vector<std::size_t> order(values.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    const auto top = std::min<std::size_t>(static_cast<std::size_t>(seeds), order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top), order.end(),
                      [&](std::size_t a, std::size_t b) { return values[a] > values[b] || (values[a] == values[b] && a < b); });

    SphereMax best{-std::numeric_limits<double>::infinity(), 0.0, 0.0};
    const double step = pi / (polar - 1);
    for (std::size_t k = 0; k < top; ++k) {
        const std::size_t cell = order[k];
        const double theta0 = pi * static_cast<double>(cell / azimuthal) / (polar - 1);
        const double phi0 = 2 * pi * static_cast<double>(cell % azimuthal) / azimuthal;
        const auto r = nelder_mead_max(f, {theta0, phi0}, step, xtol);
        if (r.value > best.value) best = {r.value, r.x[0], r.x[1]};
        if (values[cell] > best.value) best = {values[cell], theta0, phi0};
    }
    return best;
}

} // namespace gm::numeric
