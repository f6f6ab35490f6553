#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

namespace gm::numeric {

struct Bracket {
    double lo;
    double hi;
};

/// Scalar function that may be undefined (poles, excluded branches).
using PartialFn = std::function<std::optional<double>(double)>;

/**
 * Samples f at `samples` equally spaced points strictly inside (lo, hi) and
 * returns every adjacent pair where f changes sign. Pairs touching an
 * undefined sample are skipped; an exact zero sample yields a degenerate
 * bracket [x, x].
 */
inline std::vector<Bracket> sign_change_brackets(const PartialFn& f, double lo, double hi, int samples) {
    std::vector<Bracket> out;
    const double step = (hi - lo) / (samples + 1);
    std::optional<double> prev;
    double prev_x = lo;
    for (int i = 1; i <= samples; ++i) {
        const double x = lo + i * step;
        const auto v = f(x);
        if (v && *v == 0.0) {
            out.push_back({x, x});
        } else if (v && prev && *prev != 0.0 && ((*prev < 0.0) != (*v < 0.0))) {
            out.push_back({prev_x, x});
        }
        prev = v;
        prev_x = x;
    }
    return out;
}

/// Sign-change brackets over [lo, hi] including both endpoints, for total functions.
inline std::vector<Bracket> sign_change_brackets_closed(const std::function<double(double)>& f, double lo, double hi,
                                                        int intervals) {
    std::vector<Bracket> out;
    double prev_x = lo;
    double prev = f(lo);
    if (prev == 0.0) out.push_back({lo, lo});
    for (int i = 1; i <= intervals; ++i) {
        const double x = (i == intervals) ? hi : lo + (hi - lo) * i / intervals;
        const double v = f(x);
        if (v == 0.0) {
            out.push_back({x, x});
        } else if (prev != 0.0 && ((prev < 0.0) != (v < 0.0))) {
            out.push_back({prev_x, x});
        }
        prev = v;
        prev_x = x;
    }
    return out;
}

/**
 * Bisection on a sign-change bracket until its width is <= tol (tol = 0:
 * until lo and hi are adjacent doubles). Returns
 * nullopt if f becomes undefined inside the bracket.
 */
inline std::optional<double> bisect(const PartialFn& f, Bracket b, double tol) {
    if (b.lo == b.hi) return b.lo;
    auto flo = f(b.lo);
    if (!flo) return std::nullopt;
    double lo = b.lo, hi = b.hi;
    const bool lo_negative = *flo < 0.0;
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const auto fm = f(mid);
        if (!fm) return std::nullopt;
        if (*fm == 0.0) return mid;
        if ((*fm < 0.0) == lo_negative) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline double bisect_total(const std::function<double(double)>& f, Bracket b, double tol) {
    return *bisect(PartialFn([&](double x) -> std::optional<double> { return f(x); }), b, tol);
}

struct ScalarMin {
    double x;
    double value;
};

/// Golden-section search for the minimum of a unimodal f on [lo, hi].
inline ScalarMin golden_section_min(const std::function<double(double)>& f, double lo, double hi, double tol) {
    constexpr double inv_phi = 0.6180339887498948482;
    if (hi - lo <= tol) {
        const double x = 0.5 * (lo + hi);
        return {x, f(x)};
    }
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    // The interior bracket never evaluates the endpoints; they can still win
    // when the minimum sits on the boundary.
    ScalarMin best{0.5 * (a + b), f(0.5 * (a + b))};
    for (double x : {lo, hi}) {
        const double v = f(x);
        if (v < best.value) best = {x, v};
    }
    return best;
}

struct SimplexResult {
    std::array<double, 2> x;
    double value;
    int iterations;
    bool converged;
};

/// Nelder-Mead maximization in two variables.
inline SimplexResult nelder_mead_max(const std::function<double(double, double)>& f, std::array<double, 2> start,
                                     double step, double xtol, int max_iter = 4000) {
    struct Vertex {
        std::array<double, 2> x;
        double v;
    };
    auto eval = [&](std::array<double, 2> x) { return Vertex{x, f(x[0], x[1])}; };
    std::array<Vertex, 3> s{eval(start), eval({start[0] + step, start[1]}), eval({start[0], start[1] + step})};
    auto by_value_desc = [](const Vertex& a, const Vertex& b) { return a.v > b.v; };

    int it = 0;
    bool converged = false;
    for (; it < max_iter; ++it) {
        std::sort(s.begin(), s.end(), by_value_desc);
        double diameter = 0.0;
        for (int i = 1; i < 3; ++i) {
            diameter = std::max({diameter, std::abs(s[i].x[0] - s[0].x[0]), std::abs(s[i].x[1] - s[0].x[1])});
        }
        if (diameter <= xtol) {
            converged = true;
            break;
        }
        const std::array<double, 2> centroid{0.5 * (s[0].x[0] + s[1].x[0]), 0.5 * (s[0].x[1] + s[1].x[1])};
        auto along = [&](double t) {
            return eval({centroid[0] + t * (s[2].x[0] - centroid[0]), centroid[1] + t * (s[2].x[1] - centroid[1])});
        };
        const Vertex reflected = along(-1.0);
        if (reflected.v > s[0].v) {
            const Vertex expanded = along(-2.0);
            s[2] = expanded.v > reflected.v ? expanded : reflected;
        } else if (reflected.v > s[1].v) {
            s[2] = reflected;
        } else {
            const Vertex contracted = reflected.v > s[2].v ? along(-0.5) : along(0.5);
            if (contracted.v > std::max(reflected.v, s[2].v)) {
                s[2] = contracted;
            } else if (reflected.v > s[2].v) {
                s[2] = reflected;
            } else {
                for (int i = 1; i < 3; ++i) {
                    s[i] = eval({0.5 * (s[0].x[0] + s[i].x[0]), 0.5 * (s[0].x[1] + s[i].x[1])});
                }
            }
        }
    }
    std::sort(s.begin(), s.end(), by_value_desc);
    return {s[0].x, s[0].v, it, converged};
}

struct SphereMax {
    double value;
    double theta;
    double phi;
};

/**
 * Maximizes f(theta, phi) over the unit sphere: a polar x azimuthal grid
 * sweep, then Nelder-Mead refinement from the best `seeds` cells. The
 * (theta, phi) chart is used unconstrained, since any real pair maps onto the
 * sphere.
 */
SphereMax maximize_on_sphere(const std::function<double(double, double)>& f, int polar = 256, int azimuthal = 512,
                             int seeds = 8, double xtol = 1e-10);

} // namespace gm::numeric
