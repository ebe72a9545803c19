// Test-only oracles, independent of the library code paths they check.
#ifndef ZIGZAG_TESTS_ORACLES_HPP
#define ZIGZAG_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "zigzag/potential.hpp"

namespace oracles {

/// The canonical tilted double well V(x) = 0.25 (cos 4 pi x + 0.3 sin 2 pi x
/// + 0.15 cos 2 pi x); U = -V.
inline zigzag::TorusPotential canonical_v() {
    return zigzag::TorusPotential({0.0, 0.25 * 0.15, 0.25}, {0.25 * 0.3});
}

inline zigzag::TorusPotential canonical_u() { return canonical_v().negated(); }

/// Central finite differences of order 0..4 with step e.
inline double fd_derivative(const zigzag::TorusPotential& p, double x, int order, double e) {
    auto f = [&](double t) { return p.value(t); };
    switch (order) {
        case 0: return f(x);
        case 1: return (f(x + e) - f(x - e)) / (2 * e);
        case 2: return (f(x + e) - 2 * f(x) + f(x - e)) / (e * e);
        case 3: return (f(x + 2 * e) - 2 * f(x + e) + 2 * f(x - e) - f(x - 2 * e)) / (2 * e * e * e);
        default:
            return (f(x + 2 * e) - 4 * f(x + e) + 6 * f(x) - 4 * f(x - e) + f(x - 2 * e)) /
                   (e * e * e * e);
    }
}

/// Random trigonometric polynomial of the given degree, coefficients in
/// [-range, range].
inline zigzag::TorusPotential random_trig(std::mt19937_64& gen, int degree, double range = 1.0) {
    std::uniform_real_distribution<double> u(-range, range);
    std::vector<double> c(static_cast<std::size_t>(degree) + 1), s(static_cast<std::size_t>(degree));
    for (auto& v : c) v = u(gen);
    for (auto& v : s) v = u(gen);
    return zigzag::TorusPotential(c, s);
}

struct GridExtremum {
    double x;
    double value;
    bool is_min;
};

/// Local extrema located by scanning a dense value grid; locations are cell
/// centers, accurate to 1/n.
inline std::vector<GridExtremum> grid_extrema(const zigzag::TorusPotential& p, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = p.value(double(i) / n);
    std::vector<GridExtremum> out;
    for (int i = 0; i < n; ++i) {
        const double a = v[static_cast<std::size_t>((i + n - 1) % n)];
        const double b = v[static_cast<std::size_t>(i)];
        const double c = v[static_cast<std::size_t>((i + 1) % n)];
        if (b < a && b < c) out.push_back({double(i) / n, b, true});
        if (b > a && b > c) out.push_back({double(i) / n, b, false});
    }
    return out;
}

/// 1-D mountain pass: min over the two circular directions from `from` to
/// `to` of the maximum of V along the path (dense grid walk).
inline double mountain_pass_sigma(const zigzag::TorusPotential& V, double from, double to, int n) {
    auto walk = [&](double a, double b, double dir) {
        double len = (b - a) * dir;
        len -= std::floor(len);
        double peak = -1e300;
        const int steps = std::max(2, int(len * n));
        for (int i = 0; i <= steps; ++i) {
            const double x = a + dir * len * i / steps;
            peak = std::max(peak, V.value(x - std::floor(x)));
        }
        return peak;
    };
    return std::min(walk(from, to, 1.0), walk(from, to, -1.0));
}

/// True iff p has a Morse landscape with pairwise-distinct critical values
/// (gap > tol); used to filter random property-test instances.
inline bool distinct_critical_values(const zigzag::TorusPotential& p, double tol = 1e-6) {
    try {
        const auto crit = zigzag::find_critical_points(p);
        std::vector<double> vals;
        for (const auto& c : crit) vals.push_back(c.value);
        std::sort(vals.begin(), vals.end());
        for (std::size_t i = 0; i + 1 < vals.size(); ++i)
            if (vals[i + 1] - vals[i] < tol) return false;
        return true;
    } catch (const zigzag::Error&) {
        return false;
    }
}

} // namespace oracles

#endif
