#include "zigzag/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace zigzag {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int trimmed_degree(const std::vector<double>& cos_c, const std::vector<double>& sin_c) {
    int deg = 0;
    for (std::size_t k = 1; k < cos_c.size(); ++k)
        if (cos_c[k] != 0.0) deg = static_cast<int>(k);
    for (std::size_t k = 1; k <= sin_c.size(); ++k)
        if (sin_c[k - 1] != 0.0) deg = std::max(deg, static_cast<int>(k));
    return deg;
}

} // namespace

TorusPotential::TorusPotential(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
    : cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
    if (cos_.empty()) cos_.push_back(0.0);
    degree_ = trimmed_degree(cos_, sin_);
}

TorusPotential TorusPotential::constant(double c) { return TorusPotential({c}, {}); }

double TorusPotential::derivative(double x, int order) const {
    // d^r cos(k t) = k^r cos(k t + r pi/2), likewise for sin; the quarter-turn
    // cycles through {cos, -sin, -cos, sin}.
    const double theta = kTwoPi * x;
    double c = std::cos(theta);
    double s = std::sin(theta);
    double ck = 1.0, sk = 0.0; // cos/sin of k*theta, starting at k = 0
    double acc = (order == 0) ? cos_[0] : 0.0;
    const int r = order & 3;
    for (int k = 1; k <= degree_; ++k) {
        const double ckn = ck * c - sk * s;
        const double skn = sk * c + ck * s;
        ck = ckn;
        sk = skn;
        double cos_rot, sin_rot;
        switch (r) {
            case 0: cos_rot = ck;  sin_rot = sk;  break;
            case 1: cos_rot = -sk; sin_rot = ck;  break;
            case 2: cos_rot = -ck; sin_rot = -sk; break;
            default: cos_rot = sk; sin_rot = -ck; break;
        }
        double term = 0.0;
        if (k < static_cast<int>(cos_.size())) term += cos_[k] * cos_rot;
        if (k <= static_cast<int>(sin_.size())) term += sin_[k - 1] * sin_rot;
        acc += term * std::pow(kTwoPi * k, order);
    }
    return acc;
}

std::vector<double> TorusPotential::eval_derivatives(double x, int max_order) const {
    if (max_order < 0 || max_order > 4)
        throw std::invalid_argument("eval_derivatives: max_order must be in [0, 4]");
    std::vector<double> out(static_cast<std::size_t>(max_order) + 1);
    for (int r = 0; r <= max_order; ++r) out[static_cast<std::size_t>(r)] = derivative(x, r);
    return out;
}

double TorusPotential::derivative_bound(int order) const {
    double b = (order == 0) ? std::abs(cos_[0]) : 0.0;
    for (int k = 1; k <= degree_; ++k) {
        double a = 0.0;
        if (k < static_cast<int>(cos_.size())) a += std::abs(cos_[k]);
        if (k <= static_cast<int>(sin_.size())) a += std::abs(sin_[k - 1]);
        b += a * std::pow(kTwoPi * k, order);
    }
    return b;
}

TorusPotential TorusPotential::negated() const {
    std::vector<double> c(cos_), s(sin_);
    for (auto& v : c) v = -v;
    for (auto& v : s) v = -v;
    return TorusPotential(std::move(c), std::move(s));
}

TorusPotential TorusPotential::plus_constant(double add) const {
    std::vector<double> c(cos_);
    c[0] += add;
    return TorusPotential(std::move(c), sin_);
}

TorusPotential TorusPotential::shifted(double s) const {
    std::vector<double> nc(cos_), ns(sin_);
    ns.resize(std::max(ns.size(), cos_.size() > 0 ? cos_.size() - 1 : 0), 0.0);
    nc.resize(std::max(nc.size(), ns.size() + 1), 0.0);
    for (std::size_t k = 1; k < nc.size(); ++k) {
        const double ck = k < cos_.size() ? cos_[k] : 0.0;
        const double sk = k <= sin_.size() ? sin_[k - 1] : 0.0;
        const double cs = std::cos(kTwoPi * static_cast<double>(k) * s);
        const double sn = std::sin(kTwoPi * static_cast<double>(k) * s);
        nc[k] = ck * cs - sk * sn;
        ns[k - 1] = ck * sn + sk * cs;
    }
    return TorusPotential(std::move(nc), std::move(ns));
}

std::vector<CriticalPoint> negate_critical_points(std::vector<CriticalPoint> crit) {
    for (auto& c : crit) {
        c.value = -c.value;
        c.second_derivative = -c.second_derivative;
        c.kind = c.is_minimum() ? CriticalPoint::Kind::maximum : CriticalPoint::Kind::minimum;
    }
    return crit;
}

namespace {

double bisect_root(const TorusPotential& p, double lo, double hi, double flo, double tol) {
    // p' has a single simple root in (lo, hi); flo = sign reference at lo.
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = p.derivative(mid, 1);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::vector<CriticalPoint> find_critical_points(const TorusPotential& p, int grid_size,
                                                double root_tol) {
    const int deg = p.degree();
    if (grid_size <= 0) grid_size = std::max(1024, 16 * deg);
    if (grid_size < 8 * deg) throw std::invalid_argument("find_critical_points: grid too small");
    if (root_tol <= 0.0) throw std::invalid_argument("find_critical_points: root_tol must be > 0");

    const int n = grid_size;
    std::vector<double> fp(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) fp[static_cast<std::size_t>(i)] = p.derivative(static_cast<double>(i) / n, 1);

    std::vector<double> roots;
    for (int i = 0; i < n; ++i) {
        const double a = static_cast<double>(i) / n;
        const double fa = fp[static_cast<std::size_t>(i)];
        const double fb = fp[static_cast<std::size_t>((i + 1) % n)];
        if (fa == 0.0) {
            roots.push_back(a);
        } else if (fb != 0.0 && (fa > 0.0) != (fb > 0.0)) {
            roots.push_back(bisect_root(p, a, a + 1.0 / n, fa, root_tol));
        }
    }
    if (roots.empty())
        throw MorseViolation("no isolated roots of p' (constant or degenerate potential)");

    std::vector<CriticalPoint> out;
    out.reserve(roots.size());
    for (double r : roots) {
        const double pp = p.derivative(r, 2);
        if (std::abs(pp) < kMorseFloor)
            throw MorseViolation("|p''| below Morse floor at x = " + std::to_string(r));
        out.push_back({r, p.value(r), pp,
                       pp > 0.0 ? CriticalPoint::Kind::minimum : CriticalPoint::Kind::maximum});
    }
    std::sort(out.begin(), out.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) { return a.location < b.location; });

    if (out.size() % 2 != 0)
        throw GridTooCoarse("odd number of critical points bracketed");
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& a = out[i];
        const auto& b = out[(i + 1) % out.size()];
        if (a.kind == b.kind)
            throw GridTooCoarse("adjacent critical points of the same kind");
    }
    return out;
}

AssumptionReport check_assumptions(const TorusPotential& U, const TorusPotential& alpha) {
    AssumptionReport rep;
    const auto crit_u = find_critical_points(U);

    bool all_pos = true, all_zero = true;
    for (const auto& c : crit_u) {
        const double a = alpha.value(c.location);
        if (a > kAlphaFloor)
            all_zero = false;
        else
            all_pos = false;
    }
    rep.h1 = all_pos;
    rep.h1_alpha0 = all_zero;
    rep.mixed = !all_pos && !all_zero;

    // H01 for V = -U: the largest critical value of V is attained once,
    // with a gap of at least kValueTol to the runner-up.
    const auto crit_v = negate_critical_points(crit_u);
    double best = -1e300, second = -1e300;
    int n_min = 0;
    for (const auto& c : crit_v) {
        if (c.is_minimum()) {
            ++n_min;
            continue;
        }
        if (c.value > best) {
            second = best;
            best = c.value;
        } else if (c.value > second) {
            second = c.value;
        }
    }
    rep.n0 = n_min;
    rep.h01_gap = best - second;
    rep.h01 = (second == -1e300) || (best - second >= kValueTol);

    // Non-negativity of alpha, checked on an 8x-oversampled grid.
    const int n = std::max(1024, 16 * std::max(alpha.degree(), 1));
    rep.alpha_nonnegative = true;
    for (int i = 0; i < n; ++i) {
        if (alpha.value(static_cast<double>(i) / n) < -kAlphaFloor) {
            rep.alpha_nonnegative = false;
            break;
        }
    }
    return rep;
}

} // namespace zigzag
