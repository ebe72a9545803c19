#ifndef ZIGZAG_POTENTIAL_HPP
#define ZIGZAG_POTENTIAL_HPP

#include <cstddef>
#include <vector>

#include "zigzag/errors.hpp"

namespace zigzag {

// Tolerances shared by the potential/landscape layer.
inline constexpr double kMorseFloor = 1e-8;
inline constexpr double kAlphaFloor = 1e-12;
inline constexpr double kValueTol = 1e-10;
inline constexpr double kRootTol = 1e-12;

/// A smooth 1-periodic function given as a finite Fourier series
///
///   p(x) = sum_k cos_coeffs[k] cos(2 pi k x) + sum_k sin_coeffs[k-1] sin(2 pi k x),
///
/// with derivatives of every order available in closed form by term-wise
/// differentiation. Immutable after construction.
class TorusPotential {
public:
    TorusPotential() = default;
    TorusPotential(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

    /// Constant potential p(x) = c.
    static TorusPotential constant(double c);

    double value(double x) const { return derivative(x, 0); }

    /// d^order/dx^order p(x); term-wise, so exact up to rounding.
    double derivative(double x, int order) const;

    /// [p(x), p'(x), ..., p^(max_order)(x)], max_order <= 4.
    std::vector<double> eval_derivatives(double x, int max_order) const;

    /// Highest Fourier mode with a nonzero coefficient (0 for constants).
    int degree() const { return degree_; }

    /// sum_k (2 pi k)^order (|c_k| + |s_k|): a rigorous sup bound on |p^(order)|.
    double derivative_bound(int order) const;

    /// max_k |coefficient|, including the constant term.
    bool is_zero() const { return degree_ == 0 && constant_term() == 0.0; }

    double constant_term() const { return cos_.empty() ? 0.0 : cos_[0]; }

    TorusPotential negated() const;
    TorusPotential plus_constant(double c) const;
    /// p(x - s) as a new series.
    TorusPotential shifted(double s) const;

    const std::vector<double>& cos_coeffs() const { return cos_; }
    const std::vector<double>& sin_coeffs() const { return sin_; }

private:
    std::vector<double> cos_; // index k >= 0
    std::vector<double> sin_; // index k >= 1 stored at [k-1]
    int degree_ = 0;
};

/// A nondegenerate critical point of a potential.
struct CriticalPoint {
    enum class Kind { minimum, maximum };

    double location = 0.0;          // in [0, 1)
    double value = 0.0;             // p at the point
    double second_derivative = 0.0; // p'' at the point
    Kind kind = Kind::minimum;

    bool is_minimum() const { return kind == Kind::minimum; }
};

/// All roots of p' in [0,1), sorted by location, classified by the sign of p''.
///
/// Bracketing on a uniform grid (default max(1024, 16*degree) points) refined
/// by bisection to root_tol. Throws MorseViolation when p is degenerate
/// (no isolated roots, or |p''| < kMorseFloor at a root) and GridTooCoarse
/// when the bracketing is inconsistent (odd count, adjacent same-kind roots).
std::vector<CriticalPoint> find_critical_points(const TorusPotential& p,
                                                int grid_size = 0,
                                                double root_tol = kRootTol);

/// Critical points of -p from those of p (locations fixed, values/curvatures
/// negated, kinds swapped).
std::vector<CriticalPoint> negate_critical_points(std::vector<CriticalPoint> crit);

/// Standing-assumption report for the pair (U, alpha).
struct AssumptionReport {
    bool h1 = false;         // alpha > alpha_floor at every critical point of U
    bool h1_alpha0 = false;  // alpha <= alpha_floor at every critical point of U
    bool mixed = false;      // neither of the above
    bool h01 = false;        // V = -U attains its maximum at a unique critical point
    bool alpha_nonnegative = false; // alpha >= -alpha_floor on the oversampled grid
    double h01_gap = 0.0;    // V(s_max) minus the runner-up maximum value
    int n0 = 0;              // number of local minima of V (= of U)
};

AssumptionReport check_assumptions(const TorusPotential& U, const TorusPotential& alpha);

} // namespace zigzag

#endif
