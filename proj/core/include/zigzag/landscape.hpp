#ifndef ZIGZAG_LANDSCAPE_HPP
#define ZIGZAG_LANDSCAPE_HPP

#include <string>
#include <vector>

#include "zigzag/potential.hpp"

namespace zigzag {

/// Open arc (lo, hi) on the torus; hi may exceed 1 when the arc wraps.
struct Arc {
    double lo = 0.0;
    double hi = 1.0;

    double length() const { return hi - lo; }
    bool contains(double x) const;
    bool full_circle() const { return hi - lo >= 1.0; }
};

/// A local minimum of V with its sublevel-set labels: the component C(m),
/// the saddle set j(m), the saddle level sigma(m) and the barrier
/// S(m) = sigma(m) - V(m). The rank-1 minimum carries the fictive saddle
/// (empty saddle_set, sigma = barrier = +infinity).
struct LabeledMinimum {
    CriticalPoint point;
    int rank = 0;
    std::vector<Arc> component;
    std::vector<CriticalPoint> saddle_set;
    double sigma = 0.0;
    double barrier = 0.0;
    bool fictive_saddle = false;

    bool has_finite_barrier() const { return !fictive_saddle; }
};

struct H2Report {
    bool h01 = false;
    bool unique_component_minima = false;
    bool disjoint_saddle_sets = false;
    bool s_injective = false;
    bool tie_break_needed = false; // a component had two equal global minima; leftmost chosen

    bool all() const {
        return h01 && unique_component_minima && disjoint_saddle_sets && s_injective;
    }
};

struct Landscape {
    std::vector<LabeledMinimum> minima; // sorted by rank (barrier decreasing)
    std::vector<CriticalPoint> maxima;  // all maxima of V, sorted by location
    CriticalPoint s_max;                // the unique global maximum of V
    int n0 = 0;
    H2Report h2_report;

    const LabeledMinimum& by_rank(int rank) const; // rank in 1..n0
};

/// Recursive sublevel-set labeling over the saddle levels
/// sigma_1 = +inf > sigma_2 > ... : at each level the new connected components
/// of {V < sigma_i} (those containing no previously labeled minimum) each
/// contribute one labeled minimum. Components are unions of arcs computed
/// exactly from the roots of V = sigma_i. Throws H01Violated when the global
/// maximum of V is not unique; ties inside a component pick the leftmost
/// minimizer and raise h2_report.tie_break_needed.
Landscape label_minima(const TorusPotential& V, const std::vector<CriticalPoint>& crit);

/// The four eq-style checks recomputed from a finished landscape.
H2Report check_h2(const TorusPotential& V, const Landscape& l);

/// Independent combinatorial replay on a cell grid (flood fill of
/// {V < sigma - value_tol/2}); test oracle for label_minima.
Landscape brute_force_labels(const TorusPotential& V, int grid_size);

/// CSV block: rank, location, V, V'', S, sigma, saddle_locations.
std::string landscape_csv(const Landscape& l);

} // namespace zigzag

#endif
