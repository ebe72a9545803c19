#include "zigzag/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "zigzag/csv.hpp"

namespace zigzag {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap01(double x) {
    double t = x - std::floor(x);
    return t == 1.0 ? 0.0 : t;
}

} // namespace

bool Arc::contains(double x) const {
    if (full_circle()) return true;
    double t = x - lo;
    t -= std::floor(t);
    return t > 0.0 && t < length();
}

const LabeledMinimum& Landscape::by_rank(int rank) const {
    if (rank < 1 || rank > static_cast<int>(minima.size()))
        throw std::out_of_range("Landscape::by_rank");
    return minima[static_cast<std::size_t>(rank - 1)];
}

namespace {

struct Breakpoint {
    double x;      // in [0, 1)
    int crit = -1; // index into crit when the breakpoint is a touching critical point
};

struct BelowArc {
    Arc arc;
    int left_crit = -1;
    int right_crit = -1;
};

// Root of V = sigma inside the open interval (a, b) on which V is strictly
// monotone (a, b are consecutive critical points, possibly wrapping).
double bisect_level(const TorusPotential& V, double a, double b, double sigma, bool rising) {
    double lo = a, hi = b;
    for (int it = 0; it < 200 && hi - lo > kRootTol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = V.value(wrap01(mid)) - sigma;
        if ((f < 0.0) == rising)
            lo = mid;
        else
            hi = mid;
    }
    return wrap01(0.5 * (lo + hi));
}

// Connected components of {V < sigma} as arcs between breakpoints. Breakpoints
// are the critical points at the level (|V - sigma| <= kValueTol) plus the
// transversal crossings, one per monotone stretch whose endpoint values
// straddle the level.
std::vector<BelowArc> components_below(const TorusPotential& V,
                                       const std::vector<CriticalPoint>& crit, double sigma) {
    const int nc = static_cast<int>(crit.size());
    std::vector<Breakpoint> bps;
    for (int i = 0; i < nc; ++i) {
        const auto& a = crit[static_cast<std::size_t>(i)];
        if (std::abs(a.value - sigma) <= kValueTol) {
            bps.push_back({a.location, i});
            continue;
        }
        const auto& b = crit[static_cast<std::size_t>((i + 1) % nc)];
        if (std::abs(b.value - sigma) <= kValueTol) continue;
        const bool a_below = a.value < sigma;
        const bool b_below = b.value < sigma;
        if (a_below == b_below) continue;
        const double hi = b.location + (i + 1 == nc ? 1.0 : 0.0);
        bps.push_back({bisect_level(V, a.location, hi, sigma, /*rising=*/a_below), -1});
    }
    std::sort(bps.begin(), bps.end(),
              [](const Breakpoint& p, const Breakpoint& q) { return p.x < q.x; });

    std::vector<BelowArc> arcs;
    const int nb = static_cast<int>(bps.size());
    for (int k = 0; k < nb; ++k) {
        const auto& l = bps[static_cast<std::size_t>(k)];
        const auto& r = bps[static_cast<std::size_t>((k + 1) % nb)];
        const double hi = r.x + (k + 1 == nb ? 1.0 : 0.0);
        const double mid = wrap01(0.5 * (l.x + hi));
        if (V.value(mid) < sigma) arcs.push_back({{l.x, hi}, l.crit, r.crit});
    }
    return arcs;
}

// Ordering and ranking shared by the exact and brute-force labelings.
Landscape finish_landscape(std::vector<LabeledMinimum> labeled,
                           std::vector<CriticalPoint> maxima, CriticalPoint s_max, bool tie_flag) {
    std::sort(labeled.begin(), labeled.end(), [](const LabeledMinimum& a, const LabeledMinimum& b) {
        if (a.fictive_saddle != b.fictive_saddle) return a.fictive_saddle;
        if (a.barrier != b.barrier) return a.barrier > b.barrier;
        return a.point.location < b.point.location;
    });
    Landscape l;
    l.n0 = static_cast<int>(labeled.size());
    bool injective = true;
    for (int i = 0; i + 1 < l.n0; ++i) {
        const auto& a = labeled[static_cast<std::size_t>(i)];
        const auto& b = labeled[static_cast<std::size_t>(i + 1)];
        if (!a.fictive_saddle && !b.fictive_saddle &&
            std::abs(a.barrier - b.barrier) < kValueTol)
            injective = false;
    }
    for (int i = 0; i < l.n0; ++i) labeled[static_cast<std::size_t>(i)].rank = i + 1;
    l.minima = std::move(labeled);
    l.maxima = std::move(maxima);
    l.s_max = s_max;
    l.h2_report.h01 = true;
    l.h2_report.s_injective = injective;
    l.h2_report.tie_break_needed = tie_flag;
    return l;
}

} // namespace

Landscape label_minima(const TorusPotential& V, const std::vector<CriticalPoint>& crit) {
    std::vector<CriticalPoint> minima, maxima;
    for (const auto& c : crit) (c.is_minimum() ? minima : maxima).push_back(c);
    if (minima.empty() || minima.size() != maxima.size())
        throw GridTooCoarse("label_minima: unbalanced critical points");

    // Unique global maximum (H01).
    std::size_t imax = 0;
    for (std::size_t i = 1; i < maxima.size(); ++i)
        if (maxima[i].value > maxima[imax].value) imax = i;
    for (std::size_t i = 0; i < maxima.size(); ++i)
        if (i != imax && maxima[imax].value - maxima[i].value < kValueTol)
            throw H01Violated("global maximum of V is not unique");
    const CriticalPoint s_max = maxima[imax];

    const int n0 = static_cast<int>(minima.size());
    bool tie_flag = false;

    // Global minimum of V: the rank-1 labeled minimum with the fictive saddle.
    std::size_t iund = 0;
    for (std::size_t i = 1; i < minima.size(); ++i) {
        if (minima[i].value < minima[iund].value - kValueTol) iund = i;
        else if (std::abs(minima[i].value - minima[iund].value) <= kValueTol &&
                 minima[i].location < minima[iund].location) {
            tie_flag = true;
            iund = i;
        }
    }

    std::vector<LabeledMinimum> labeled;
    std::vector<bool> done(minima.size(), false);
    {
        LabeledMinimum um;
        um.point = minima[iund];
        um.component = {Arc{0.0, 1.0}};
        um.sigma = kInf;
        um.barrier = kInf;
        um.fictive_saddle = true;
        labeled.push_back(um);
        done[iund] = true;
    }

    if (n0 > 1) {
        // Saddle levels: distinct values of V on the maxima other than s_max,
        // grouped within kValueTol, processed in decreasing order.
        std::vector<double> saddle_vals;
        for (std::size_t i = 0; i < maxima.size(); ++i)
            if (i != imax) saddle_vals.push_back(maxima[i].value);
        std::sort(saddle_vals.rbegin(), saddle_vals.rend());
        std::vector<double> levels;
        for (double v : saddle_vals)
            if (levels.empty() || levels.back() - v > kValueTol) levels.push_back(v);

        for (double sigma : levels) {
            for (const auto& ba : components_below(V, crit, sigma)) {
                std::vector<std::size_t> inside;
                bool contains_labeled = false;
                for (std::size_t i = 0; i < minima.size(); ++i) {
                    if (!ba.arc.contains(minima[i].location)) continue;
                    if (done[i]) contains_labeled = true;
                    inside.push_back(i);
                }
                if (contains_labeled || inside.empty()) continue;

                std::size_t pick = inside[0];
                int n_tied = 1;
                for (std::size_t k = 1; k < inside.size(); ++k) {
                    const auto& c = minima[inside[k]];
                    const auto& p = minima[pick];
                    if (c.value < p.value - kValueTol) {
                        pick = inside[k];
                        n_tied = 1;
                    } else if (std::abs(c.value - p.value) <= kValueTol) {
                        ++n_tied;
                        if (c.location < p.location) pick = inside[k];
                    }
                }
                if (n_tied > 1) tie_flag = true;

                LabeledMinimum lm;
                lm.point = minima[pick];
                lm.component = {ba.arc};
                lm.sigma = sigma;
                lm.barrier = sigma - minima[pick].value;
                for (int ci : {ba.left_crit, ba.right_crit}) {
                    if (ci < 0) continue;
                    const auto& cp = crit[static_cast<std::size_t>(ci)];
                    if (cp.is_minimum()) continue;
                    bool dup = false;
                    for (const auto& s : lm.saddle_set)
                        if (s.location == cp.location) dup = true;
                    if (!dup) lm.saddle_set.push_back(cp);
                }
                labeled.push_back(std::move(lm));
                done[pick] = true;
            }
        }
    }

    for (bool d : done)
        if (!d) throw GridTooCoarse("label_minima: some minima never labeled");

    auto l = finish_landscape(std::move(labeled), std::move(maxima), s_max, tie_flag);
    l.h2_report = check_h2(V, l);
    l.h2_report.tie_break_needed = tie_flag;
    return l;
}

H2Report check_h2(const TorusPotential& V, const Landscape& l) {
    H2Report rep;
    rep.tie_break_needed = l.h2_report.tie_break_needed;

    // H01: the value at s_max dominates every other maximum by the tolerance.
    rep.h01 = true;
    for (const auto& m : l.maxima)
        if (m.location != l.s_max.location && l.s_max.value - m.value < kValueTol) rep.h01 = false;

    // Each labeled minimum is the unique global minimum of V on its component.
    rep.unique_component_minima = true;
    for (const auto& lm : l.minima) {
        for (const auto& other : l.minima) {
            if (other.point.location == lm.point.location) continue;
            bool in_component = false;
            for (const auto& a : lm.component)
                if (a.contains(other.point.location)) in_component = true;
            if (in_component && other.point.value < lm.point.value + kValueTol)
                rep.unique_component_minima = false;
        }
        (void)V;
    }

    // Saddle sets are pairwise disjoint.
    rep.disjoint_saddle_sets = true;
    for (std::size_t i = 0; i < l.minima.size(); ++i)
        for (std::size_t j = i + 1; j < l.minima.size(); ++j)
            for (const auto& a : l.minima[i].saddle_set)
                for (const auto& b : l.minima[j].saddle_set)
                    if (std::abs(a.location - b.location) < 1e-9) rep.disjoint_saddle_sets = false;

    // S injective on finite values.
    rep.s_injective = true;
    for (std::size_t i = 0; i < l.minima.size(); ++i)
        for (std::size_t j = i + 1; j < l.minima.size(); ++j) {
            const auto& a = l.minima[i];
            const auto& b = l.minima[j];
            if (!a.fictive_saddle && !b.fictive_saddle &&
                std::abs(a.barrier - b.barrier) < kValueTol)
                rep.s_injective = false;
        }
    return rep;
}

Landscape brute_force_labels(const TorusPotential& V, int grid_size) {
    if (grid_size < 10000)
        throw std::invalid_argument("brute_force_labels: grid_size must be >= 1e4");
    const int n = grid_size;
    const double dx = 1.0 / n;
    std::vector<double> vs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) vs[static_cast<std::size_t>(i)] = V.value(i * dx);

    auto at = [&](int i) { return vs[static_cast<std::size_t>((i % n + n) % n)]; };

    // Critical cells by strict neighbor comparison.
    std::vector<int> min_cells, max_cells;
    for (int i = 0; i < n; ++i) {
        const double a = at(i - 1), b = at(i), c = at(i + 1);
        if (b == a || b == c) throw MorseViolation("brute force: flat cells (degenerate input)");
        if (b < a && b < c) min_cells.push_back(i);
        if (b > a && b > c) max_cells.push_back(i);
    }
    if (min_cells.empty())
        throw MorseViolation("brute force: no critical cells");
    if (min_cells.size() != max_cells.size())
        throw GridTooCoarse("brute force: unbalanced extrema");

    auto make_cp = [&](int i, CriticalPoint::Kind kind) {
        CriticalPoint cp;
        cp.location = i * dx;
        cp.value = at(i);
        cp.second_derivative = (at(i + 1) - 2.0 * at(i) + at(i - 1)) / (dx * dx);
        cp.kind = kind;
        return cp;
    };

    std::vector<CriticalPoint> maxima;
    for (int i : max_cells) maxima.push_back(make_cp(i, CriticalPoint::Kind::maximum));

    std::size_t imax = 0;
    for (std::size_t i = 1; i < maxima.size(); ++i)
        if (maxima[i].value > maxima[imax].value) imax = i;
    for (std::size_t i = 0; i < maxima.size(); ++i)
        if (i != imax && maxima[imax].value - maxima[i].value < kValueTol)
            throw H01Violated("brute force: global maximum not unique");
    const CriticalPoint s_max = maxima[imax];
    const int smax_cell = max_cells[imax];

    bool tie_flag = false;
    std::vector<LabeledMinimum> labeled;
    std::vector<bool> done(min_cells.size(), false);
    {
        std::size_t iund = 0;
        for (std::size_t i = 1; i < min_cells.size(); ++i)
            if (at(min_cells[i]) < at(min_cells[iund])) iund = i;
        LabeledMinimum um;
        um.point = make_cp(min_cells[iund], CriticalPoint::Kind::minimum);
        um.component = {Arc{0.0, 1.0}};
        um.sigma = kInf;
        um.barrier = kInf;
        um.fictive_saddle = true;
        labeled.push_back(um);
        done[iund] = true;
    }

    if (min_cells.size() > 1) {
        std::vector<double> saddle_vals;
        for (int i : max_cells)
            if (i != smax_cell) saddle_vals.push_back(at(i));
        std::sort(saddle_vals.rbegin(), saddle_vals.rend());
        std::vector<double> levels;
        for (double v : saddle_vals)
            if (levels.empty() || levels.back() - v > kValueTol) levels.push_back(v);

        std::vector<int> run_id(static_cast<std::size_t>(n));
        for (double sigma : levels) {
            const double theta = sigma - kValueTol / 2;
            // Circular runs of cells below the level.
            std::fill(run_id.begin(), run_id.end(), -1);
            int nruns = 0;
            for (int i = 0; i < n; ++i) {
                if (at(i) >= theta || run_id[static_cast<std::size_t>(i)] >= 0) continue;
                const int id = nruns++;
                int j = i;
                while (at(j) < theta && run_id[static_cast<std::size_t>((j % n + n) % n)] < 0) {
                    run_id[static_cast<std::size_t>((j % n + n) % n)] = id;
                    ++j;
                }
                j = i - 1;
                while (at(j) < theta && run_id[static_cast<std::size_t>((j % n + n) % n)] < 0) {
                    run_id[static_cast<std::size_t>((j % n + n) % n)] = id;
                    --j;
                }
            }
            auto rid = [&](int i) { return run_id[static_cast<std::size_t>((i % n + n) % n)]; };

            // Saddles at this level and the runs they separate.
            struct LevelSaddle {
                int cell;
                int left_run, right_run;
            };
            std::vector<LevelSaddle> level_saddles;
            for (int i : max_cells) {
                if (i == smax_cell || std::abs(at(i) - sigma) > kValueTol) continue;
                int lcell = i, steps = 0;
                while (rid(lcell) < 0 && steps++ < n) --lcell;
                int rcell = i;
                steps = 0;
                while (rid(rcell) < 0 && steps++ < n) ++rcell;
                level_saddles.push_back({i, rid(lcell), rid(rcell)});
            }

            // Which runs already own a labeled minimum.
            std::vector<bool> run_old(static_cast<std::size_t>(nruns), false);
            for (std::size_t k = 0; k < min_cells.size(); ++k)
                if (done[k] && rid(min_cells[k]) >= 0)
                    run_old[static_cast<std::size_t>(rid(min_cells[k]))] = true;

            for (int r = 0; r < nruns; ++r) {
                if (run_old[static_cast<std::size_t>(r)]) continue;
                std::vector<std::size_t> inside;
                for (std::size_t k = 0; k < min_cells.size(); ++k)
                    if (rid(min_cells[k]) == r) inside.push_back(k);
                if (inside.empty()) continue;

                std::size_t pick = inside[0];
                int n_tied = 1;
                for (std::size_t k = 1; k < inside.size(); ++k) {
                    const double cv = at(min_cells[inside[k]]);
                    const double pv = at(min_cells[pick]);
                    if (cv < pv - kValueTol) {
                        pick = inside[k];
                        n_tied = 1;
                    } else if (std::abs(cv - pv) <= kValueTol) {
                        ++n_tied;
                        if (min_cells[inside[k]] < min_cells[pick]) pick = inside[k];
                    }
                }
                if (n_tied > 1) tie_flag = true;

                LabeledMinimum lm;
                lm.point = make_cp(min_cells[pick], CriticalPoint::Kind::minimum);
                // Arc spanned by the run, for reporting only.
                {
                    int a = min_cells[pick];
                    while (rid(a - 1) == r && a > min_cells[pick] - n) --a;
                    int b = min_cells[pick];
                    while (rid(b + 1) == r && b < min_cells[pick] + n) ++b;
                    lm.component = {Arc{a * dx, (b + 1) * dx}};
                }
                lm.sigma = sigma;
                lm.barrier = sigma - lm.point.value;
                for (const auto& s : level_saddles) {
                    if (s.left_run != r && s.right_run != r) continue;
                    bool dup = false;
                    for (const auto& sp : lm.saddle_set)
                        if (sp.location == s.cell * dx) dup = true;
                    if (!dup) lm.saddle_set.push_back(make_cp(s.cell, CriticalPoint::Kind::maximum));
                }
                labeled.push_back(std::move(lm));
                done[pick] = true;
            }
        }
    }

    for (bool d : done)
        if (!d) throw GridTooCoarse("brute force: some minima never labeled");

    auto l = finish_landscape(std::move(labeled), std::move(maxima), s_max, tie_flag);
    // The remaining H2 clauses, evaluated combinatorially on cells.
    l.h2_report.h01 = true;
    l.h2_report.unique_component_minima = true;
    l.h2_report.disjoint_saddle_sets = true;
    for (std::size_t i = 0; i < l.minima.size(); ++i)
        for (std::size_t j = i + 1; j < l.minima.size(); ++j)
            for (const auto& a : l.minima[i].saddle_set)
                for (const auto& b : l.minima[j].saddle_set)
                    if (a.location == b.location) l.h2_report.disjoint_saddle_sets = false;
    l.h2_report.tie_break_needed = tie_flag;
    return l;
}

std::string landscape_csv(const Landscape& l) {
    std::ostringstream out;
    out << "rank,location,V,Vpp,S,sigma,saddle_locations\n";
    for (const auto& m : l.minima) {
        out << m.rank << ',' << csv::num(m.point.location) << ',' << csv::num(m.point.value)
            << ',' << csv::num(m.point.second_derivative) << ',' << csv::num(m.barrier) << ','
            << csv::num(m.sigma) << ',';
        for (std::size_t i = 0; i < m.saddle_set.size(); ++i) {
            if (i) out << ';';
            out << csv::num(m.saddle_set[i].location);
        }
        out << '\n';
    }
    return out.str();
}

} // namespace zigzag
