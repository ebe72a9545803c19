#ifndef ZIGZAG_PDMP_HPP
#define ZIGZAG_PDMP_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zigzag/landscape.hpp"
#include "zigzag/potential.hpp"

namespace zigzag {

/// Zig-Zag state: position on the torus, velocity in {+1, -1}, process time.
struct PdmpState {
    double x = 0.0;
    int v = 1;
    double t = 0.0;
};

enum class EventKind { flip, refresh, ghost, crossing };

struct ZigZagEvent {
    double t = 0.0;
    double x = 0.0;
    int v_after = 1;
    EventKind kind = EventKind::ghost;
};

/// Stop rule for simulate_until. A target point is detected exactly inside a
/// flight (unit speed makes the crossing time closed-form); the optional
/// predicate is evaluated at event times.
struct StopCondition {
    std::optional<double> target_x;
    std::function<bool(const PdmpState&)> predicate;

    static StopCondition at_point(double x) { return {x, nullptr}; }
    static StopCondition never() { return {std::nullopt, nullptr}; }
};

struct SimResult {
    PdmpState state;
    bool stopped = false;        // stop condition reached
    bool time_exceeded = false;  // ran into t_max instead
    std::uint64_t proposals = 0; // thinning candidates (including ghosts)
    std::uint64_t flips = 0;
    std::uint64_t refreshes = 0;
};

/// Global thinning bound Lambda = (2/h) sup|U'| + (1/h) sup alpha, from the
/// rigorous coefficient bounds of the two series.
double thinning_bound(const TorusPotential& U, const TorusPotential& alpha, double h);

/// Exact-event simulation of the Zig-Zag process with refreshment:
/// deterministic unit-speed flow between events; candidate events at rate
/// Lambda thinned to flips (rate (2/h)(v U')_+) and refreshments (rate
/// alpha/h, velocity redrawn uniformly from {+1,-1}). Deterministic given
/// (seed, stream). An optional sink receives every accepted event (and the
/// final crossing). Runs until the stop condition or t_max.
SimResult simulate_until(PdmpState state, const TorusPotential& U, const TorusPotential& alpha,
                         double h, const StopCondition& stop, std::uint64_t seed, double t_max,
                         std::vector<ZigZagEvent>* sink = nullptr, std::uint64_t stream = 0);

/// Monte Carlo hitting-time statistics.
struct HittingStats {
    double target = 0.0;
    double start_x = 0.0;
    int start_v = -1;
    int replicas = 0;
    double mean = 0.0;
    double std_error = 0.0;
    double h = 0.0;
    int excluded = 0; // replicas that hit t_max (excluded from the mean)
    std::vector<double> taus;
};

/// tau = first hitting time of {m_2} from (s_2, -1), the rank-2 minimum's
/// saddle; requires a landscape with n0 >= 2 and |j(m_2)| >= 1. Replicas use
/// independent streams (seed, replica) and parallelize over threads without
/// changing the result.
HittingStats hitting_time_tau(const TorusPotential& U, const TorusPotential& alpha, double h,
                              const Landscape& landscape, int replicas, std::uint64_t seed,
                              double t_max);

std::string hitting_csv(const HittingStats& s, double lambda2_used);

} // namespace zigzag

#endif
