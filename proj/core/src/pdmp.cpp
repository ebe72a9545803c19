#include "zigzag/pdmp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "zigzag/csv.hpp"
#include "zigzag/rng.hpp"

namespace zigzag {

namespace {

double wrap01(double x) {
    double t = x - std::floor(x);
    return t == 1.0 ? 0.0 : t;
}

} // namespace

double thinning_bound(const TorusPotential& U, const TorusPotential& alpha, double h) {
    if (h <= 0.0) throw std::invalid_argument("thinning_bound: h must be positive");
    return (2.0 / h) * U.derivative_bound(1) + (1.0 / h) * alpha.derivative_bound(0);
}

SimResult simulate_until(PdmpState state, const TorusPotential& U, const TorusPotential& alpha,
                         double h, const StopCondition& stop, std::uint64_t seed, double t_max,
                         std::vector<ZigZagEvent>* sink, std::uint64_t stream) {
    SimResult res;
    Rng rng(seed, stream);
    const double lambda_bound = thinning_bound(U, alpha, h);
    const double inv_bound = 1.0 / lambda_bound;
    const bool alpha_zero = alpha.is_zero();

    state.x = wrap01(state.x);

    auto stop_now = [&](const PdmpState& s) {
        if (stop.target_x && wrap01(s.x - *stop.target_x) == 0.0) return true;
        return stop.predicate && stop.predicate(s);
    };
    if (stop_now(state)) {
        res.state = state;
        res.stopped = true;
        return res;
    }
    if (lambda_bound == 0.0) {
        // Pure transport: either the flight crosses the target or t_max ends it.
        if (stop.target_x) {
            const double d = wrap01((*stop.target_x - state.x) * state.v);
            if (state.t + d <= t_max) {
                state.t += d;
                state.x = *stop.target_x;
                res.state = state;
                res.stopped = true;
                return res;
            }
        }
        state.x = wrap01(state.x + state.v * (t_max - state.t));
        state.t = t_max;
        res.state = state;
        res.time_exceeded = true;
        return res;
    }

    while (true) {
        const double dt = rng.exponential(lambda_bound);

        if (stop.target_x) {
            // Unit speed: distance to the target along the current direction.
            const double d = wrap01((*stop.target_x - state.x) * state.v);
            if (d <= dt) {
                if (state.t + d > t_max) break;
                state.t += d;
                state.x = *stop.target_x;
                res.stopped = true;
                if (sink) sink->push_back({state.t, state.x, state.v, EventKind::crossing});
                res.state = state;
                return res;
            }
        }
        if (state.t + dt > t_max) break;

        state.t += dt;
        state.x = wrap01(state.x + state.v * dt);
        ++res.proposals;

        const double flip_rate = (2.0 / h) * std::max(state.v * U.derivative(state.x, 1), 0.0);
        const double u = rng.u01() * lambda_bound;
        if (u < flip_rate) {
            state.v = -state.v;
            ++res.flips;
            if (sink) sink->push_back({state.t, state.x, state.v, EventKind::flip});
        } else if (!alpha_zero && u < flip_rate + alpha.value(state.x) / h) {
            state.v = rng.pm1();
            ++res.refreshes;
            if (sink) sink->push_back({state.t, state.x, state.v, EventKind::refresh});
        } else if (sink) {
            sink->push_back({state.t, state.x, state.v, EventKind::ghost});
        }
        if (stop.predicate && stop.predicate(state)) {
            res.stopped = true;
            res.state = state;
            return res;
        }
    }

    // t_max reached mid-flight.
    state.x = wrap01(state.x + state.v * (t_max - state.t));
    state.t = t_max;
    res.state = state;
    res.time_exceeded = true;
    return res;
}

HittingStats hitting_time_tau(const TorusPotential& U, const TorusPotential& alpha, double h,
                              const Landscape& landscape, int replicas, std::uint64_t seed,
                              double t_max) {
    if (landscape.n0 < 2)
        throw std::invalid_argument("hitting_time_tau: needs a landscape with n0 >= 2");
    if (replicas < 100)
        throw std::invalid_argument("hitting_time_tau: need at least 100 replicas");
    const auto& m2 = landscape.by_rank(2);
    if (m2.saddle_set.empty())
        throw std::invalid_argument("hitting_time_tau: rank-2 minimum has no saddle");

    HittingStats stats;
    stats.target = m2.point.location;
    stats.start_x = m2.saddle_set.front().location;
    stats.start_v = -1;
    stats.replicas = replicas;
    stats.h = h;
    stats.taus.assign(static_cast<std::size_t>(replicas), -1.0);

    const auto stop = StopCondition::at_point(stats.target);
    int excluded = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : excluded)
    for (int r = 0; r < replicas; ++r) {
        PdmpState s0{stats.start_x, stats.start_v, 0.0};
        const auto res =
            simulate_until(s0, U, alpha, h, stop, seed, t_max, nullptr, static_cast<std::uint64_t>(r));
        if (res.stopped)
            stats.taus[static_cast<std::size_t>(r)] = res.state.t;
        else
            ++excluded;
    }
    stats.excluded = excluded;

    double sum = 0.0;
    int kept = 0;
    for (double tau : stats.taus)
        if (tau >= 0.0) {
            sum += tau;
            ++kept;
        }
    stats.mean = kept > 0 ? sum / kept : 0.0;
    double ss = 0.0;
    for (double tau : stats.taus)
        if (tau >= 0.0) ss += (tau - stats.mean) * (tau - stats.mean);
    stats.std_error = kept > 1 ? std::sqrt(ss / (kept - 1)) / std::sqrt(double(kept)) : 0.0;
    return stats;
}

std::string hitting_csv(const HittingStats& s, double lambda2_used) {
    std::ostringstream out;
    out << "h,replicas,excluded,mean,std_error,lambda2_used,h_lambda2_mean,lambda2_mean_over_h\n";
    out << csv::num(s.h) << ',' << s.replicas << ',' << s.excluded << ',' << csv::num(s.mean)
        << ',' << csv::num(s.std_error) << ',' << csv::num(lambda2_used) << ','
        << csv::num(s.h * lambda2_used * s.mean) << ','
        << csv::num(lambda2_used * s.mean / s.h) << '\n';
    return out.str();
}

} // namespace zigzag
