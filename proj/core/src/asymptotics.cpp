#include "zigzag/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "zigzag/csv.hpp"

namespace zigzag {

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::refreshed: return "refreshed";
        case Regime::unrefreshed: return "unrefreshed";
        default: return "witten";
    }
}

double EKPrediction::predicted(double h) const {
    return prefactor * std::pow(h, h_power) * std::exp(-barrier / h);
}

double witten_prefactor(const LabeledMinimum& m) {
    if (m.fictive_saddle)
        throw FictiveSaddle("witten_prefactor: rank-1 minimum has the fictive saddle");
    double a = 0.0;
    for (const auto& s : m.saddle_set)
        a += std::sqrt(std::abs(m.point.second_derivative * s.second_derivative));
    return a / std::numbers::pi;
}

double refreshed_prefactor(const LabeledMinimum& m, const TorusPotential& alpha) {
    const double a_m = alpha.value(m.point.location);
    if (a_m <= kAlphaFloor)
        throw AlphaVanishes("refreshed_prefactor: alpha vanishes at the minimum");
    return witten_prefactor(m) / a_m;
}

double unrefreshed_prefactor(const LabeledMinimum& m) {
    if (m.fictive_saddle)
        throw FictiveSaddle("unrefreshed_prefactor: rank-1 minimum has the fictive saddle");
    double z = 0.0;
    for (const auto& s : m.saddle_set)
        z += std::sqrt(std::abs(s.second_derivative) / std::numbers::pi);
    return 0.5 * z;
}

double gamma_leading(const LabeledMinimum& m, const TorusPotential& alpha, double h) {
    if (h <= 0.0) throw std::invalid_argument("gamma_leading: h must be positive");
    return alpha.value(m.point.location) +
           2.0 * std::sqrt(h * m.point.second_derivative / std::numbers::pi);
}

PredictionTable predict_table(const Landscape& l, const TorusPotential& alpha,
                              const std::vector<double>& h_list) {
    PredictionTable t;
    bool any_refreshed = false, any_unrefreshed = false;
    for (const auto& m : l.minima) {
        Regime regime = Regime::witten;
        double prefactor = 0.0, h_power = 1.0;
        if (!m.fictive_saddle) {
            const bool refreshed = alpha.value(m.point.location) > kAlphaFloor;
            (refreshed ? any_refreshed : any_unrefreshed) = true;
            regime = refreshed ? Regime::refreshed : Regime::unrefreshed;
            prefactor = refreshed ? refreshed_prefactor(m, alpha) : unrefreshed_prefactor(m);
            h_power = refreshed ? 1.0 : 0.5;
        }
        for (double h : h_list) {
            PredictionRow row;
            row.rank = m.rank;
            row.regime = regime;
            row.S = m.barrier;
            row.h = h;
            if (m.fictive_saddle) {
                t.rows.push_back(row); // lambda_1 = 0 identically
                continue;
            }
            row.prefactor = prefactor;
            const double expo = std::exp(-2.0 * m.barrier / h);
            row.lambda_pred = prefactor * std::pow(h, h_power) * expo;
            row.mu_witten_pred = witten_prefactor(m) * h * expo;
            row.lambda_unified_pred = row.mu_witten_pred / gamma_leading(m, alpha, h);
            t.rows.push_back(row);
        }
    }
    t.mixed_regime = any_refreshed && any_unrefreshed;
    return t;
}

std::string prediction_csv(const PredictionTable& t) {
    std::ostringstream out;
    out << "rank,regime,S,prefactor,h,lambda_pred,mu_witten_pred,lambda_unified_pred\n";
    for (const auto& r : t.rows) {
        out << r.rank << ',' << regime_name(r.regime) << ',' << csv::num(r.S) << ','
            << csv::num(r.prefactor) << ',' << csv::num(r.h) << ',' << csv::num(r.lambda_pred)
            << ',' << csv::num(r.mu_witten_pred) << ',' << csv::num(r.lambda_unified_pred)
            << '\n';
    }
    return out.str();
}

} // namespace zigzag
