#ifndef ZIGZAG_ASYMPTOTICS_HPP
#define ZIGZAG_ASYMPTOTICS_HPP

#include <string>
#include <vector>

#include "zigzag/landscape.hpp"

namespace zigzag {

enum class Regime { refreshed, unrefreshed, witten };

const char* regime_name(Regime r);

/// Leading-order Eyring-Kramers predictor for one minimum:
/// lambda(h) = prefactor * h^h_power * exp(-barrier/h), barrier = 2 S(m).
struct EKPrediction {
    int minimum_rank = 0;
    Regime regime = Regime::witten;
    double prefactor = 0.0;
    double h_power = 1.0;
    double barrier = 0.0;

    double predicted(double h) const;
};

/// a0(m) = (1/pi) sum_{s in j(m)} sqrt(|V''(m) V''(s)|).
double witten_prefactor(const LabeledMinimum& m);

/// zeta0(m) = a0(m) / alpha(m); eigenvalue ~ zeta0 * h * exp(-2S/h).
double refreshed_prefactor(const LabeledMinimum& m, const TorusPotential& alpha);

/// zeta0(m) = (1/2) sum_{s in j(m)} sqrt(|V''(s)|/pi);
/// eigenvalue ~ zeta0 * sqrt(h) * exp(-2S/h). Does not involve V''(m).
double unrefreshed_prefactor(const LabeledMinimum& m);

/// gamma(m, h) = alpha(m) + 2 sqrt(h V''(m) / pi): the leading diagonal of the
/// projected W matrix. Dividing the Witten prediction by it reproduces both
/// the refreshed (alpha(m) > 0) and unrefreshed (alpha(m) = 0) prefactors.
double gamma_leading(const LabeledMinimum& m, const TorusPotential& alpha, double h);

struct PredictionRow {
    int rank = 0;
    Regime regime = Regime::witten;
    double S = 0.0;
    double prefactor = 0.0;
    double h = 0.0;
    double lambda_pred = 0.0;
    double mu_witten_pred = 0.0;
    double lambda_unified_pred = 0.0;
};

struct PredictionTable {
    std::vector<PredictionRow> rows;
    bool mixed_regime = false; // some minima refreshed, some not (allowed)
};

/// One row per minimum per h; regime decided per minimum by
/// alpha(m) > alpha_floor. The rank-1 row is identically zero.
PredictionTable predict_table(const Landscape& l, const TorusPotential& alpha,
                              const std::vector<double>& h_list);

/// CSV: rank, regime, S, prefactor, h, lambda_pred, mu_witten_pred, lambda_unified_pred.
std::string prediction_csv(const PredictionTable& t);

} // namespace zigzag

#endif
