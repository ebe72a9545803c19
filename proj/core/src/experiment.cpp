#include "zigzag/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>

#include "zigzag/asymptotics.hpp"
#include "zigzag/csv.hpp"
#include "zigzag/landscape.hpp"
#include "zigzag/pdmp.hpp"

namespace zigzag {

namespace {

std::string assumptions_csv(const AssumptionReport& rep) {
    std::ostringstream out;
    out << "h1,h1_alpha0,mixed,h01,alpha_nonnegative,h01_gap,n0\n";
    out << rep.h1 << ',' << rep.h1_alpha0 << ',' << rep.mixed << ',' << rep.h01 << ','
        << rep.alpha_nonnegative << ',' << csv::num(rep.h01_gap) << ',' << rep.n0 << '\n';
    return out.str();
}

std::string matrix_dump(const Eigen::MatrixXd& m, int n, double h) {
    std::ostringstream out;
    out << n << ' ' << csv::num(h) << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << csv::num(m(i, j));
        out << '\n';
    }
    return out.str();
}

} // namespace

RunOutput run_experiment(const ExperimentConfig& config) { return run_experiment(config, false); }

RunOutput run_experiment(const ExperimentConfig& config, bool dump_operators) {
    RunOutput out;
    const auto dir = std::filesystem::path(config.output_dir);
    auto emit = [&](const std::string& name, const std::string& text) {
        csv::write_file((dir / name).string(), text);
        out.files.push_back(name);
    };
    auto log = [&](const std::string& line) { out.log.push_back(line); };

    // Landscape analysis; a Morse violation is a hard error.
    const TorusPotential& U = config.potential;
    const TorusPotential V = U.negated();
    Landscape landscape;
    try {
        const auto crit_v = find_critical_points(V);
        landscape = label_minima(V, crit_v);
    } catch (const Error& e) {
        log(std::string("landscape: ") + e.what());
        out.exit_code = 1;
        return out;
    }
    emit("landscape.csv", landscape_csv(landscape));
    emit("assumptions.csv", assumptions_csv(check_assumptions(U, config.alpha)));
    log("landscape: n0 = " + std::to_string(landscape.n0));

    // Prediction table (always; the comparison references it).
    const auto predictions = predict_table(landscape, config.alpha, config.h_list);
    emit("predictions.csv", prediction_csv(predictions));
    if (predictions.mixed_regime) log("predict: mixed refreshed/unrefreshed regimes");

    const auto want = [&](Method m) { return config.methods.count(m) > 0; };
    const auto grid = CollocationGrid::make(config.n);

    std::ostringstream witten_rows, grushin_rows, direct_rows, pencil_rows, semigroup_rows;
    witten_rows << "potential,h,n,j,mu,gap_ratio,gap_ok\n";
    grushin_rows << "potential,h,n,j,lambda,lambda_linear,g_rel_bound\n";
    direct_rows << "potential,h,n,j,re,im,trusted,floor\n";
    pencil_rows << "potential,h,n,lambda,residual\n";
    semigroup_rows << "potential,h,n,fitted_rate,lambda2_direct,ratio\n";

    struct PerH {
        std::optional<Eigen::VectorXd> grushin;
        std::optional<std::vector<std::complex<double>>> direct;
        std::vector<bool> trusted;
    };
    std::map<double, PerH> results;

    const bool need_bundle = want(Method::witten) || want(Method::grushin) ||
                             want(Method::direct) || want(Method::pencil) ||
                             want(Method::semigroup) || want(Method::simulate);
    for (double h : config.h_list) {
        if (!need_bundle) break;
        const auto bundle = assemble_q(V, config.alpha, grid, h);
        if (dump_operators) {
            emit("dv_h" + csv::num(h) + ".txt", matrix_dump(bundle.d_v, config.n, h));
            emit("witten_h" + csv::num(h) + ".txt", matrix_dump(bundle.witten, config.n, h));
            emit("q_h" + csv::num(h) + ".txt", matrix_dump(bundle.q, config.n, h));
            emit("p_h" + csv::num(h) + ".txt", matrix_dump(bundle.p, config.n, h));
        }

        std::optional<WittenLowModes> low;
        if (want(Method::witten) || want(Method::grushin) || want(Method::pencil) ||
            want(Method::simulate)) {
            try {
                low = witten_low_modes(bundle, landscape.n0, /*require_gap=*/false);
                if (!low->gap_ok)
                    log("witten: h = " + csv::num(h) + ": gap ratio " +
                        csv::num(low->gap_ratio) + " < 10 (asymptotic regime not reached)");
                if (want(Method::witten))
                    for (int j = 0; j < low->count; ++j)
                        witten_rows << config.name << ',' << csv::num(h) << ',' << config.n << ','
                                    << (j + 1) << ',' << csv::num(low->mu(j)) << ','
                                    << csv::num(low->gap_ratio) << ',' << low->gap_ok << '\n';
            } catch (const Error& e) {
                log("witten: h = " + csv::num(h) + ": " + e.what());
            }
        }

        if (low && (want(Method::grushin) || want(Method::pencil) || want(Method::simulate))) {
            try {
                const auto red = grushin_eigenvalues(bundle, *low);
                results[h].grushin = red.lambdas;
                if (want(Method::grushin))
                    for (int j = 0; j < red.lambdas.size(); ++j)
                        grushin_rows << config.name << ',' << csv::num(h) << ',' << config.n << ','
                                     << (j + 1) << ',' << csv::num(red.lambdas(j)) << ','
                                     << csv::num(red.lambdas_linear(j)) << ','
                                     << csv::num(red.g_rel_bound(j)) << '\n';
                if (want(Method::pencil))
                    for (int j = 1; j < red.lambdas.size(); ++j) {
                        const double r = pencil_residual(bundle, red.lambdas(j));
                        pencil_rows << config.name << ',' << csv::num(h) << ',' << config.n << ','
                                    << csv::num(red.lambdas(j)) << ',' << csv::num(r) << '\n';
                    }
            } catch (const Error& e) {
                log("grushin: h = " + csv::num(h) + ": " + e.what());
            }
        }

        if (want(Method::direct) || want(Method::semigroup)) {
            try {
                const auto rep = direct_small_spectrum(bundle, landscape.n0, config.radius_scale);
                results[h].direct = rep.eigenvalues;
                results[h].trusted = rep.trusted;
                if (want(Method::direct))
                    for (std::size_t j = 0; j < rep.eigenvalues.size(); ++j)
                        direct_rows << config.name << ',' << csv::num(h) << ',' << config.n << ','
                                    << (j + 1) << ',' << csv::num(rep.eigenvalues[j].real()) << ','
                                    << csv::num(rep.eigenvalues[j].imag()) << ','
                                    << rep.trusted[j] << ',' << csv::num(rep.resolvability_floor)
                                    << '\n';
                if (want(Method::semigroup)) {
                    const double lam2 = rep.eigenvalues.back().real();
                    if (lam2 < 1e-6) {
                        log("semigroup: h = " + csv::num(h) + ": lambda2 too small to resolve");
                    } else {
                        std::vector<double> ts;
                        for (int k = 1; k <= 10; ++k) ts.push_back(0.5 * k / lam2);
                        const auto fit = semigroup_decay(bundle, ts);
                        semigroup_rows << config.name << ',' << csv::num(h) << ',' << config.n
                                       << ',' << csv::num(fit.rate) << ',' << csv::num(lam2) << ','
                                       << csv::num(fit.rate / lam2) << '\n';
                    }
                }
            } catch (const CountMismatch& e) {
                log("direct: h = " + csv::num(h) + ": " + e.what());
                out.exit_code = 1;
            } catch (const Error& e) {
                log("direct: h = " + csv::num(h) + ": " + e.what());
            }
        }
    }

    if (want(Method::witten)) emit("witten.csv", witten_rows.str());
    if (want(Method::grushin)) emit("grushin.csv", grushin_rows.str());
    if (want(Method::direct)) emit("direct.csv", direct_rows.str());
    if (want(Method::pencil)) emit("pencil.csv", pencil_rows.str());
    if (want(Method::semigroup)) emit("semigroup.csv", semigroup_rows.str());

    if (want(Method::simulate)) {
        std::ostringstream hit_rows;
        hit_rows
            << "h,replicas,excluded,mean,std_error,lambda2_used,h_lambda2_mean,lambda2_mean_over_h\n";
        for (double h : config.h_list) {
            if (landscape.n0 < 2) {
                log("simulate: skipped (n0 < 2)");
                break;
            }
            const auto& per_h = results[h];
            if (!per_h.grushin) {
                log("simulate: h = " + csv::num(h) + ": no grushin eigenvalue available");
                continue;
            }
            const double lam2 = (*per_h.grushin)(1);
            const double t_max = config.t_max > 0.0 ? config.t_max : 500.0 * h / lam2;
            const auto stats = hitting_time_tau(U, config.alpha, h, landscape, config.replicas,
                                                config.seed, t_max);
            if (stats.excluded > 0)
                log("simulate: h = " + csv::num(h) + ": " + std::to_string(stats.excluded) +
                    " replicas hit t_max");
            hit_rows << csv::num(stats.h) << ',' << stats.replicas << ',' << stats.excluded << ','
                     << csv::num(stats.mean) << ',' << csv::num(stats.std_error) << ','
                     << csv::num(lam2) << ',' << csv::num(stats.h * lam2 * stats.mean) << ','
                     << csv::num(lam2 * stats.mean / stats.h) << '\n';
        }
        emit("hitting.csv", hit_rows.str());
    }

    // Master comparison + convergence tables (one row per h per finite-S minimum).
    std::ostringstream comparison, convergence;
    comparison << "h,j,lambda_pred,lambda_grushin,lambda_direct,trusted,ratio_pred,abs_ratio_m1\n";
    convergence << "h,j,abs_ratio_m1\n";
    for (double h : config.h_list) {
        for (const auto& row : predictions.rows) {
            if (row.h != h || row.rank == 1) continue;
            const auto it = results.find(h);
            std::string lam_g = "", lam_d = "", trusted = "", ratio = "", absm1 = "";
            if (it != results.end() && it->second.grushin &&
                it->second.grushin->size() >= row.rank) {
                const double lg = (*it->second.grushin)(row.rank - 1);
                lam_g = csv::num(lg);
                if (row.lambda_pred > 0.0) {
                    ratio = csv::num(lg / row.lambda_pred);
                    absm1 = csv::num(std::abs(lg / row.lambda_pred - 1.0));
                }
            }
            if (it != results.end() && it->second.direct &&
                static_cast<int>(it->second.direct->size()) >= row.rank) {
                lam_d = csv::num((*it->second.direct)[static_cast<std::size_t>(row.rank - 1)].real());
                trusted = it->second.trusted[static_cast<std::size_t>(row.rank - 1)] ? "1" : "0";
            }
            comparison << csv::num(h) << ',' << row.rank << ',' << csv::num(row.lambda_pred) << ','
                       << lam_g << ',' << lam_d << ',' << trusted << ',' << ratio << ',' << absm1
                       << '\n';
            if (!absm1.empty())
                convergence << csv::num(h) << ',' << row.rank << ',' << absm1 << '\n';
        }
    }
    emit("comparison.csv", comparison.str());
    emit("convergence.csv", convergence.str());
    return out;
}

} // namespace zigzag
