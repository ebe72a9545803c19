// Experiment runner: landscape analysis, Eyring-Kramers prediction tables,
// spectral sweeps (Witten/Grushin/direct/pencil/semigroup) and Zig-Zag
// hitting-time simulation, driven by a plain-text config.
#include <cstdio>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zigzag/asymptotics.hpp"
#include "zigzag/config.hpp"
#include "zigzag/experiment.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::vector<double> h_override;
    int n_override = 0;
    long long seed_override = -1;
    std::string out_override;
    int replicas_override = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->set_help_flag("--help", "print this help message and exit");
    cmd->add_option("config", o.config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--h", o.h_override, "override the h sweep (strictly decreasing)");
    cmd->add_option("--n", o.n_override, "override the collocation grid size (odd)");
    cmd->add_option("--seed", o.seed_override, "override the RNG seed");
    cmd->add_option("--out", o.out_override, "override the output directory");
    cmd->add_option("--replicas", o.replicas_override, "override the replica count");
}

zigzag::ExperimentConfig load(const CommonOpts& o) {
    auto cfg = zigzag::load_config(o.config_path);
    if (!o.h_override.empty()) cfg.h_list = o.h_override;
    if (o.n_override > 0) cfg.n = o.n_override;
    if (o.seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(o.seed_override);
    if (!o.out_override.empty()) cfg.output_dir = o.out_override;
    if (o.replicas_override > 0) cfg.replicas = o.replicas_override;
    // Re-validate after the overrides.
    return zigzag::parse_config(zigzag::format_config(cfg));
}

int run_with_methods(const CommonOpts& o, const std::set<zigzag::Method>& methods,
                     bool intersect, bool dump_operators = false) {
    auto cfg = load(o);
    if (!methods.empty()) {
        if (intersect) {
            std::set<zigzag::Method> keep;
            for (auto m : cfg.methods)
                if (methods.count(m)) keep.insert(m);
            cfg.methods = keep.empty() ? methods : keep;
        } else {
            cfg.methods = methods;
        }
    }
    const auto out = zigzag::run_experiment(cfg, dump_operators);
    for (const auto& line : out.log) std::cerr << line << '\n';
    for (const auto& f : out.files) std::cout << cfg.output_dir << '/' << f << '\n';
    return out.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"zigzag-spectra: metastable spectra of the Zig-Zag process on the torus"};
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);

    CommonOpts o;
    auto* analyze = app.add_subcommand("analyze", "landscape labeling and assumption report");
    auto* predict = app.add_subcommand("predict", "Eyring-Kramers prediction table");
    auto* spectrum =
        app.add_subcommand("spectrum", "Witten/Grushin/direct spectral computations per h");
    auto* compare = app.add_subcommand("compare", "full sweep with the comparison table");
    auto* simulate = app.add_subcommand("simulate", "Zig-Zag hitting-time Monte Carlo");
    bool dump_ops = false;
    spectrum->add_flag("--dump-operators", dump_ops, "write d_V/witten/Q/P matrix dumps");
    for (auto* cmd : {analyze, predict, spectrum, compare, simulate}) add_common(cmd, o);

    CLI11_PARSE(app, argc, argv);

    try {
        using zigzag::Method;
        if (analyze->parsed()) {
            auto cfg = load(o);
            const auto V = cfg.potential.negated();
            const auto crit = zigzag::find_critical_points(V);
            const auto landscape = zigzag::label_minima(V, crit);
            std::cout << zigzag::landscape_csv(landscape);
            return 0;
        }
        if (predict->parsed()) {
            auto cfg = load(o);
            const auto V = cfg.potential.negated();
            const auto landscape = zigzag::label_minima(V, zigzag::find_critical_points(V));
            const auto table = zigzag::predict_table(landscape, cfg.alpha, cfg.h_list);
            std::cout << zigzag::prediction_csv(table);
            return 0;
        }
        if (spectrum->parsed())
            return run_with_methods(o,
                                    {Method::witten, Method::grushin, Method::direct,
                                     Method::pencil, Method::semigroup},
                                    /*intersect=*/true, dump_ops);
        if (compare->parsed()) return run_with_methods(o, {}, false);
        if (simulate->parsed())
            return run_with_methods(o, {Method::grushin, Method::simulate}, /*intersect=*/false);
    } catch (const zigzag::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const zigzag::Error& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
    return 0;
}
