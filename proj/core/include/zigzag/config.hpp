#ifndef ZIGZAG_CONFIG_HPP
#define ZIGZAG_CONFIG_HPP

#include <set>
#include <string>
#include <vector>

#include "zigzag/potential.hpp"
#include "zigzag/spectra.hpp"

namespace zigzag {

/// Experiment description read from the plain-text config format:
///
///   name = canonical
///   [potential]          # U(x): the sampler's potential; V = -U is derived
///   cos = [0.0, -0.0375, -0.25]
///   sin = [-0.075]
///   [alpha]              # refreshment rate, same series format
///   cos = [0.7]
///   [run]
///   h = [0.3, 0.2, 0.15, 0.1]
///   n = 513
///   methods = [predict, witten, grushin, direct]
///   replicas = 10000
///   seed = 42
///   out = results
///
/// '#' starts a comment; numbers parse as full-precision decimals.
struct ExperimentConfig {
    std::string name = "potential";
    TorusPotential potential; // U
    TorusPotential alpha;
    std::vector<double> h_list;
    int n = 513;
    std::set<Method> methods;
    int replicas = 10000;
    std::uint64_t seed = 0;
    std::string output_dir = "out";
    double radius_scale = 5.0;
    double t_max = 0.0; // 0: derive from the grushin eigenvalue at each h
};

/// Throws ConfigError with a line diagnostic on any malformed input;
/// validates h strictly decreasing, n odd, methods non-empty.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config(const std::string& path);

/// Serialize back to the config format (round-trips through parse_config).
std::string format_config(const ExperimentConfig& c);

} // namespace zigzag

#endif
