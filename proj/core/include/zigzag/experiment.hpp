#ifndef ZIGZAG_EXPERIMENT_HPP
#define ZIGZAG_EXPERIMENT_HPP

#include <string>
#include <vector>

#include "zigzag/config.hpp"

namespace zigzag {

struct RunOutput {
    int exit_code = 0;                     // nonzero iff a hard error occurred
    std::vector<std::string> files;        // paths written, relative to output_dir
    std::vector<std::string> log;          // one line per step / surfaced error
};

/// Execute an experiment: landscape analysis and assumption report, the
/// prediction table, the requested spectral methods per h, the optional
/// simulation, and the master comparison/convergence tables. Each output is a
/// CSV in config.output_dir; identical config + seed give byte-identical
/// files. Module errors are surfaced with their (h, method) context in the
/// log; Morse violations and count mismatches set a nonzero exit code.
RunOutput run_experiment(const ExperimentConfig& config);

/// dump_operators: write row-major text dumps of d_V, witten, Q, P for each h
/// (header line "n h", then one matrix row per line).
RunOutput run_experiment(const ExperimentConfig& config, bool dump_operators);

} // namespace zigzag

#endif
