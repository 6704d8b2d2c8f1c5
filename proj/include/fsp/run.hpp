// Experiment orchestration: the five commands and result persistence.

#pragma once

#include <string>
#include <vector>

#include "fsp/analysis.hpp"
#include "fsp/config.hpp"
#include "fsp/nehari.hpp"

namespace fsp {

enum class Command { validate, limit, solve, sweep, multiplicity };

Command parse_command(const std::string& name);

// Exit-status taxonomy: configuration problems and convergence failures are
// distinguishable from each other and from success.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;       // I/O or internal failure
inline constexpr int kExitConfig = 2;      // config / hypothesis violation
inline constexpr int kExitUnconverged = 3; // a solve did not converge

struct ResultBundle {
    RunConfig cfg;
    std::string cfg_hash;
    std::string command;
    HypothesisReport validation;
    SolutionRecord limit_record;
    bool has_limit = false;
    std::vector<SolutionRecord> records;
    SweepReport sweep;
    bool has_sweep = false;
    ClusterReport clusters;
    bool has_clusters = false;
};

struct RunResult {
    int exit_code = kExitOk;
    std::string message;
};

// Executes the command, writes the bundle into cfg.out_dir (created if
// needed) and returns the exit status.  Unconverged solves still write a
// partial bundle, flagged, with a distinct exit code.
RunResult run_command(Command cmd, const RunConfig& cfg);

enum class PlotKind { profile, energy_vs_eps, barycenter_vs_eps, potential_slice };

// Writes one tabular CSV for the requested observable into dir; throws a
// named error when the bundle lacks the data.
void emit_plot_data(const ResultBundle& bundle, PlotKind kind, const std::string& dir);

}  // namespace fsp
