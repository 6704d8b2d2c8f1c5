// Flat key-value run configuration: parsing, validation, canonical echo.
//
// Format: one `key = value` per line, `#` starts a comment, keys are
// namespaced (grid.n, frac.s, model.potential, ...).  Unknown keys are
// errors.  Lists are whitespace-separated; 2D points are comma pairs "x,y".

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsp/model.hpp"
#include "fsp/nehari.hpp"

namespace fsp {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct RunConfig {
    int grid_dim = 1;
    int grid_n = 256;
    double grid_L = 20.0;

    double s = 0.4;
    double alpha = 0.8;
    double theta = 0.3;
    double eps = 0.25;
    std::vector<double> eps_list{0.5, 0.25, 0.125};

    std::string potential = "multi_well";  // constant | multi_well | ring
    double mu = 1.0;
    double V0 = 1.0;
    double Vinf = 3.0;
    double width = 0.4;
    std::vector<Point> centers{{-1.0, 0.0}, {1.0, 0.0}};
    double ring_radius = 1.0;
    double q = 3.5;
    bool coupling = true;
    bool dealias = false;

    SolveConfig solve;

    bool seeds_wells = true;
    int seeds_random = 0;

    double merge_radius = -1.0;   // < 0: default (delta of the potential)
    double energy_window = -1.0;  // < 0: default (2 * h_hat)

    std::string out_dir = "out";
    std::uint64_t rng_seed = 12345;

    bool operator==(const RunConfig&) const = default;
};

// Syntax- and type-level parse; does not run the hypothesis validation.
RunConfig parse_config_text(const std::string& text, const std::string& origin);
RunConfig parse_config_file(const std::string& path);

// Full parse: reads the file and validates the hypotheses; throws ConfigError
// naming the violated inequality.
RunConfig parse_config(const std::string& path);

// Hypothesis report for a parsed config (never throws; potential construction
// failures are folded into the V1 entry).
HypothesisReport validate_config(const RunConfig& cfg);

Potential build_potential(const RunConfig& cfg);
GridSpec build_grid(const RunConfig& cfg);
// Model at cfg.eps; runs the full validation.
ModelParams build_model(const RunConfig& cfg);

// Canonical echo; parse_config_text(render_config(c)) == c.
std::string render_config(const RunConfig& cfg);

// FNV-1a hash of the canonical echo, as fixed-width hex.
std::string config_hash(const RunConfig& cfg);

}  // namespace fsp
