// fsp — ground states of the rescaled fractional Schrodinger-Poisson system
// on a periodic box, and the semiclassical experiments built on them.

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "fsp/run.hpp"
#include "fsp/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"fsp: spectral ground-state solver for a fractional Schrodinger-Poisson system"};
    app.set_version_flag("--version", std::string("fsp ") + fsp::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    long long seed_override = -1;

    const char* names[] = {"validate", "limit", "solve", "sweep", "multiplicity"};
    const char* briefs[] = {
        "check the structural hypotheses of a configuration",
        "limit-problem ground state at mu = V0",
        "multistart solve at a single eps",
        "descending-eps continuation sweep",
        "sweep plus distinct-solution count at the smallest eps",
    };
    for (int i = 0; i < 5; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], briefs[i]);
        sub->add_option("--config", config_path, "configuration file (defaults apply if omitted)");
        sub->add_option("--out", out_dir, "output directory override");
        sub->add_option("--seed", seed_override, "rng seed override");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        fsp::RunConfig cfg;
        if (!config_path.empty()) cfg = fsp::parse_config_file(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (seed_override >= 0) {
            cfg.rng_seed = static_cast<std::uint64_t>(seed_override);
            cfg.solve.rng_seed = cfg.rng_seed;
        }
        const fsp::Command cmd = fsp::parse_command(app.get_subcommands().front()->get_name());
        const fsp::RunResult res = fsp::run_command(cmd, cfg);
        std::fprintf(res.exit_code == fsp::kExitOk ? stdout : stderr, "%s\n", res.message.c_str());
        return res.exit_code;
    } catch (const fsp::ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return fsp::kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return fsp::kExitError;
    }
}
