#include "fsp/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>

#include "fsp/io.hpp"
#include "fsp/version.hpp"
#include "json.hpp"

namespace fsp {

namespace fs = std::filesystem;
using nlohmann::json;

Command parse_command(const std::string& name) {
    if (name == "validate") return Command::validate;
    if (name == "limit") return Command::limit;
    if (name == "solve") return Command::solve;
    if (name == "sweep") return Command::sweep;
    if (name == "multiplicity") return Command::multiplicity;
    throw ConfigError("unknown command '" + name + "'");
}

namespace {

std::string command_name(Command c) {
    switch (c) {
        case Command::validate: return "validate";
        case Command::limit: return "limit";
        case Command::solve: return "solve";
        case Command::sweep: return "sweep";
        case Command::multiplicity: return "multiplicity";
    }
    return "?";
}

json point_json(const Point& p) { return json::array({p[0], p[1]}); }

json energy_json(const EnergyBreakdown& e) {
    return json{{"kinetic", e.kinetic},
                {"potential", e.potential},
                {"coupling", e.coupling},
                {"nonlinear", e.nonlinear},
                {"total", e.total}};
}

json record_json(const SolutionRecord& r, const std::string& field_file,
                 const std::string& cfg_hash) {
    return json{{"config", cfg_hash},
                {"seed", {{"kind", r.seed.kind}, {"y", point_json(r.seed.y)}, {"rng_seed", r.seed.rng_seed}}},
                {"eps", r.eps},
                {"converged", r.converged},
                {"iterations", r.iterations},
                {"residual", r.residual},
                {"defect", r.defect},
                {"energy", energy_json(r.energy)},
                {"barycenter", point_json(r.bary)},
                {"boundary_mass", r.boundary_mass},
                {"escaped", r.escaped},
                {"field_file", field_file}};
}

json report_json(const HypothesisReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return json{{"all_passed", rep.all_passed()}, {"checks", checks}};
}

json cluster_json(const ClusterReport& cr, const std::string& cfg_hash) {
    json clusters = json::array();
    for (const auto& c : cr.clusters)
        clusters.push_back({{"representative", c.representative},
                            {"members", c.members},
                            {"centroid", point_json(c.centroid)},
                            {"energy_min", c.energy_min},
                            {"energy_max", c.energy_max},
                            {"dist_M", c.dist_M}});
    return json{{"config", cfg_hash},
                {"cat_M", cr.cat_M},
                {"count_distinct", cr.count_distinct},
                {"merge_radius", cr.merge_radius},
                {"energy_window", cr.energy_window},
                {"clusters", clusters},
                {"outliers", cr.outliers},
                {"unconverged", cr.unconverged}};
}

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void write_bundle_meta(const ResultBundle& b, const std::string& dir, const json& summary) {
    json meta{{"tool", "fsp"},
              {"version", kVersion},
              {"command", b.command},
              {"config", b.cfg_hash},
              {"timestamp", timestamp_now()},  // metadata only; numeric tables stay reproducible
              {"summary", summary}};
    write_text_file(dir + "/bundle.json", meta.dump(2) + "\n");
}

// Random seed points drawn in the region where a cutoff bump fits the box at
// the smallest eps in play; deterministic in the rng seed.
std::vector<Point> random_seed_points(const RunConfig& cfg, const Potential& pot, double eps_min) {
    std::vector<Point> pts;
    if (cfg.seeds_random <= 0) return pts;
    const double radius = eps_min * cfg.grid_L - pot.delta;
    if (!(radius > 0.0)) return pts;
    std::mt19937_64 rng(cfg.rng_seed);
    std::uniform_real_distribution<double> unif(-radius, radius);
    for (int i = 0; i < cfg.seeds_random; ++i) {
        Point y{unif(rng), 0.0};
        if (cfg.grid_dim == 2) y[1] = unif(rng);
        pts.push_back(y);
    }
    return pts;
}

std::vector<Point> well_seed_points(const RunConfig& cfg, const Potential& pot) {
    std::vector<Point> pts;
    if (cfg.seeds_wells)
        for (const Point& y : pot.minima) pts.push_back(y);
    return pts;
}

void write_seed_gaps_csv(const SweepReport& rep, const std::string& dir,
                         const std::string& cfg_hash) {
    CsvTable t;
    t.header = {"eps", "well", "y0", "y1", "level_gap", "beta_error"};
    for (const auto& entry : rep.entries)
        for (std::size_t w = 0; w < entry.seed_diags.size(); ++w) {
            const auto& d = entry.seed_diags[w];
            t.rows.push_back({entry.eps, static_cast<double>(w), d.y[0], d.y[1],
                              d.level_gap, d.beta_error});
        }
    save_csv(dir + "/seed_gaps.csv", t, cfg_hash);
}

int exit_for_records(const std::vector<SolutionRecord>& records, std::string& msg) {
    int bad = 0;
    for (const auto& r : records)
        if (!r.converged) ++bad;
    if (bad > 0) {
        msg += " (" + std::to_string(bad) + " of " + std::to_string(records.size()) +
               " solves unconverged)";
        return kExitUnconverged;
    }
    return kExitOk;
}

}  // namespace

void emit_plot_data(const ResultBundle& bundle, PlotKind kind, const std::string& dir) {
    const std::string& hash = bundle.cfg_hash;
    switch (kind) {
        case PlotKind::profile: {
            const SolutionRecord* best = nullptr;
            for (const auto& r : bundle.records)
                if (r.converged && (best == nullptr || r.energy.total < best->energy.total))
                    best = &r;
            if (best == nullptr && bundle.has_limit) best = &bundle.limit_record;
            if (best == nullptr)
                throw std::runtime_error("emit_plot_data: no converged record for 'profile'");
            if (best->u.grid.dim != 1)
                throw std::runtime_error("emit_plot_data: 'profile' needs a 1D solution");
            const GridSpec& g = best->u.grid;
            const Potential pot = build_potential(bundle.cfg);
            const double eps = best->eps > 0.0 ? best->eps : 1.0;
            Field v = sample_potential(pot, g, eps);
            Field phi(g);
            if (best->eps > 0.0 && bundle.cfg.coupling) {
                RieszKernel kernel = build_kernel(g, bundle.cfg.alpha);
                FracParams fp{bundle.cfg.s, bundle.cfg.alpha, bundle.cfg.theta, best->eps, g.dim};
                phi = solve_poisson(best->u, kernel, fp).phi;
            }
            CsvTable t;
            t.header = {"x", "u", "phi", "V_eps"};
            for (int i = 0; i < g.n; ++i)
                t.rows.push_back({g.coord(i), best->u[static_cast<std::size_t>(i)],
                                  phi[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i)]});
            save_csv(dir + "/profile.csv", t, hash);
            break;
        }
        case PlotKind::energy_vs_eps: {
            if (!bundle.has_sweep)
                throw std::runtime_error("emit_plot_data: no sweep data for 'energy_vs_eps'");
            CsvTable t;
            t.header = {"eps", "m_hat_eps", "m_inf_V0"};
            for (const auto& e : bundle.sweep.entries)
                t.rows.push_back({e.eps, e.m_hat, bundle.sweep.m_inf_V0});
            save_csv(dir + "/energy_vs_eps.csv", t, hash);
            break;
        }
        case PlotKind::barycenter_vs_eps: {
            if (!bundle.has_sweep)
                throw std::runtime_error("emit_plot_data: no sweep data for 'barycenter_vs_eps'");
            std::size_t max_c = 0;
            for (const auto& e : bundle.sweep.entries) max_c = std::max(max_c, e.cluster_dists.size());
            CsvTable t;
            t.header = {"eps", "n_clusters"};
            for (std::size_t c = 0; c < max_c; ++c) t.header.push_back("dist_cluster_" + std::to_string(c));
            for (const auto& e : bundle.sweep.entries) {
                std::vector<double> row{e.eps, static_cast<double>(e.cluster_count)};
                for (std::size_t c = 0; c < max_c; ++c)
                    row.push_back(c < e.cluster_dists.size() ? e.cluster_dists[c]
                                                             : std::numeric_limits<double>::quiet_NaN());
                t.rows.push_back(std::move(row));
            }
            save_csv(dir + "/barycenter_vs_eps.csv", t, hash);
            break;
        }
        case PlotKind::potential_slice: {
            const GridSpec g = build_grid(bundle.cfg);
            const Potential pot = build_potential(bundle.cfg);
            const double eps = bundle.has_sweep ? bundle.sweep.entries.back().eps : bundle.cfg.eps;
            // Slice along axis 0 (through y = 0 in 2D).
            CsvTable t;
            t.header = {"x", "V_eps"};
            for (int i = 0; i < g.n; ++i)
                t.rows.push_back({g.coord(i), pot(Point{eps * g.coord(i), 0.0})});
            save_csv(dir + "/potential_slice.csv", t, hash);
            break;
        }
    }
}

RunResult run_command(Command cmd, const RunConfig& cfg) {
    ResultBundle bundle;
    bundle.cfg = cfg;
    bundle.cfg_hash = config_hash(cfg);
    bundle.command = command_name(cmd);
    const std::string dir = cfg.out_dir;

    try {
        fs::create_directories(dir);
        write_text_file(dir + "/config_echo.cfg", render_config(cfg));

        bundle.validation = validate_config(cfg);
        write_text_file(dir + "/validation.json",
                        report_json(bundle.validation).dump(2) + "\n");

        if (cmd == Command::validate) {
            json summary{{"all_passed", bundle.validation.all_passed()}};
            write_bundle_meta(bundle, dir, summary);
            if (!bundle.validation.all_passed())
                return {kExitConfig,
                        "validation failed: " + bundle.validation.first_failure()};
            return {kExitOk, "all hypotheses hold"};
        }
        if (!bundle.validation.all_passed())
            throw ConfigError("hypothesis violated: " + bundle.validation.first_failure());

        const GridSpec grid = build_grid(cfg);
        const Potential pot = build_potential(cfg);
        const Nonlinearity nonlin(cfg.q);

        // Every solving command starts from the limit ground state at V0.
        SolutionRecord w0 = ground_state_limit(pot.V0, cfg.s, grid, nonlin, cfg.solve);
        bundle.limit_record = w0;
        bundle.has_limit = true;
        save_field(dir + "/w0.field", w0.u, "u", bundle.cfg_hash);
        write_text_file(dir + "/limit.json",
                        record_json(w0, "w0.field", bundle.cfg_hash).dump(2) + "\n");

        if (cmd == Command::limit) {
            if (grid.dim == 1) emit_plot_data(bundle, PlotKind::profile, dir);
            json summary{{"mu", pot.V0}, {"m_inf", w0.energy.total}, {"converged", w0.converged}};
            write_bundle_meta(bundle, dir, summary);
            std::string msg = "limit level at mu=V0: " + format_g17(w0.energy.total);
            return {w0.converged ? kExitOk : kExitUnconverged,
                    w0.converged ? msg : msg + " (unconverged)"};
        }

        if (cmd == Command::solve) {
            const ModelParams model = build_model(cfg);
            const Problem prob = Problem::make(model, cfg.coupling, cfg.dealias);
            std::vector<Field> seeds;
            std::vector<SeedInfo> infos;
            for (const Point& y : well_seed_points(cfg, pot)) {
                seeds.push_back(bump_seed(y, cfg.eps, pot.delta, w0.u));
                infos.push_back(SeedInfo{"bump", y, cfg.rng_seed});
            }
            for (const Point& y : random_seed_points(cfg, pot, cfg.eps)) {
                seeds.push_back(bump_seed(y, cfg.eps, pot.delta, w0.u));
                infos.push_back(SeedInfo{"random", y, cfg.rng_seed});
            }
            if (seeds.empty()) throw ConfigError("solve: no seeds (enable seeds.wells or seeds.random)");

            bundle.records = multistart(prob, cfg.solve, seeds, infos);
            json recs = json::array();
            for (std::size_t i = 0; i < bundle.records.size(); ++i) {
                const std::string ff = "sol_" + std::to_string(i) + ".field";
                save_field(dir + "/" + ff, bundle.records[i].u, "u", bundle.cfg_hash);
                recs.push_back(record_json(bundle.records[i], ff, bundle.cfg_hash));
            }
            write_text_file(dir + "/records.json", recs.dump(2) + "\n");
            if (grid.dim == 1) emit_plot_data(bundle, PlotKind::profile, dir);
            emit_plot_data(bundle, PlotKind::potential_slice, dir);

            double best = std::numeric_limits<double>::quiet_NaN();
            for (const auto& r : bundle.records)
                if (r.converged && (std::isnan(best) || r.energy.total < best)) best = r.energy.total;
            json summary{{"m_hat", best}, {"n_records", bundle.records.size()}};
            write_bundle_meta(bundle, dir, summary);
            std::string msg = "solved " + std::to_string(bundle.records.size()) +
                              " seeds at eps=" + format_g17(cfg.eps);
            return {exit_for_records(bundle.records, msg), msg};
        }

        // sweep / multiplicity
        const ModelParams model =
            build_model([&] { RunConfig c = cfg; c.eps = cfg.eps_list.front(); return c; }());
        std::vector<Point> seed_points = well_seed_points(cfg, pot);
        for (const Point& y : random_seed_points(cfg, pot, cfg.eps_list.back()))
            seed_points.push_back(y);
        if (seed_points.empty())
            throw ConfigError("sweep: no seed points (enable seeds.wells or seeds.random)");

        bundle.sweep = continuation_sweep(model, cfg.solve, cfg.eps_list, seed_points, w0.u,
                                          w0.energy.total, cfg.coupling, cfg.dealias,
                                          cfg.merge_radius, cfg.energy_window);
        bundle.has_sweep = true;

        json entries = json::array();
        std::vector<SolutionRecord> all;
        for (std::size_t ei = 0; ei < bundle.sweep.entries.size(); ++ei) {
            const auto& e = bundle.sweep.entries[ei];
            json recs = json::array();
            for (std::size_t si = 0; si < e.records.size(); ++si) {
                const std::string ff =
                    "sol_e" + std::to_string(ei) + "_s" + std::to_string(si) + ".field";
                save_field(dir + "/" + ff, e.records[si].u, "u", bundle.cfg_hash);
                recs.push_back(record_json(e.records[si], ff, bundle.cfg_hash));
                all.push_back(e.records[si]);
            }
            json diags = json::array();
            for (const auto& d : e.seed_diags)
                diags.push_back({{"y", point_json(d.y)},
                                 {"level_gap", d.level_gap},
                                 {"beta_error", d.beta_error}});
            entries.push_back({{"eps", e.eps},
                               {"m_hat", e.m_hat},
                               {"h_hat", e.h_hat},
                               {"cluster_count", e.cluster_count},
                               {"cluster_dists", e.cluster_dists},
                               {"seed_diags", diags},
                               {"records", recs}});
        }
        write_text_file(dir + "/sweep.json",
                        json{{"config", bundle.cfg_hash},
                             {"m_inf_V0", bundle.sweep.m_inf_V0},
                             {"entries", entries}}
                                .dump(2) +
                            "\n");
        emit_plot_data(bundle, PlotKind::energy_vs_eps, dir);
        emit_plot_data(bundle, PlotKind::barycenter_vs_eps, dir);
        write_seed_gaps_csv(bundle.sweep, dir, bundle.cfg_hash);
        emit_plot_data(bundle, PlotKind::potential_slice, dir);

        std::string msg;
        if (cmd == Command::multiplicity) {
            const auto& last = bundle.sweep.entries.back();
            const double mr = cfg.merge_radius > 0.0 ? cfg.merge_radius : pot.delta;
            const double win =
                cfg.energy_window > 0.0
                    ? cfg.energy_window
                    : std::max(2.0 * last.h_hat, 1e-8 * std::max(1.0, std::fabs(last.m_hat)));
            bundle.clusters = cluster_solutions(last.records, mr, win, pot);
            bundle.has_clusters = true;
            write_text_file(dir + "/clusters.json",
                            cluster_json(bundle.clusters, bundle.cfg_hash).dump(2) + "\n");
            msg = "multiplicity at eps=" + format_g17(last.eps) + ": " +
                  std::to_string(bundle.clusters.count_distinct) +
                  " distinct solutions (cat M = " + std::to_string(pot.cat_M) + ")";
        } else {
            msg = "swept " + std::to_string(cfg.eps_list.size()) + " eps values";
        }

        json summary{{"m_inf_V0", bundle.sweep.m_inf_V0}};
        if (bundle.has_clusters) summary["count_distinct"] = bundle.clusters.count_distinct;
        write_bundle_meta(bundle, dir, summary);
        return {exit_for_records(all, msg), msg};
    } catch (const ConfigError& e) {
        return {kExitConfig, e.what()};
    } catch (const std::invalid_argument& e) {
        return {kExitConfig, e.what()};
    } catch (const std::exception& e) {
        return {kExitError, e.what()};
    }
}

}  // namespace fsp
