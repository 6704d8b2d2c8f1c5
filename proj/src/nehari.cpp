#include "fsp/nehari.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "fsp/analysis.hpp"

namespace fsp {

double fiber_root(double a, double b, double c, double q, double tol_rel) {
    if (!(c > 0.0))
        throw std::invalid_argument("fiber_root: nonpositive direction (u_+ vanishes)");
    if (!(a > 0.0)) throw std::invalid_argument("fiber_root: vanishing norm");
    if (b < 0.0) b = 0.0;  // A(u) is nonnegative up to roundoff

    // h(t) = c t^{q-1} - b t^2 - a: negative at 0, decreasing-then-increasing,
    // hence a single sign change; q+1 > 4 guarantees the eventual growth.
    auto h = [&](double t) { return c * std::pow(t, q - 1.0) - b * t * t - a; };

    double lo = 1.0, hi = 1.0;
    if (h(1.0) < 0.0) {
        while (h(hi) < 0.0) {
            hi *= 2.0;
            if (hi > 1e100) throw std::runtime_error("fiber_root: bracketing failed (upward)");
        }
        lo = hi * 0.5;
    } else {
        while (h(lo) > 0.0) {
            lo *= 0.5;
            if (lo < 1e-100) throw std::runtime_error("fiber_root: bracketing failed (downward)");
        }
        hi = lo < 1.0 ? lo * 2.0 : 1.0;
    }

    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double ht = h(t);
        // |J(t u)| = t^2 |h(t)|, measured against the norm term.
        if (t * t * std::fabs(ht) < tol_rel * a) return t;
        if (ht > 0.0)
            hi = t;
        else
            lo = t;
        const double dh = (q - 1.0) * c * std::pow(t, q - 2.0) - 2.0 * b * t;
        double tn = dh != 0.0 ? t - ht / dh : 0.5 * (lo + hi);
        if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
        if (std::fabs(tn - t) < 1e-17 * t) return tn;
        t = tn;
    }
    return t;
}

namespace {

// Split fiber scalars: a = a_kin + a_pot so the energy breakdown of the
// projected point is available in closed form.
struct FiberScalars {
    double a_kin = 0.0;
    double a_pot = 0.0;
    double b = 0.0;
    double c = 0.0;
    double a() const { return a_kin + a_pot; }
};

double fiber_energy(const FiberScalars& s, double t, double q) {
    return 0.5 * t * t * s.a() + 0.25 * std::pow(t, 4.0) * s.b -
           std::pow(t, q + 1.0) * s.c / (q + 1.0);
}

struct Objective {
    std::function<FiberScalars(const Field&)> scalars;
    std::function<Field(const Field&)> gradient;
    const std::vector<double>* precond_table = nullptr;  // |k|^{2s}
    double q = 0.0;
};

struct DescentResult {
    Field u;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
    std::vector<double> energy_history;
    FiberScalars final_scalars;
};

// Component of g orthogonal (in L2) to the fiber direction u; reprojection
// moves along the fiber, so this is the part a step can actually reduce.
Field tangential(const Field& g, const Field& u, double gu, double uu) {
    Field t = g;
    add_scaled(t, -gu / uu, u);
    return t;
}

// With the positivity clamp on, points pinned at zero with an outward-pushing
// gradient are stationary; drop them so the residual measures true
// non-stationarity (the KKT-projected gradient of the bound constraint).
Field clamp_aware(Field g, const Field& u, bool positivity) {
    if (positivity) {
        for (std::size_t i = 0; i < g.size(); ++i)
            if (u[i] == 0.0 && g[i] > 0.0) g[i] = 0.0;
    }
    return g;
}

DescentResult descend(const Field& seed, const Objective& obj, const SolveConfig& cfg) {
    Field start = cfg.positivity ? positive_part(seed) : seed;
    FiberScalars sc = obj.scalars(start);
    if (!(sc.c > 0.0))
        throw std::invalid_argument("descend: nonpositive direction (seed has no positive part)");
    double t = fiber_root(sc.a(), sc.b, sc.c, obj.q, cfg.tol_N);
    Field u = scaled(start, t);
    double energy = fiber_energy(sc, t, obj.q);

    DescentResult out;
    out.energy_history.push_back(energy);

    double eta = cfg.step0;
    double res = std::numeric_limits<double>::infinity();
    int iter = 0;
    for (iter = 0; iter < cfg.max_iters; ++iter) {
        Field g = clamp_aware(obj.gradient(u), u, cfg.positivity);
        const double uu = inner_product(u, u);
        const double gu = inner_product(g, u);
        Field gtan = tangential(g, u, gu, uu);
        res = l2_norm(gtan) / std::sqrt(uu);
        if (res < cfg.tol_g) {
            out.converged = true;
            break;
        }

        Field dir;
        double decrement;
        if (cfg.precondition && obj.precond_table != nullptr) {
            dir = invert_one_plus(g, *obj.precond_table);
            const double du = inner_product(dir, u);
            add_scaled(dir, -du / uu, u);
            decrement = inner_product(g, dir);
            if (!(decrement > 0.0)) {  // fall back to the plain tangential direction
                dir = gtan;
                decrement = inner_product(g, gtan);
            }
        } else {
            dir = gtan;
            decrement = inner_product(g, gtan);
        }
        if (!(decrement > 0.0)) break;

        bool accepted = false;
        while (eta >= cfg.step_min) {
            Field v = u;
            add_scaled(v, -eta, dir);
            if (cfg.positivity) v = positive_part(v);
            FiberScalars scv = obj.scalars(v);
            if (scv.c > 0.0 && scv.a() > 0.0) {
                const double tv = fiber_root(scv.a(), scv.b, scv.c, obj.q, cfg.tol_N);
                const double ev = fiber_energy(scv, tv, obj.q);
                if (ev <= energy - cfg.armijo_c * eta * decrement) {
                    u = scaled(v, tv);
                    sc = scv;
                    energy = ev;
                    out.energy_history.push_back(energy);
                    eta = std::min(eta * cfg.step_grow, cfg.step_max);
                    accepted = true;
                    break;
                }
            }
            eta *= cfg.backtrack;
        }
        if (!accepted) break;  // line search exhausted; the residual test decides the flag
    }

    // Fresh residual and scalars at the final iterate.
    {
        Field g = clamp_aware(obj.gradient(u), u, cfg.positivity);
        const double uu = inner_product(u, u);
        const double gu = inner_product(g, u);
        res = l2_norm(tangential(g, u, gu, uu)) / std::sqrt(uu);
    }
    out.final_scalars = obj.scalars(u);
    out.u = std::move(u);
    out.iterations = iter;
    out.residual = res;
    out.converged = res < cfg.tol_g;
    return out;
}

Objective full_objective(const Problem& prob) {
    Objective obj;
    obj.q = prob.mp.nonlin.q;
    obj.precond_table = &prob.spectrum.pow_2s;
    obj.scalars = [&prob](const Field& u) {
        FiberScalars s;
        s.a_kin = half_laplacian_norm_sq(u, prob.spectrum.pow_2s);
        s.a_pot = weighted_l2_sq(u, prob.v_eps);
        s.b = prob.coupling_on ? coupling_A(u, prob.kernel, prob.mp.frac) : 0.0;
        s.c = integral_fu(u, prob.mp.nonlin);
        return s;
    };
    obj.gradient = [&prob](const Field& u) { return gradient_full(u, prob).g; };
    return obj;
}

Field gaussian_seed(const GridSpec& grid) {
    Field u(grid);
    if (grid.dim == 1) {
        for (int i = 0; i < grid.n; ++i) {
            const double x = grid.coord(i);
            u[static_cast<std::size_t>(i)] = std::exp(-0.5 * x * x);
        }
    } else {
        for (int i0 = 0; i0 < grid.n; ++i0)
            for (int i1 = 0; i1 < grid.n; ++i1) {
                const double x = grid.coord(i0), y = grid.coord(i1);
                u[grid.index(i0, i1)] = std::exp(-0.5 * (x * x + y * y));
            }
    }
    return u;
}

}  // namespace

NehariScalars nehari_scalars(const Field& u, const Problem& prob) {
    NehariScalars s;
    s.a = half_laplacian_norm_sq(u, prob.spectrum.pow_2s) + weighted_l2_sq(u, prob.v_eps);
    s.b = prob.coupling_on ? coupling_A(u, prob.kernel, prob.mp.frac) : 0.0;
    s.c = integral_fu(u, prob.mp.nonlin);
    if (s.c > 0.0 && s.a > 0.0) s.t_star = fiber_root(s.a, s.b, s.c, prob.mp.nonlin.q, 1e-10);
    return s;
}

NehariScalars nehari_scalars_limit(const Field& u, double mu,
                                   const std::vector<double>& pow_2s,
                                   const Nonlinearity& nonlin) {
    NehariScalars s;
    s.a = half_laplacian_norm_sq(u, pow_2s) + mu * inner_product(u, u);
    s.b = 0.0;
    s.c = integral_fu(u, nonlin);
    if (s.c > 0.0 && s.a > 0.0) s.t_star = fiber_root(s.a, s.b, s.c, nonlin.q, 1e-10);
    return s;
}

std::pair<double, Field> nehari_project(const Field& u, const Problem& prob, double tol_N) {
    NehariScalars s = nehari_scalars(u, prob);
    if (!(s.c > 0.0))
        throw std::invalid_argument("nehari_project: nonpositive direction");
    const double t = fiber_root(s.a, s.b, s.c, prob.mp.nonlin.q, tol_N);
    return {t, scaled(u, t)};
}

std::pair<double, Field> nehari_project_limit(const Field& u, double mu, double s,
                                              const Nonlinearity& nonlin, double tol_N) {
    const std::vector<double> table = multiplier_table(u.grid, 2.0 * s);
    NehariScalars sc = nehari_scalars_limit(u, mu, table, nonlin);
    if (!(sc.c > 0.0))
        throw std::invalid_argument("nehari_project: nonpositive direction");
    const double t = fiber_root(sc.a, sc.b, sc.c, nonlin.q, tol_N);
    return {t, scaled(u, t)};
}

namespace {

// Quintic smoothstep cutoff: 1 on [0, delta/2], 0 on [delta, inf), C^2 between.
double cutoff_eta(double r, double delta) {
    if (r <= 0.5 * delta) return 1.0;
    if (r >= delta) return 0.0;
    const double x = (r - 0.5 * delta) / (0.5 * delta);
    return 1.0 - x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

}  // namespace

Field bump_seed(const Point& y, double eps, double delta, const Field& w0) {
    const GridSpec& g = w0.grid;
    if (!(eps > 0.0)) throw std::invalid_argument("bump_seed: eps must be > 0");
    if (!(delta > 0.0)) throw std::invalid_argument("bump_seed: delta must be > 0");
    for (int d = 0; d < g.dim; ++d) {
        if (std::fabs(y[static_cast<std::size_t>(d)]) / eps > g.L - g.h)
            throw std::invalid_argument("bump_seed: y/eps falls outside the box; enlarge L");
    }
    // Shift w0 to the lattice point nearest y/eps, then apply the cutoff.
    std::array<int, 2> cells{0, 0};
    for (int d = 0; d < g.dim; ++d)
        cells[static_cast<std::size_t>(d)] =
            static_cast<int>(std::lround(y[static_cast<std::size_t>(d)] / (eps * g.h)));
    Field u = shift_periodic(w0, cells);
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) {
            const double r = std::fabs(eps * g.coord(i) - y[0]);
            u[static_cast<std::size_t>(i)] *= cutoff_eta(r, delta);
        }
    } else {
        for (int i0 = 0; i0 < g.n; ++i0)
            for (int i1 = 0; i1 < g.n; ++i1) {
                const double rx = eps * g.coord(i0) - y[0];
                const double ry = eps * g.coord(i1) - y[1];
                u[g.index(i0, i1)] *= cutoff_eta(std::hypot(rx, ry), delta);
            }
    }
    return u;
}

SolutionRecord ground_state_limit_from(const Field& seed, double mu, double s,
                                       const Nonlinearity& nonlin, const SolveConfig& cfg,
                                       SeedInfo info) {
    if (!(mu > 0.0)) throw std::invalid_argument("ground_state_limit: mu must be > 0");
    const std::vector<double> table = multiplier_table(seed.grid, 2.0 * s);
    Objective obj;
    obj.q = nonlin.q;
    obj.precond_table = &table;
    obj.scalars = [&](const Field& u) {
        FiberScalars sc;
        sc.a_kin = half_laplacian_norm_sq(u, table);
        sc.a_pot = mu * inner_product(u, u);
        sc.b = 0.0;
        sc.c = integral_fu(u, nonlin);
        return sc;
    };
    obj.gradient = [&](const Field& u) { return gradient_limit(u, mu, table, nonlin).g; };

    DescentResult r = descend(seed, obj, cfg);
    SolutionRecord rec;
    rec.energy = energy_limit(r.u, mu, table, nonlin);
    rec.residual = r.residual;
    rec.defect = r.final_scalars.a() + r.final_scalars.b - r.final_scalars.c;
    TruncationSpec trunc{seed.grid.L, 1.0};
    rec.bary = barycenter(r.u, 1.0, trunc);
    rec.seed = std::move(info);
    rec.iterations = r.iterations;
    rec.eps = 0.0;
    rec.converged = r.converged;
    rec.boundary_mass = boundary_mass_fraction(r.u);
    rec.energy_history = std::move(r.energy_history);
    rec.u = std::move(r.u);
    return rec;
}

SolutionRecord ground_state_limit(double mu, double s, const GridSpec& grid,
                                  const Nonlinearity& nonlin, const SolveConfig& cfg) {
    return ground_state_limit_from(gaussian_seed(grid), mu, s, nonlin, cfg,
                                   SeedInfo{"gaussian", Point{0.0, 0.0}, cfg.rng_seed});
}

SolutionRecord solve_full(const Field& seed, const Problem& prob, const SolveConfig& cfg,
                          SeedInfo info) {
    require_same_grid(seed, prob.v_eps, "solve_full");
    if (!all_finite(seed)) throw std::invalid_argument("solve_full: seed not finite");
    Objective obj = full_objective(prob);
    DescentResult r = descend(seed, obj, cfg);

    SolutionRecord rec;
    rec.energy = energy_full(r.u, prob);
    rec.residual = r.residual;
    rec.defect = r.final_scalars.a() + r.final_scalars.b - r.final_scalars.c;
    const TruncationSpec trunc = TruncationSpec::for_potential(prob.mp.potential);
    rec.bary = barycenter(r.u, prob.mp.frac.eps, trunc);
    rec.iterations = r.iterations;
    rec.eps = prob.mp.frac.eps;
    rec.converged = r.converged;
    rec.boundary_mass = boundary_mass_fraction(r.u);
    if (info.kind == "bump" || info.kind == "warm")
        rec.escaped = point_dist(rec.bary, info.y) > prob.mp.potential.delta;
    rec.seed = std::move(info);
    rec.energy_history = std::move(r.energy_history);
    rec.u = std::move(r.u);
    return rec;
}

std::vector<SolutionRecord> multistart(const Problem& prob, const SolveConfig& cfg,
                                       const std::vector<Field>& seeds,
                                       const std::vector<SeedInfo>& infos) {
    if (seeds.empty()) throw std::invalid_argument("multistart: empty seed list");
    std::vector<SolutionRecord> records;
    records.reserve(seeds.size());
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        SeedInfo info = i < infos.size() ? infos[i] : SeedInfo{"custom", Point{0.0, 0.0}, cfg.rng_seed};
        records.push_back(solve_full(seeds[i], prob, cfg, std::move(info)));
    }
    return records;
}

SweepReport continuation_sweep(const ModelParams& base, const SolveConfig& cfg,
                               const std::vector<double>& eps_list,
                               const std::vector<Point>& seed_points, const Field& w0,
                               double m_inf_V0, bool coupling_on, bool dealias,
                               double merge_radius, double energy_window) {
    if (eps_list.empty()) throw std::invalid_argument("continuation_sweep: empty eps list");
    for (double e : eps_list)
        if (!(e > 0.0)) throw std::invalid_argument("continuation_sweep: eps values must be > 0");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("continuation_sweep: eps list must be strictly decreasing");
    if (seed_points.empty()) throw std::invalid_argument("continuation_sweep: no seed points");

    SweepReport report;
    report.m_inf_V0 = m_inf_V0;
    const double delta = base.potential.delta;
    Problem prob = Problem::make(base.with_eps(eps_list.front()), coupling_on, dealias);

    std::vector<SolutionRecord> prev;
    double prev_eps = 0.0;
    for (double eps : eps_list) {
        prob = prob.with_eps(eps);
        std::vector<Field> seeds;
        std::vector<SeedInfo> infos;
        for (const Point& y : seed_points) {
            seeds.push_back(bump_seed(y, eps, delta, w0));
            infos.push_back(SeedInfo{"bump", y, cfg.rng_seed});
        }
        for (const SolutionRecord& r : prev) {
            if (!r.converged) continue;
            // Concentration at beta/eps in lattice coordinates: re-center the
            // previous solution from beta/prev_eps to beta/eps.
            std::array<int, 2> cells{0, 0};
            for (int d = 0; d < base.grid.dim; ++d) {
                const double move = r.bary[static_cast<std::size_t>(d)] / eps -
                                    r.bary[static_cast<std::size_t>(d)] / prev_eps;
                cells[static_cast<std::size_t>(d)] = static_cast<int>(std::lround(move / base.grid.h));
            }
            seeds.push_back(shift_periodic(r.u, cells));
            infos.push_back(SeedInfo{"warm", r.seed.y, cfg.rng_seed});
        }

        SweepEntry entry;
        entry.eps = eps;
        entry.records = multistart(prob, cfg, seeds, infos);

        entry.m_hat = std::numeric_limits<double>::quiet_NaN();
        for (const SolutionRecord& r : entry.records)
            if (r.converged && (std::isnan(entry.m_hat) || r.energy.total < entry.m_hat))
                entry.m_hat = r.energy.total;

        const TruncationSpec trunc = TruncationSpec::for_potential(base.potential);
        for (const Point& y : seed_points) {
            SweepSeedDiag d;
            d.y = y;
            d.level_gap = seed_level_gap(y, eps, prob, w0);
            d.beta_error = beta_of_seed_error(y, eps, prob, w0, trunc);
            entry.seed_diags.push_back(d);
            entry.h_hat = std::max(entry.h_hat, d.level_gap);
        }

        const double mr = merge_radius > 0.0 ? merge_radius : delta;
        const double win = energy_window > 0.0
                               ? energy_window
                               : std::max(2.0 * entry.h_hat, 1e-8 * std::max(1.0, std::fabs(entry.m_hat)));
        ClusterReport clusters = cluster_solutions(entry.records, mr, win, base.potential);
        entry.cluster_count = clusters.count_distinct;
        for (const Cluster& c : clusters.clusters) entry.cluster_dists.push_back(c.dist_M);

        prev = entry.records;
        prev_eps = eps;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

}  // namespace fsp
