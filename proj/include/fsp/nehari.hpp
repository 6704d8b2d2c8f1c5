// Ground-state solves by Nehari-constrained gradient descent.
//
// For the power nonlinearity the fiber map t -> I(tu) reduces to
//   psi(t) = t^2 a / 2 + t^4 b / 4 - t^{q+1} c / (q+1),
// with a = |u|_W^2, b = A(u), c = int u_+^{q+1}.  Its unique positive
// critical point t* solves a + t^2 b = t^{q-1} c and maximizes psi, so the
// Nehari projection is a scalar root solve.  Descent alternates a
// backtracked step along the (optionally preconditioned) negative gradient,
// an optional clamp to the positive part, and reprojection onto the
// constraint; accepted steps never increase the projected energy.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fsp/barycenter.hpp"
#include "fsp/functional.hpp"

namespace fsp {

struct NehariScalars {
    double a = 0.0;  // |u|_W^2 (or the limit norm), > 0 for u != 0
    double b = 0.0;  // A(u), >= 0 (0 when the coupling is off)
    double c = 0.0;  // int u_+^{q+1}, > 0 for projectable u
    double t_star = 0.0;
};

struct SolveConfig {
    double step0 = 1.0;        // initial step size
    int max_iters = 20000;
    double tol_g = 1e-6;       // stop when |g_tan|_2 / |u|_2 < tol_g
    double tol_N = 1e-10;      // fiber-root tolerance, relative to a
    double backtrack = 0.5;    // step shrink factor in (0,1)
    bool precondition = true;  // descend along (1 + (-Dl)^s)^{-1} g
    bool positivity = true;    // clamp to the positive part before reprojection
    std::uint64_t rng_seed = 12345;

    double armijo_c = 1e-4;
    double step_grow = 1.5;
    double step_max = 1e3;
    double step_min = 1e-14;

    bool operator==(const SolveConfig&) const = default;
};

struct SeedInfo {
    std::string kind;       // "gaussian", "bump", "warm", "random", "custom"
    Point y{0.0, 0.0};      // intended concentration point (physical coords)
    std::uint64_t rng_seed = 0;
};

struct SolutionRecord {
    Field u;
    EnergyBreakdown energy;
    double residual = 0.0;       // |g_tan|_2 / |u|_2 at the final iterate
    double defect = 0.0;         // Nehari defect at the final iterate
    Point bary{0.0, 0.0};
    SeedInfo seed;
    int iterations = 0;
    double eps = 0.0;            // 0 for limit-problem records
    bool converged = false;
    double boundary_mass = 0.0;  // outer-shell mass fraction of u^2
    bool escaped = false;        // barycenter left the seed's delta-ball
    std::vector<double> energy_history;  // accepted-step energies (not persisted)
};

// Unique positive root of a + t^2 b = t^{q-1} c (bracketing + safeguarded
// Newton).  Requires a > 0, b >= 0, c > 0 and q > 3.
double fiber_root(double a, double b, double c, double q, double tol_rel);

NehariScalars nehari_scalars(const Field& u, const Problem& prob);
NehariScalars nehari_scalars_limit(const Field& u, double mu,
                                   const std::vector<double>& pow_2s, const Nonlinearity& nonlin);

// Returns (t*, t* u); throws "nonpositive direction" when u_+ == 0.
std::pair<double, Field> nehari_project(const Field& u, const Problem& prob,
                                        double tol_N = 1e-10);
std::pair<double, Field> nehari_project_limit(const Field& u, double mu, double s,
                                              const Nonlinearity& nonlin, double tol_N = 1e-10);

// Cutoff bump centered at y/eps: w0 shifted by the nearest lattice offset and
// multiplied by the radial C^2 cutoff eta(|eps x - y|) (quintic smoothstep,
// identically 1 up to delta/2 and 0 from delta on).  w0 is a precomputed
// limit-problem ground state centered at the origin.
Field bump_seed(const Point& y, double eps, double delta, const Field& w0);

// Limit-problem ground state from a centered Gaussian start.
SolutionRecord ground_state_limit(double mu, double s, const GridSpec& grid,
                                  const Nonlinearity& nonlin, const SolveConfig& cfg);
// Same solver from a caller-provided seed (used for translated restarts).
SolutionRecord ground_state_limit_from(const Field& seed, double mu, double s,
                                       const Nonlinearity& nonlin, const SolveConfig& cfg,
                                       SeedInfo info);

SolutionRecord solve_full(const Field& seed, const Problem& prob, const SolveConfig& cfg,
                          SeedInfo info = {"custom", {0.0, 0.0}, 0});

// One record per seed, in seed order; throws on an empty seed list.
std::vector<SolutionRecord> multistart(const Problem& prob, const SolveConfig& cfg,
                                       const std::vector<Field>& seeds,
                                       const std::vector<SeedInfo>& infos = {});

struct SweepSeedDiag {
    Point y{0.0, 0.0};
    double level_gap = 0.0;   // I(projected seed) - limit level
    double beta_error = 0.0;  // |barycenter(seed) - y|
};

struct SweepEntry {
    double eps = 0.0;
    std::vector<SolutionRecord> records;
    double m_hat = 0.0;  // min converged energy at this eps
    double h_hat = 0.0;  // max seed level gap over the seeded wells
    std::vector<SweepSeedDiag> seed_diags;
    int cluster_count = 0;
    std::vector<double> cluster_dists;  // distance to the minimum set per cluster
};

struct SweepReport {
    std::vector<SweepEntry> entries;
    double m_inf_V0 = 0.0;  // limit ground-state level at mu = V0
};

// Descending-eps continuation: at each eps, fresh bump seeds at the given
// points plus warm starts re-centered from the previous eps's converged
// solutions.  merge_radius/energy_window < 0 pick the documented defaults
// (delta and 2*h_hat).
SweepReport continuation_sweep(const ModelParams& base, const SolveConfig& cfg,
                               const std::vector<double>& eps_list,
                               const std::vector<Point>& seed_points, const Field& w0,
                               double m_inf_V0, bool coupling_on = true, bool dealias = false,
                               double merge_radius = -1.0, double energy_window = -1.0);

}  // namespace fsp
