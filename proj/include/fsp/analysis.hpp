// Solution-set analysis: barycenter clustering against the declared minimum
// set, and the seeded-well diagnostics used by the continuation experiments.

#pragma once

#include <vector>

#include "fsp/barycenter.hpp"
#include "fsp/nehari.hpp"

namespace fsp {

struct Cluster {
    int representative = -1;        // lowest-energy member (ties by index)
    std::vector<int> members;       // record indices, ascending
    Point centroid{0.0, 0.0};       // mean barycenter
    double energy_min = 0.0;
    double energy_max = 0.0;
    double dist_M = 0.0;            // distance of the centroid to the minimum set
};

struct ClusterReport {
    std::vector<Cluster> clusters;  // ordered by energy_min, ties by representative
    std::vector<int> outliers;      // converged records above the energy window
    std::vector<int> unconverged;   // records excluded for lack of convergence
    int count_distinct = 0;
    int cat_M = 0;                  // declared category of the minimum set
    double merge_radius = 0.0;
    double energy_window = 0.0;
};

// Single-linkage clustering of the barycenters of converged records whose
// energy lies within energy_window above the minimum converged energy.
// Permutation-invariant as a partition; representatives are canonical.
ClusterReport cluster_solutions(const std::vector<SolutionRecord>& records, double merge_radius,
                                double energy_window, const Potential& potential);

// I(projection of the cutoff bump at y) minus the limit ground-state level
// E_{V0}(w0); the per-well contribution to the sublevel width h(eps).
double seed_level_gap(const Point& y, double eps, const Problem& prob, const Field& w0);

// |barycenter(bump at y) - y|.
double beta_of_seed_error(const Point& y, double eps, const Problem& prob, const Field& w0,
                          const TruncationSpec& trunc);

}  // namespace fsp
