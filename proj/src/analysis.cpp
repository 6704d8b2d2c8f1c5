#include "fsp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fsp {

ClusterReport cluster_solutions(const std::vector<SolutionRecord>& records, double merge_radius,
                                double energy_window, const Potential& potential) {
    if (!(merge_radius > 0.0))
        throw std::invalid_argument("cluster_solutions: merge_radius must be > 0");
    ClusterReport report;
    report.merge_radius = merge_radius;
    report.energy_window = energy_window;
    report.cat_M = potential.cat_M;

    double e_min = std::numeric_limits<double>::infinity();
    for (const auto& r : records)
        if (r.converged) e_min = std::min(e_min, r.energy.total);

    std::vector<int> eligible;
    for (int i = 0; i < static_cast<int>(records.size()); ++i) {
        if (!records[static_cast<std::size_t>(i)].converged) {
            report.unconverged.push_back(i);
        } else if (records[static_cast<std::size_t>(i)].energy.total > e_min + energy_window) {
            report.outliers.push_back(i);
        } else {
            eligible.push_back(i);
        }
    }

    // Union-find single linkage on barycenter distance.
    std::vector<int> parent(eligible.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int i) {
        while (parent[static_cast<std::size_t>(i)] != i) {
            parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
            i = parent[static_cast<std::size_t>(i)];
        }
        return i;
    };
    for (std::size_t i = 0; i < eligible.size(); ++i)
        for (std::size_t j = i + 1; j < eligible.size(); ++j) {
            const auto& a = records[static_cast<std::size_t>(eligible[i])];
            const auto& b = records[static_cast<std::size_t>(eligible[j])];
            if (point_dist(a.bary, b.bary) <= merge_radius) {
                int ri = find(static_cast<int>(i)), rj = find(static_cast<int>(j));
                if (ri != rj) parent[static_cast<std::size_t>(std::max(ri, rj))] = std::min(ri, rj);
            }
        }

    std::vector<std::vector<int>> groups(eligible.size());
    for (std::size_t i = 0; i < eligible.size(); ++i)
        groups[static_cast<std::size_t>(find(static_cast<int>(i)))].push_back(eligible[i]);

    for (const auto& members : groups) {
        if (members.empty()) continue;
        Cluster c;
        c.members = members;
        c.energy_min = std::numeric_limits<double>::infinity();
        c.energy_max = -std::numeric_limits<double>::infinity();
        Point centroid{0.0, 0.0};
        for (int idx : members) {
            const auto& r = records[static_cast<std::size_t>(idx)];
            centroid[0] += r.bary[0];
            centroid[1] += r.bary[1];
            if (r.energy.total < c.energy_min) {
                c.energy_min = r.energy.total;
                c.representative = idx;  // members ascend, so ties keep the lowest index
            }
            c.energy_max = std::max(c.energy_max, r.energy.total);
        }
        centroid[0] /= static_cast<double>(members.size());
        centroid[1] /= static_cast<double>(members.size());
        c.centroid = centroid;
        c.dist_M = dist_to_M(centroid, potential);
        report.clusters.push_back(std::move(c));
    }
    std::sort(report.clusters.begin(), report.clusters.end(), [](const Cluster& a, const Cluster& b) {
        return a.energy_min != b.energy_min ? a.energy_min < b.energy_min
                                            : a.representative < b.representative;
    });
    report.count_distinct = static_cast<int>(report.clusters.size());
    return report;
}

double seed_level_gap(const Point& y, double eps, const Problem& prob, const Field& w0) {
    Field seed = bump_seed(y, eps, prob.mp.potential.delta, w0);
    const Field projected = nehari_project(seed, prob).second;
    const double level = energy_full(projected, prob).total;
    const double m_inf = energy_limit(w0, prob.mp.potential.V0, prob.spectrum.pow_2s,
                                      prob.mp.nonlin).total;
    return level - m_inf;
}

double beta_of_seed_error(const Point& y, double eps, const Problem& prob, const Field& w0,
                          const TruncationSpec& trunc) {
    Field seed = bump_seed(y, eps, prob.mp.potential.delta, w0);
    return point_dist(barycenter(seed, eps, trunc), y);
}

}  // namespace fsp
