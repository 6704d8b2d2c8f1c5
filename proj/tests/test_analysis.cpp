#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "fsp/analysis.hpp"

using namespace fsp;

namespace {

GridSpec test_grid() { return make_grid(1, 256, 16.0); }

Field gaussian_bump(const GridSpec& g, double x0 = 0.0, double sigma = 1.0) {
    Field u(g);
    for (int i = 0; i < g.n; ++i) {
        const double x = g.coord(i) - x0;
        u[static_cast<std::size_t>(i)] = std::exp(-x * x / (2.0 * sigma * sigma));
    }
    return u;
}

SolutionRecord fake_record(const GridSpec& g, Point bary, double energy, bool converged = true) {
    SolutionRecord r;
    r.u = Field(g);
    r.bary = bary;
    r.energy.total = energy;
    r.converged = converged;
    return r;
}

}  // namespace

TEST_CASE("chi clamps radially") {
    const double rho = 2.0;
    CHECK(chi(Point{1.0, 0.5}, rho) == Point{1.0, 0.5});
    CHECK(chi(Point{4.0, 0.0}, rho) == Point{2.0, 0.0});
    const Point p = chi(Point{3.0, 4.0}, rho);
    CHECK(point_norm(p) == doctest::Approx(rho).epsilon(1e-14));
    for (double x : {0.1, 1.9, 2.0, 5.0, 100.0}) {
        CHECK(point_norm(chi(Point{x, -0.3 * x}, rho)) <= rho * (1.0 + 1e-14));
    }
    CHECK_THROWS_AS(chi(Point{1.0, 0.0}, 0.0), std::invalid_argument);
}

TEST_CASE("truncation defaults contain the 2-delta neighborhood") {
    Potential dw = Potential::multi_well({{-1.0, 0.0}, {1.0, 0.0}}, 1.0, 3.0, 0.4);
    TruncationSpec t = TruncationSpec::for_potential(dw);
    CHECK(t.delta == doctest::Approx(1.0));
    for (const Point& y : dw.minima) CHECK(point_norm(y) + 2.0 * t.delta <= t.rho + 1e-14);

    Potential ring = Potential::ring(1.5, 1.0, 3.0, 0.3);
    TruncationSpec tr = TruncationSpec::for_potential(ring);
    CHECK(tr.rho == doctest::Approx(1.5 + 2.0 * 0.3 + 1.0));
}

TEST_CASE("barycenter: symmetry, location, scale invariance") {
    GridSpec g = test_grid();
    TruncationSpec trunc{4.0, 1.0};

    // Even bump at the origin.
    Field centered = gaussian_bump(g, 0.0, 1.2);
    Point b0 = barycenter(centered, 0.5, trunc);
    CHECK(std::fabs(b0[0]) < 1e-10);

    // Bump at lattice x = 4 with eps = 0.25 sits at y = 1.
    Field off = gaussian_bump(g, 4.0, 0.8);
    Point b1 = barycenter(off, 0.25, trunc);
    CHECK(b1[0] == doctest::Approx(1.0).epsilon(1e-3));

    // Scaling u leaves the barycenter unchanged (1e-12; exact for powers of 2).
    Point b2 = barycenter(scaled(off, 3.0), 0.25, trunc);
    CHECK(std::fabs(b2[0] - b1[0]) <= 1e-12 * std::fabs(b1[0]));
    Point b3 = barycenter(scaled(off, 2.0), 0.25, trunc);
    CHECK(b3[0] == b1[0]);

    // |barycenter| <= rho however the field sloshes.
    Field edge = gaussian_bump(g, 14.0, 2.0);
    Point b4 = barycenter(edge, 1.0, trunc);
    CHECK(point_norm(b4) <= trunc.rho * (1.0 + 1e-14));

    Field zero(g);
    CHECK_THROWS_AS(barycenter(zero, 0.5, trunc), std::invalid_argument);
}

TEST_CASE("distance to the minimum set") {
    Potential dw = Potential::multi_well({{-1.0, 0.0}, {1.0, 0.0}}, 1.0, 3.0, 0.4);
    CHECK(dist_to_M(Point{1.0, 0.0}, dw) == 0.0);
    CHECK(dist_to_M(Point{0.0, 0.0}, dw) == doctest::Approx(1.0));
    CHECK(dist_to_M(Point{-3.0, 0.0}, dw) == doctest::Approx(2.0));

    Potential ring = Potential::ring(2.0, 1.0, 3.0, 0.3);
    CHECK(dist_to_M(Point{1.0, 0.0}, ring) == doctest::Approx(1.0));
    CHECK(dist_to_M(Point{0.0, 3.0}, ring) == doctest::Approx(1.0));
    CHECK(dist_to_M(Point{2.0 / std::sqrt(2.0), 2.0 / std::sqrt(2.0)}, ring) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("clustering: merge, windows, outliers, determinism") {
    GridSpec g = test_grid();
    Potential dw = Potential::multi_well({{-1.0, 0.0}, {1.0, 0.0}}, 1.0, 3.0, 0.4);

    // All records at the same spot collapse to one cluster.
    {
        std::vector<SolutionRecord> recs = {fake_record(g, {1.0, 0.0}, 0.5),
                                            fake_record(g, {1.001, 0.0}, 0.5),
                                            fake_record(g, {0.999, 0.0}, 0.5)};
        ClusterReport rep = cluster_solutions(recs, 1.0, 0.1, dw);
        CHECK(rep.count_distinct == 1);
        CHECK(rep.clusters[0].members.size() == 3);
    }
    // Two wells, separation 2 > merge radius 1: two clusters.
    {
        std::vector<SolutionRecord> recs = {fake_record(g, {-1.0, 0.0}, 0.5),
                                            fake_record(g, {1.0, 0.0}, 0.5)};
        ClusterReport rep = cluster_solutions(recs, 1.0, 0.1, dw);
        CHECK(rep.count_distinct == 2);
        CHECK(rep.cat_M == 2);
        CHECK(rep.clusters[0].dist_M < 1e-12);
    }
    // Energy window: a high-energy record is listed separately.
    {
        std::vector<SolutionRecord> recs = {fake_record(g, {-1.0, 0.0}, 0.5),
                                            fake_record(g, {1.0, 0.0}, 0.9)};
        ClusterReport rep = cluster_solutions(recs, 1.0, 0.1, dw);
        CHECK(rep.count_distinct == 1);
        REQUIRE(rep.outliers.size() == 1);
        CHECK(rep.outliers[0] == 1);
    }
    // Unconverged records are excluded and listed.
    {
        std::vector<SolutionRecord> recs = {fake_record(g, {-1.0, 0.0}, 0.5),
                                            fake_record(g, {1.0, 0.0}, 0.5, false)};
        ClusterReport rep = cluster_solutions(recs, 1.0, 0.1, dw);
        CHECK(rep.count_distinct == 1);
        REQUIRE(rep.unconverged.size() == 1);
        CHECK(rep.unconverged[0] == 1);
    }
    // Permuting the records permutes indices but not the partition.
    {
        std::vector<SolutionRecord> recs = {fake_record(g, {-1.0, 0.0}, 0.50),
                                            fake_record(g, {1.0, 0.0}, 0.51),
                                            fake_record(g, {-1.05, 0.0}, 0.52),
                                            fake_record(g, {1.05, 0.0}, 0.53)};
        ClusterReport rep1 = cluster_solutions(recs, 1.0, 0.5, dw);
        std::reverse(recs.begin(), recs.end());
        ClusterReport rep2 = cluster_solutions(recs, 1.0, 0.5, dw);
        CHECK(rep1.count_distinct == rep2.count_distinct);
        // Compare the partitions as sets of barycenter sign groups.
        auto signature = [&](const ClusterReport& r) {
            std::vector<std::size_t> sizes;
            for (const auto& c : r.clusters) sizes.push_back(c.members.size());
            std::sort(sizes.begin(), sizes.end());
            return sizes;
        };
        CHECK(signature(rep1) == signature(rep2));
    }
    CHECK_THROWS_AS(cluster_solutions({}, 0.0, 0.1, dw), std::invalid_argument);
}

TEST_CASE("seed-level gap and seed barycenter error behave across eps") {
    GridSpec g = make_grid(1, 512, 16.0);
    Nonlinearity nl(3.5);
    SolveConfig cfg;
    cfg.tol_g = 1e-6;
    Potential dw = Potential::multi_well({{-1.0, 0.0}, {1.0, 0.0}}, 1.0, 3.0, 0.4);
    ModelParams mp = ModelParams::make(FracParams::make(1, 0.4, 0.8, 0.3, 0.5), dw, nl, g);

    SolutionRecord w0 = ground_state_limit(1.0, 0.4, g, nl, cfg);
    REQUIRE(w0.converged);
    TruncationSpec trunc = TruncationSpec::for_potential(dw);

    double prev_gap = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double eps = 0.5 / (1 << k);
        Problem prob = Problem::make(mp.with_eps(eps));
        const double gap = seed_level_gap(Point{-1.0, 0.0}, eps, prob, w0.u);
        CHECK(gap >= -1e-6);
        if (k > 0) CHECK(gap < prev_gap);
        prev_gap = gap;
    }

    // Off-lattice well: the seed barycenter error is the lattice-rounding
    // term, which shrinks (up to 10% slack) as eps does.
    double prev_err = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double eps = 0.5 / (1 << k);
        Problem prob = Problem::make(mp.with_eps(eps));
        const double err = beta_of_seed_error(Point{0.9, 0.0}, eps, prob, w0.u, trunc);
        CHECK(err < dw.delta / 2.0);
        if (k > 0) CHECK(err <= prev_err * 1.1);
        prev_err = err;
    }

    // Symmetric single well at the origin: the seed error is pure quadrature.
    Potential sw = Potential::multi_well({{0.0, 0.0}}, 1.0, 3.0, 0.4);
    ModelParams mp_sw = ModelParams::make(FracParams::make(1, 0.4, 0.8, 0.3, 0.5), sw, nl, g);
    TruncationSpec tr_sw = TruncationSpec::for_potential(sw);
    for (double eps : {0.5, 0.25, 0.125}) {
        Problem p = Problem::make(mp_sw.with_eps(eps));
        CHECK(beta_of_seed_error(Point{0.0, 0.0}, eps, p, w0.u, tr_sw) < 2.0 * g.h * eps);
    }

    // Control: constant potential, coupling off; the gap is pure cutoff error
    // and decays like eps^2 (heavy tails push the 1e-4 level down to
    // eps ~ 0.03 on a wide box: measured 2.8e-3 / 6.9e-4 / 1.9e-4 / 3.7e-5
    // at eps = 0.25 / 0.125 / 0.0625 / 0.03125 with L = 32).
    GridSpec gw = make_grid(1, 1024, 32.0);
    SolutionRecord w0w = ground_state_limit(1.0, 0.4, gw, nl, cfg);
    REQUIRE(w0w.converged);
    ModelParams ctrl = ModelParams::make(FracParams::make(1, 0.4, 0.8, 0.3, 0.25),
                                         Potential::constant(1.0), nl, gw);
    double prev_ctrl = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double eps = 0.25 / (1 << k);
        Problem ctrl_prob = Problem::make(ctrl.with_eps(eps), /*coupling_on=*/false);
        const double gap = seed_level_gap(Point{0.0, 0.0}, eps, ctrl_prob, w0w.u);
        CHECK(gap >= -1e-9);
        if (k > 0) CHECK(gap < prev_ctrl);
        if (k == 3) CHECK(gap < 1e-4);  // eps = 0.03125: cutoff error only
        prev_ctrl = gap;
    }
}
