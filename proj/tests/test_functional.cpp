#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fsp/functional.hpp"

using namespace fsp;

namespace {

Problem make_problem_1d(double eps = 0.25, bool coupling = true) {
    GridSpec g = make_grid(1, 128, 12.0);
    ModelParams mp = ModelParams::make(
        FracParams::make(1, 0.4, 0.8, 0.3, eps),
        Potential::multi_well({{-1.0, 0.0}, {1.0, 0.0}}, 1.0, 3.0, 0.4), Nonlinearity(3.5), g);
    return Problem::make(mp, coupling);
}

Field gaussian_bump(const GridSpec& g, double x0 = 0.0, double sigma = 1.0, double amp = 1.0) {
    Field u(g);
    for (int i = 0; i < g.n; ++i) {
        const double x = g.coord(i) - x0;
        u[static_cast<std::size_t>(i)] = amp * std::exp(-x * x / (2.0 * sigma * sigma));
    }
    return u;
}

Field random_band_limited(const GridSpec& g, unsigned seed, int max_mode = 10) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Field u(g);
    const double k0 = 3.14159265358979323846 / g.L;
    for (int m = 0; m <= max_mode; ++m) {
        const double a = gauss(rng) / (1.0 + m * m), b = gauss(rng) / (1.0 + m * m);
        for (int i = 0; i < g.n; ++i) {
            const double x = g.coord(i);
            u[static_cast<std::size_t>(i)] += a * std::cos(k0 * m * x) + b * std::sin(k0 * m * x);
        }
    }
    return u;
}

double rel_diff(double a, double b) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    return scale > 0.0 ? std::fabs(a - b) / scale : 0.0;
}

}  // namespace

TEST_CASE("energy at zero, small spheres, and far out along rays") {
    Problem prob = make_problem_1d();
    const GridSpec& g = prob.mp.grid;

    // Zero field has exactly zero energy.
    Field zero(g);
    EnergyBreakdown e0 = energy_full(zero, prob);
    CHECK(e0.total == 0.0);
    CHECK(e0.kinetic == 0.0);
    CHECK(e0.nonlinear == 0.0);

    // Strict local minimum at 0: small bumps have positive energy.
    Field small = gaussian_bump(g, 0.3, 0.9, 1e-3);
    CHECK(energy_full(small, prob).total > 0.0);

    // Far along a positive ray the energy is negative.
    Field big = scaled(gaussian_bump(g, 0.0, 1.0), 100.0);
    CHECK(energy_full(big, prob).total < 0.0);
}

TEST_CASE("breakdown identity and sign structure") {
    Problem prob = make_problem_1d();
    for (unsigned seed : {1u, 2u, 3u, 4u}) {
        Field u = random_band_limited(prob.mp.grid, seed);
        EnergyBreakdown e = energy_full(u, prob);
        CHECK(std::fabs(e.total - (e.kinetic + e.potential + e.coupling - e.nonlinear)) < 1e-12);
        CHECK(e.kinetic >= 0.0);
        CHECK(e.potential >= 0.0);
        CHECK(e.coupling >= 0.0);
        CHECK(e.nonlinear >= 0.0);
    }
}

TEST_CASE("limit energy agrees with the constant-potential uncoupled full energy") {
    GridSpec g = make_grid(1, 128, 12.0);
    ModelParams mp = ModelParams::make(FracParams::make(1, 0.4, 0.8, 0.3, 0.25),
                                       Potential::constant(2.0), Nonlinearity(3.5), g);
    Problem prob = Problem::make(mp, /*coupling_on=*/false);
    for (unsigned seed : {5u, 6u}) {
        Field u = random_band_limited(g, seed);
        EnergyBreakdown full = energy_full(u, prob);
        EnergyBreakdown lim = energy_limit(u, 2.0, 0.4, mp.nonlin);
        CHECK(rel_diff(full.total, lim.total) < 1e-14);
        CHECK(full.coupling == 0.0);
        CHECK(lim.coupling == 0.0);
    }
}

TEST_CASE("limit energy is increasing in mu for nonzero u") {
    GridSpec g = make_grid(1, 128, 12.0);
    Nonlinearity nl(3.5);
    Field u = gaussian_bump(g);
    const double e1 = energy_limit(u, 1.0, 0.4, nl).total;
    const double e2 = energy_limit(u, 2.0, 0.4, nl).total;
    const double e3 = energy_limit(u, 3.0, 0.4, nl).total;
    CHECK(e1 < e2);
    CHECK(e2 < e3);
}

TEST_CASE("gradients pass the central-difference test") {
    Problem prob = make_problem_1d();
    const GridSpec& g = prob.mp.grid;
    const double tau = 1e-5;
    for (unsigned seed = 1; seed <= 5; ++seed) {
        Field u = random_band_limited(g, seed);
        Field v = random_band_limited(g, seed + 100);

        // Full functional.
        {
            Field up = u, um = u;
            add_scaled(up, tau, v);
            add_scaled(um, -tau, v);
            const double fd =
                (energy_full(up, prob).total - energy_full(um, prob).total) / (2.0 * tau);
            const double an = inner_product(gradient_full(u, prob).g, v);
            CHECK(rel_diff(fd, an) < 1e-5);
        }
        // Limit functional.
        {
            Field up = u, um = u;
            add_scaled(up, tau, v);
            add_scaled(um, -tau, v);
            const double fd = (energy_limit(up, 1.3, 0.4, prob.mp.nonlin).total -
                               energy_limit(um, 1.3, 0.4, prob.mp.nonlin).total) /
                              (2.0 * tau);
            const double an = inner_product(gradient_limit(u, 1.3, 0.4, prob.mp.nonlin).g, v);
            CHECK(rel_diff(fd, an) < 1e-5);
        }
    }
}

TEST_CASE("defect equals the gradient paired with u") {
    Problem prob = make_problem_1d();
    for (unsigned seed : {11u, 12u, 13u}) {
        Field u = random_band_limited(prob.mp.grid, seed);
        const double d = nehari_defect(u, prob);
        const double gu = inner_product(gradient_full(u, prob).g, u);
        CHECK(rel_diff(d, gu) < 1e-10);
    }
}

TEST_CASE("zero field: gradient and defect vanish") {
    Problem prob = make_problem_1d();
    Field zero(prob.mp.grid);
    CHECK(max_abs(gradient_full(zero, prob).g) == 0.0);
    CHECK(nehari_defect(zero, prob) == 0.0);  // though 0 is not a member
}

TEST_CASE("limit energy is invariant under lattice shifts") {
    GridSpec g = make_grid(1, 128, 12.0);
    Nonlinearity nl(3.5);
    Field u = gaussian_bump(g, 1.3, 0.8);
    const double base = energy_limit(u, 1.0, 0.4, nl).total;
    for (int cells : {1, 7, 40}) {
        const double shifted = energy_limit(shift_periodic(u, {cells, 0}), 1.0, 0.4, nl).total;
        CHECK(rel_diff(base, shifted) < 1e-13);
    }
}

TEST_CASE("growth bound for the power nonlinearity") {
    // int f(u) u = int u_+^{q+1} <= max(u_+)^{q-1} int u^2.
    GridSpec g = make_grid(1, 128, 12.0);
    Nonlinearity nl(3.5);
    for (unsigned seed : {21u, 22u, 23u, 24u}) {
        Field u = random_band_limited(g, seed);
        const double lhs = integral_fu(u, nl);
        const double umax = std::max(max_value(u), 0.0);
        const double rhs = std::pow(umax, nl.q - 1.0) * inner_product(u, u);
        CHECK(lhs <= rhs * (1.0 + 1e-12));
    }
}

TEST_CASE("dealias flag truncates the nonlinear gradient term only") {
    Problem prob = make_problem_1d();
    Problem dealiased = prob;
    dealiased.dealias = true;
    Field u = gaussian_bump(prob.mp.grid);
    // Energies agree; gradients differ only through the f(u) term.
    CHECK(energy_full(u, prob).total == energy_full(u, dealiased).total);
    Field g1 = gradient_full(u, prob).g;
    Field g2 = gradient_full(u, dealiased).g;
    double diff = 0.0;
    for (std::size_t i = 0; i < g1.size(); ++i) diff = std::max(diff, std::fabs(g1[i] - g2[i]));
    CHECK(diff > 0.0);       // the truncation does something
    CHECK(diff < 1e-3 * max_abs(g1));  // but only at the roundoff-level tail of a smooth bump
}
