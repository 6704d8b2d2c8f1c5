// Problem data: fractional/semiclassical parameters, potential families with
// a declared minimum set, and the power nonlinearity, with validation of the
// structural hypotheses the variational machinery needs.

#pragma once

#include <string>
#include <vector>

#include "fsp/grid.hpp"

namespace fsp {

// pi^{N/2} 2^alpha Gamma(alpha/2) / Gamma(N/2 - alpha/2), via log-gamma.
double riesz_gamma(int N, double alpha);

struct FracParams {
    double s = 0.0;      // kinetic order, in (0,1)
    double alpha = 0.0;  // coupling order, in (0,N)
    double theta = 0.0;  // perturbation exponent, in (0,alpha)
    double eps = 0.0;    // semiclassical parameter, > 0
    int N = 0;           // spatial dimension, 1 or 2; must lie in (2s, 2s+alpha)

    // Validates the parameter box above; throws naming the violated inequality.
    static FracParams make(int N, double s, double alpha, double theta, double eps);

    FracParams with_eps(double new_eps) const;
};

enum class PotentialKind { constant, multi_well, ring };

// Continuous potential with min V = V0 > 0 attained on the declared set M.
//
// multi_well:  V(x) = Vinf - (Vinf-V0) * sum_i exp(-|x-c_i|^2/width^2), clamped
//              from below at V0, so every center attains the minimum exactly.
// ring (2D):   same profile in the radial variable |x| - radius.
// constant:    V = mu everywhere; M is declared as {origin} for bookkeeping.
struct Potential {
    PotentialKind kind = PotentialKind::constant;
    double mu = 1.0;          // constant family
    std::vector<Point> centers;
    double width = 1.0;
    double ring_radius = 1.0;
    double V0 = 1.0;
    double Vinf = 1.0;
    std::vector<Point> minima;  // declared M (ring keeps the analytic circle too)
    double delta = 1.0;         // admissible neighborhood scale for M
    int cat_M = 1;              // declared category of M

    double operator()(const Point& x) const;

    static Potential constant(double mu);
    static Potential multi_well(std::vector<Point> centers, double V0, double Vinf, double width);
    static Potential ring(double radius, double V0, double Vinf, double width);
};

// Samples V(eps * x) onto the lattice.
Field sample_potential(const Potential& p, const GridSpec& grid, double eps);

// Pure power nonlinearity f(t) = max(t,0)^q.  Vanishes on t <= 0, is C^1 for
// q > 1, satisfies K F(t) = t f(t) with K = q+1, and f(t)/t^3 = t^{q-3} is
// strictly increasing for q > 3.
struct Nonlinearity {
    double q = 0.0;

    explicit Nonlinearity(double q);
    Nonlinearity() = default;

    double f(double t) const;          // t_+^q
    double df(double t) const;         // q t_+^{q-1}
    double F(double t) const;          // t_+^{q+1}/(q+1)
    double f_over_t3(double t) const;  // t_+^{q-3}
};

struct ModelParams {
    FracParams frac;
    Potential potential;
    Nonlinearity nonlin;
    GridSpec grid;
    double gamma_alpha = 0.0;

    // Runs the full hypothesis validation; throws on the first failure.
    static ModelParams make(FracParams frac, Potential pot, Nonlinearity nonlin, GridSpec grid);

    ModelParams with_eps(double eps) const;
};

struct HypothesisCheck {
    std::string name;    // e.g. "H1:theta", "f5", "V1"
    bool passed = false;
    std::string detail;  // the inequality that was checked (or violated)
};

struct HypothesisReport {
    std::vector<HypothesisCheck> checks;
    bool all_passed() const;
    std::string first_failure() const;  // empty if none
};

// Pass/fail per hypothesis on raw values; never throws.  The potential and
// grid are optional (checks needing them are skipped when absent, e.g. when
// the potential itself failed to construct).
HypothesisReport validate_hypotheses(int N, double s, double alpha, double theta, double eps,
                                     double q, const Potential* pot, const GridSpec* grid);
HypothesisReport validate_hypotheses(const ModelParams& mp);

}  // namespace fsp
