// Energies for the rescaled system and its constant-coefficient limit, their
// L2 gradient representatives, and the Nehari defect J(u) = I'(u)[u].
//
// Full problem:   I(u) = 1/2 |(-Dl)^{s/2}u|^2 + 1/2 int V(eps x) u^2
//                        + 1/4 A(u) - int F(u)
// Limit problem:  E_mu(u) = 1/2 |(-Dl)^{s/2}u|^2 + mu/2 |u|^2 - int F(u)

#pragma once

#include "fsp/grid.hpp"
#include "fsp/model.hpp"
#include "fsp/poisson.hpp"
#include "fsp/spectral.hpp"

namespace fsp {

struct EnergyBreakdown {
    double kinetic = 0.0;    // 1/2 |(-Dl)^{s/2} u|_2^2
    double potential = 0.0;  // 1/2 int V(eps x) u^2   (or mu/2 |u|_2^2)
    double coupling = 0.0;   // 1/4 A(u)
    double nonlinear = 0.0;  // int F(u)
    double total = 0.0;      // kinetic + potential + coupling - nonlinear
};

enum class EnergyContext { full, limit };

struct GradientField {
    Field g;  // L2 Riesz representative of the first variation
    EnergyContext context = EnergyContext::full;
    double mu = 0.0;  // set for the limit context
};

// Everything a solve needs, precomputed once per (model, eps):
// sampled potential, multiplier tables, Riesz kernel.
struct Problem {
    ModelParams mp;
    Field v_eps;            // V(eps x) on the lattice
    SpectrumCache spectrum;
    RieszKernel kernel;
    bool coupling_on = true;
    // 2/3-rule truncation of the pointwise f(u) term in the gradient; a
    // discretization-study option, the energy integral stays pointwise.
    bool dealias = false;

    static Problem make(ModelParams mp, bool coupling_on = true, bool dealias = false);
    Problem with_eps(double eps) const;  // re-samples the potential, reuses the kernel
};

EnergyBreakdown energy_full(const Field& u, const Problem& prob);

// Limit functional; s is the kinetic order.  The table overload reuses a
// precomputed |k|^{2s} multiplier table.
EnergyBreakdown energy_limit(const Field& u, double mu, double s, const Nonlinearity& nonlin);
EnergyBreakdown energy_limit(const Field& u, double mu, const std::vector<double>& pow_2s,
                             const Nonlinearity& nonlin);

// g = (-Dl)^s u + V(eps x) u + phi_u u - f(u).
GradientField gradient_full(const Field& u, const Problem& prob);
// g = (-Dl)^s u + mu u - f(u).
GradientField gradient_limit(const Field& u, double mu, double s, const Nonlinearity& nonlin);
GradientField gradient_limit(const Field& u, double mu, const std::vector<double>& pow_2s,
                             const Nonlinearity& nonlin);

// J(u) = |u|_W^2 + A(u) - int f(u) u; zero (and u != 0) on the Nehari set.
double nehari_defect(const Field& u, const Problem& prob);
double nehari_defect_limit(const Field& u, double mu, double s, const Nonlinearity& nonlin);

// int F(u) and int f(u) u on the lattice.
double integral_F(const Field& u, const Nonlinearity& nonlin);
double integral_fu(const Field& u, const Nonlinearity& nonlin);

// int w u^2 (lattice rectangle rule).
double weighted_l2_sq(const Field& u, const Field& weight);

}  // namespace fsp
