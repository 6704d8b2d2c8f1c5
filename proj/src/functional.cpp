#include "fsp/functional.hpp"

#include <cmath>
#include <stdexcept>

namespace fsp {

Problem Problem::make(ModelParams mp, bool coupling_on, bool dealias) {
    Problem p;
    p.v_eps = sample_potential(mp.potential, mp.grid, mp.frac.eps);
    p.spectrum = build_spectrum(mp.grid, mp.frac.s, mp.frac.alpha);
    p.kernel = build_kernel(mp.grid, mp.frac.alpha);
    p.coupling_on = coupling_on;
    p.dealias = dealias;
    p.mp = std::move(mp);
    return p;
}

Problem Problem::with_eps(double eps) const {
    Problem p = *this;
    p.mp = mp.with_eps(eps);
    p.v_eps = sample_potential(p.mp.potential, p.mp.grid, eps);
    return p;  // kernel and multiplier tables do not depend on eps
}

double integral_F(const Field& u, const Nonlinearity& nonlin) {
    double s = 0.0;
    for (double x : u.values) s += nonlin.F(x);
    double cell = u.grid.h;
    if (u.grid.dim == 2) cell *= u.grid.h;
    return cell * s;
}

double integral_fu(const Field& u, const Nonlinearity& nonlin) {
    double s = 0.0;
    for (double x : u.values) s += nonlin.f(x) * x;
    double cell = u.grid.h;
    if (u.grid.dim == 2) cell *= u.grid.h;
    return cell * s;
}

double weighted_l2_sq(const Field& u, const Field& weight) {
    require_same_grid(u, weight, "weighted_l2_sq");
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += weight[i] * u[i] * u[i];
    double cell = u.grid.h;
    if (u.grid.dim == 2) cell *= u.grid.h;
    return cell * s;
}

EnergyBreakdown energy_full(const Field& u, const Problem& prob) {
    require_same_grid(u, prob.v_eps, "energy_full");
    EnergyBreakdown e;
    e.kinetic = 0.5 * half_laplacian_norm_sq(u, prob.spectrum.pow_2s);
    e.potential = 0.5 * weighted_l2_sq(u, prob.v_eps);
    if (prob.coupling_on)
        e.coupling = 0.25 * coupling_A(u, prob.kernel, prob.mp.frac);
    e.nonlinear = integral_F(u, prob.mp.nonlin);
    e.total = e.kinetic + e.potential + e.coupling - e.nonlinear;
    return e;
}

EnergyBreakdown energy_limit(const Field& u, double mu, const std::vector<double>& pow_2s,
                             const Nonlinearity& nonlin) {
    if (!(mu > 0.0)) throw std::invalid_argument("energy_limit: mu must be > 0");
    EnergyBreakdown e;
    e.kinetic = 0.5 * half_laplacian_norm_sq(u, pow_2s);
    e.potential = 0.5 * mu * inner_product(u, u);
    e.coupling = 0.0;
    e.nonlinear = integral_F(u, nonlin);
    e.total = e.kinetic + e.potential - e.nonlinear;
    return e;
}

EnergyBreakdown energy_limit(const Field& u, double mu, double s, const Nonlinearity& nonlin) {
    return energy_limit(u, mu, multiplier_table(u.grid, 2.0 * s), nonlin);
}

GradientField gradient_full(const Field& u, const Problem& prob) {
    require_same_grid(u, prob.v_eps, "gradient_full");
    GradientField out;
    out.context = EnergyContext::full;
    out.g = apply_multiplier(u, prob.spectrum.pow_2s);
    Field fu(u.grid);
    for (std::size_t i = 0; i < u.size(); ++i) fu[i] = prob.mp.nonlin.f(u[i]);
    if (prob.dealias) fu = dealias_two_thirds(fu);
    if (prob.coupling_on) {
        PoissonSolution sol = solve_poisson(u, prob.kernel, prob.mp.frac);
        for (std::size_t i = 0; i < u.size(); ++i)
            out.g[i] += prob.v_eps[i] * u[i] + sol.phi[i] * u[i] - fu[i];
    } else {
        for (std::size_t i = 0; i < u.size(); ++i)
            out.g[i] += prob.v_eps[i] * u[i] - fu[i];
    }
    return out;
}

GradientField gradient_limit(const Field& u, double mu, const std::vector<double>& pow_2s,
                             const Nonlinearity& nonlin) {
    GradientField out;
    out.context = EnergyContext::limit;
    out.mu = mu;
    out.g = apply_multiplier(u, pow_2s);
    for (std::size_t i = 0; i < u.size(); ++i) out.g[i] += mu * u[i] - nonlin.f(u[i]);
    return out;
}

GradientField gradient_limit(const Field& u, double mu, double s, const Nonlinearity& nonlin) {
    return gradient_limit(u, mu, multiplier_table(u.grid, 2.0 * s), nonlin);
}

double nehari_defect(const Field& u, const Problem& prob) {
    const double a = half_laplacian_norm_sq(u, prob.spectrum.pow_2s) + weighted_l2_sq(u, prob.v_eps);
    const double b = prob.coupling_on ? coupling_A(u, prob.kernel, prob.mp.frac) : 0.0;
    return a + b - integral_fu(u, prob.mp.nonlin);
}

double nehari_defect_limit(const Field& u, double mu, double s, const Nonlinearity& nonlin) {
    const double a = half_laplacian_norm_sq(u, s) + mu * inner_product(u, u);
    return a - integral_fu(u, nonlin);
}

}  // namespace fsp
