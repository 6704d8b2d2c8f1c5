// Riesz-potential solve of the coupling equation: given u, produce
// phi = eps^{alpha-theta} * |.|^{alpha-N} convolved with u^2.
//
// The convolution is a free-space (linear) one: the kernel is sampled on the
// zero-padded doubled lattice and the product is taken there, so no periodic
// image of the source pollutes the potential and phi stays nonnegative for
// nonnegative sources.  Inverting |k|^alpha on the torus instead would force
// a mean-zero phi.
//
// The kernel's singular origin sample is replaced by the analytic average of
// |x|^{alpha-N} over one cell (1D) or over the equal-area disk (2D).

#pragma once

#include <vector>

#include "fsp/grid.hpp"
#include "fsp/model.hpp"

namespace fsp {

struct RieszKernel {
    GridSpec grid;       // base grid; the kernel itself lives on the doubled lattice
    double alpha = 0.0;
    int padded_n = 0;    // 2 * grid.n
    std::vector<double> samples;  // padded real-space kernel, wraparound order
    std::vector<double> khat;     // real part of its half-complex spectrum
    double origin_value = 0.0;    // cell average at x = 0
};

// Analytic average of |x|^{alpha-dim} over the origin cell of spacing h.
double kernel_cell_average(int dim, double alpha, double h);

RieszKernel build_kernel(const GridSpec& grid, double alpha);

// h^dim * (K convolved with source), free-space, on the base grid.
Field riesz_convolve(const Field& source, const RieszKernel& kernel);

struct PoissonSolution {
    Field phi;
    double eps_factor = 1.0;  // eps^{alpha-theta}
};

// phi = eps^{alpha-theta} * K conv u^2.
PoissonSolution solve_poisson(const Field& u, const RieszKernel& kernel, const FracParams& fp);

// eps^{alpha-theta} * K conv (u w); bilinear and symmetric in (u, w).
Field solve_poisson_pair(const Field& u, const Field& w, const RieszKernel& kernel,
                         const FracParams& fp);

// A(u) = integral of phi_u * u^2; nonnegative, quartic in u.
double coupling_A(const Field& u, const RieszKernel& kernel, const FracParams& fp);

// Diagnostic: relative residual of the strong equation
// (-Delta)^{alpha/2} phi = eps^{alpha-theta} gamma_alpha u^2, evaluated
// spectrally on the padded box and measured over the interior half-box
// (max norm, relative to the right-hand side's maximum).  Box truncation
// pollutes the outer region, so only the interior value is meaningful; the
// eps factor cancels in the relative measure.
double poisson_strong_residual(const Field& u, const RieszKernel& kernel, double gamma_alpha);

}  // namespace fsp
