#include "fsp/poisson.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fsp/fft.hpp"
#include "fsp/spectral.hpp"

namespace fsp {

double kernel_cell_average(int dim, double alpha, double h) {
    if (dim == 1) {
        // (1/h) * integral over [-h/2, h/2] of |x|^{alpha-1} dx
        return (2.0 / alpha) * std::pow(0.5 * h, alpha) / h;
    }
    // (1/h^2) * integral over the disk of radius h/sqrt(pi) of |x|^{alpha-2} dA
    const double re = h / std::sqrt(std::numbers::pi);
    return (2.0 * std::numbers::pi / alpha) * std::pow(re, alpha) / (h * h);
}

RieszKernel build_kernel(const GridSpec& grid, double alpha) {
    if (!(alpha > 0.0) || !(alpha < static_cast<double>(grid.dim)))
        throw std::invalid_argument("build_kernel: alpha must lie in (0, dim)");
    RieszKernel k;
    k.grid = grid;
    k.alpha = alpha;
    k.padded_n = 2 * grid.n;
    k.origin_value = kernel_cell_average(grid.dim, alpha, grid.h);

    const int np = k.padded_n;
    const double expo = alpha - static_cast<double>(grid.dim);
    const double h = grid.h;
    if (grid.dim == 1) {
        k.samples.assign(static_cast<std::size_t>(np), 0.0);
        for (int i = 0; i < np; ++i) {
            const int d = i <= grid.n ? i : i - np;  // wraparound displacement
            k.samples[static_cast<std::size_t>(i)] =
                d == 0 ? k.origin_value : std::pow(std::fabs(d) * h, expo);
        }
    } else {
        k.samples.assign(static_cast<std::size_t>(np) * static_cast<std::size_t>(np), 0.0);
        for (int i0 = 0; i0 < np; ++i0) {
            const int d0 = i0 <= grid.n ? i0 : i0 - np;
            for (int i1 = 0; i1 < np; ++i1) {
                const int d1 = i1 <= grid.n ? i1 : i1 - np;
                const double r2 = h * h * (static_cast<double>(d0) * d0 + static_cast<double>(d1) * d1);
                k.samples[static_cast<std::size_t>(i0) * np + i1] =
                    r2 == 0.0 ? k.origin_value : std::pow(r2, 0.5 * expo);
            }
        }
    }

    std::vector<std::complex<double>> hat;
    Dft::plan(grid.dim, np).forward(k.samples, hat);
    // Symmetric real kernel: the spectrum is real; dropping the roundoff-level
    // imaginary part enforces the symmetry exactly.
    k.khat.resize(hat.size());
    for (std::size_t i = 0; i < hat.size(); ++i) k.khat[i] = hat[i].real();
    return k;
}

namespace {

// Zero-pad src into the doubled lattice, multiply spectra, return the first
// n^dim block of the circular convolution (times cell volume).
Field padded_convolve(const Field& source, const RieszKernel& kernel) {
    const GridSpec& g = source.grid;
    const int np = kernel.padded_n;
    const Dft& dft = Dft::plan(g.dim, np);

    std::vector<double> padded(dft.real_size(), 0.0);
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) padded[static_cast<std::size_t>(i)] = source[static_cast<std::size_t>(i)];
    } else {
        for (int i0 = 0; i0 < g.n; ++i0)
            for (int i1 = 0; i1 < g.n; ++i1)
                padded[static_cast<std::size_t>(i0) * np + i1] = source[g.index(i0, i1)];
    }

    std::vector<std::complex<double>> hat;
    dft.forward(padded, hat);
    for (std::size_t i = 0; i < hat.size(); ++i) hat[i] *= kernel.khat[i];
    std::vector<double> conv;
    dft.inverse(hat, conv);

    double cell = g.h;
    if (g.dim == 2) cell *= g.h;
    Field out(g);
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) out[static_cast<std::size_t>(i)] = cell * conv[static_cast<std::size_t>(i)];
    } else {
        for (int i0 = 0; i0 < g.n; ++i0)
            for (int i1 = 0; i1 < g.n; ++i1)
                out[g.index(i0, i1)] = cell * conv[static_cast<std::size_t>(i0) * np + i1];
    }
    return out;
}

void require_kernel(const Field& u, const RieszKernel& kernel, const char* where) {
    if (!(u.grid == kernel.grid))
        throw std::invalid_argument(std::string(where) + ": kernel built for a different grid");
}

}  // namespace

Field riesz_convolve(const Field& source, const RieszKernel& kernel) {
    require_kernel(source, kernel, "riesz_convolve");
    return padded_convolve(source, kernel);
}

PoissonSolution solve_poisson(const Field& u, const RieszKernel& kernel, const FracParams& fp) {
    require_kernel(u, kernel, "solve_poisson");
    if (!all_finite(u)) throw std::invalid_argument("solve_poisson: source field not finite");
    Field sq(u.grid);
    for (std::size_t i = 0; i < u.size(); ++i) sq[i] = u[i] * u[i];
    PoissonSolution sol;
    sol.eps_factor = std::pow(fp.eps, fp.alpha - fp.theta);
    sol.phi = padded_convolve(sq, kernel);
    for (double& x : sol.phi.values) x *= sol.eps_factor;
    return sol;
}

Field solve_poisson_pair(const Field& u, const Field& w, const RieszKernel& kernel,
                         const FracParams& fp) {
    require_same_grid(u, w, "solve_poisson_pair");
    require_kernel(u, kernel, "solve_poisson_pair");
    Field prod(u.grid);
    for (std::size_t i = 0; i < u.size(); ++i) prod[i] = u[i] * w[i];
    Field phi = padded_convolve(prod, kernel);
    const double factor = std::pow(fp.eps, fp.alpha - fp.theta);
    for (double& x : phi.values) x *= factor;
    return phi;
}

double coupling_A(const Field& u, const RieszKernel& kernel, const FracParams& fp) {
    PoissonSolution sol = solve_poisson(u, kernel, fp);
    Field sq(u.grid);
    for (std::size_t i = 0; i < u.size(); ++i) sq[i] = u[i] * u[i];
    return inner_product(sol.phi, sq);
}

double poisson_strong_residual(const Field& u, const RieszKernel& kernel, double gamma_alpha) {
    require_kernel(u, kernel, "poisson_strong_residual");
    const GridSpec& g = u.grid;
    const int np = kernel.padded_n;
    const Dft& dft = Dft::plan(g.dim, np);

    // phi on the full padded lattice (kernel-normalized source gamma^{-1} u^2,
    // so the strong equation reads (-Delta)^{alpha/2} phi = u^2 up to scale).
    std::vector<double> padded(dft.real_size(), 0.0);
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) padded[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
    } else {
        for (int i0 = 0; i0 < g.n; ++i0)
            for (int i1 = 0; i1 < g.n; ++i1)
                padded[static_cast<std::size_t>(i0) * np + i1] = u[g.index(i0, i1)] * u[g.index(i0, i1)];
    }
    std::vector<std::complex<double>> hat;
    dft.forward(padded, hat);

    double cell = g.h;
    if (g.dim == 2) cell *= g.h;
    GridSpec padded_grid;  // same spacing, doubled extent
    padded_grid.dim = g.dim;
    padded_grid.n = np;
    padded_grid.L = 2.0 * g.L;
    padded_grid.h = g.h;
    std::vector<double> mult = multiplier_table(padded_grid, kernel.alpha);

    // (-Delta)^{alpha/2} phi_hat = |k|^alpha * cell * khat * src_hat
    for (std::size_t i = 0; i < hat.size(); ++i) hat[i] *= cell * kernel.khat[i] * mult[i];
    std::vector<double> lhs;
    dft.inverse(hat, lhs);

    // Compare gamma_alpha^{-1} * lhs against u^2 over the interior half-box.
    double max_err = 0.0, max_rhs = 0.0;
    const double inv_gamma = 1.0 / gamma_alpha;
    auto visit = [&](std::size_t pad_idx, std::size_t base_idx, bool interior) {
        const double rhs = u[base_idx] * u[base_idx];
        if (!interior) return;
        max_rhs = std::max(max_rhs, std::fabs(rhs));
        max_err = std::max(max_err, std::fabs(inv_gamma * lhs[pad_idx] - rhs));
    };
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i)
            visit(static_cast<std::size_t>(i), static_cast<std::size_t>(i),
                  std::fabs(g.coord(i)) <= 0.5 * g.L);
    } else {
        for (int i0 = 0; i0 < g.n; ++i0)
            for (int i1 = 0; i1 < g.n; ++i1)
                visit(static_cast<std::size_t>(i0) * np + i1, g.index(i0, i1),
                      std::fabs(g.coord(i0)) <= 0.5 * g.L && std::fabs(g.coord(i1)) <= 0.5 * g.L);
    }
    return max_rhs > 0.0 ? max_err / max_rhs : 0.0;
}

}  // namespace fsp
