#include "fsp/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fsp/fft.hpp"

namespace fsp {

Spectrum forward_transform(const Field& u) {
    Spectrum s;
    s.grid = u.grid;
    Dft::plan(u.grid.dim, u.grid.n).forward(u.values, s.coeff);
    return s;
}

Field inverse_transform(const Spectrum& s) {
    Field u(s.grid);
    Dft::plan(s.grid.dim, s.grid.n).inverse(s.coeff, u.values);
    return u;
}

std::vector<double> multiplier_table(const GridSpec& g, double power) {
    const double k0 = std::numbers::pi / g.L;
    const int n = g.n;
    const int nh = n / 2 + 1;
    std::vector<double> table;
    if (g.dim == 1) {
        table.resize(static_cast<std::size_t>(nh));
        table[0] = 0.0;
        for (int j = 1; j < nh; ++j) table[static_cast<std::size_t>(j)] = std::pow(k0 * j, power);
    } else {
        table.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(nh));
        for (int j0 = 0; j0 < n; ++j0) {
            const int m0 = j0 < n / 2 ? j0 : j0 - n;
            for (int j1 = 0; j1 < nh; ++j1) {
                const double k2 = k0 * k0 * (static_cast<double>(m0) * m0 + static_cast<double>(j1) * j1);
                table[static_cast<std::size_t>(j0) * nh + j1] = k2 > 0.0 ? std::pow(k2, 0.5 * power) : 0.0;
            }
        }
    }
    return table;
}

SpectrumCache build_spectrum(const GridSpec& g, double s, double alpha) {
    SpectrumCache c;
    c.grid = g;
    c.s = s;
    c.alpha = alpha;
    c.pow_2s = multiplier_table(g, 2.0 * s);
    c.pow_alpha = multiplier_table(g, alpha);
    return c;
}

Field apply_multiplier(const Field& u, const std::vector<double>& table) {
    const Dft& dft = Dft::plan(u.grid.dim, u.grid.n);
    if (table.size() != dft.spec_size())
        throw std::invalid_argument("apply_multiplier: table does not match grid");
    std::vector<std::complex<double>> hat;
    dft.forward(u.values, hat);
    for (std::size_t i = 0; i < hat.size(); ++i) hat[i] *= table[i];
    Field r(u.grid);
    dft.inverse(hat, r.values);
    return r;
}

Field frac_laplacian(const Field& u, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("frac_laplacian: beta must be positive");
    return apply_multiplier(u, multiplier_table(u.grid, 2.0 * beta));
}

// Parseval weights: interior columns of the half-spectrum stand for a
// conjugate pair, the j=0 and j=n/2 columns for themselves.
double half_laplacian_norm_sq(const Field& u, const std::vector<double>& table) {
    const GridSpec& g = u.grid;
    const Dft& dft = Dft::plan(g.dim, g.n);
    if (table.size() != dft.spec_size())
        throw std::invalid_argument("half_laplacian_norm_sq: table does not match grid");
    std::vector<std::complex<double>> hat;
    dft.forward(u.values, hat);
    const int nh = g.n / 2 + 1;
    double acc = 0.0;
    for (std::size_t i = 0; i < hat.size(); ++i) {
        const int j1 = static_cast<int>(i % static_cast<std::size_t>(nh));
        const double w = (j1 == 0 || j1 == g.n / 2) ? 1.0 : 2.0;
        acc += w * table[i] * std::norm(hat[i]);
    }
    double cell = g.h;
    if (g.dim == 2) cell *= g.h;
    return acc * cell / static_cast<double>(g.total());
}

double half_laplacian_norm_sq(const Field& u, double beta) {
    return half_laplacian_norm_sq(u, multiplier_table(u.grid, 2.0 * beta));
}

Field invert_one_plus(const Field& g, const std::vector<double>& table) {
    const Dft& dft = Dft::plan(g.grid.dim, g.grid.n);
    std::vector<std::complex<double>> hat;
    dft.forward(g.values, hat);
    for (std::size_t i = 0; i < hat.size(); ++i) hat[i] /= (1.0 + table[i]);
    Field r(g.grid);
    dft.inverse(hat, r.values);
    return r;
}

Field dealias_two_thirds(const Field& u) {
    const GridSpec& g = u.grid;
    const Dft& dft = Dft::plan(g.dim, g.n);
    std::vector<std::complex<double>> hat;
    dft.forward(u.values, hat);
    const int cut = g.n / 3;
    const int nh = g.n / 2 + 1;
    if (g.dim == 1) {
        for (int j = cut + 1; j < nh; ++j) hat[static_cast<std::size_t>(j)] = 0.0;
    } else {
        for (int j0 = 0; j0 < g.n; ++j0) {
            const int m0 = j0 < g.n / 2 ? j0 : j0 - g.n;
            for (int j1 = 0; j1 < nh; ++j1)
                if (std::abs(m0) > cut || j1 > cut)
                    hat[static_cast<std::size_t>(j0) * nh + j1] = 0.0;
        }
    }
    Field r(g);
    dft.inverse(hat, r.values);
    return r;
}

}  // namespace fsp
