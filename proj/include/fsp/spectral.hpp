// Fractional Laplacians on the periodic box via Fourier multipliers.
//
// (-Delta)^beta acts diagonally in Fourier space with symbol |k|^{2*beta} on
// the frequency lattice k_j = (pi/L)*m_j, m_j in {-n/2, ..., n/2-1}.  The
// zero mode carries multiplier 0 exactly, so constants are annihilated.
// Fields are real and all multipliers are radial, so real-in/real-out holds
// to machine precision through the r2c/c2r transform pair.

#pragma once

#include <complex>
#include <vector>

#include "fsp/grid.hpp"

namespace fsp {

struct Spectrum {
    GridSpec grid;
    std::vector<std::complex<double>> coeff;  // r2c half-spectrum, row-major
};

Spectrum forward_transform(const Field& u);
Field inverse_transform(const Spectrum& s);

// |k|^power over the half-spectrum lattice; entry 0 (zero mode) is exactly 0.
std::vector<double> multiplier_table(const GridSpec& g, double power);

// Precomputed multiplier tables for the two operators the model uses:
// |k|^{2s} for the kinetic operator and |k|^{alpha} for the coupling one.
struct SpectrumCache {
    GridSpec grid;
    double s = 0.0;
    double alpha = 0.0;
    std::vector<double> pow_2s;
    std::vector<double> pow_alpha;
};

SpectrumCache build_spectrum(const GridSpec& g, double s, double alpha);

Field apply_multiplier(const Field& u, const std::vector<double>& table);

// (-Delta)^beta u. beta in (0,1] for the kinetic operator; the coupling
// operator passes beta = alpha/2.
Field frac_laplacian(const Field& u, double beta);

// integral of u * (-Delta)^beta u = sum_k |k|^{2 beta} |u_hat|^2 (Parseval);
// equals |(-Delta)^{beta/2} u|_2^2, nonnegative.
double half_laplacian_norm_sq(const Field& u, double beta);
double half_laplacian_norm_sq(const Field& u, const std::vector<double>& table);

// (1 + (-Delta)^s)^{-1} g by spectral division; table holds |k|^{2s}.
Field invert_one_plus(const Field& g, const std::vector<double>& table);

// 2/3-rule spectral truncation (zero modes with |m| > n/3 on any axis).
Field dealias_two_thirds(const Field& u);

}  // namespace fsp
