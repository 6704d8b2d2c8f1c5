// Periodic computational box: lattice geometry and real scalar fields.
//
// The box is [-L, L)^dim sampled on n points per axis (n a power of two),
// spacing h = 2L/n, lattice points x_i = -L + i*h.  Integrals use the
// rectangle rule h^dim * sum, which is the trapezoid rule on a periodic
// lattice and spectrally accurate for smooth periodic integrands.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fsp {

// Spatial point; 1D problems use component 0 and keep component 1 at zero.
using Point = std::array<double, 2>;

double point_norm(const Point& p);
double point_dist(const Point& a, const Point& b);

struct GridSpec {
    int dim = 1;     // 1 or 2
    int n = 0;       // points per axis, power of two, >= 16
    double L = 0.0;  // half-length; box is [-L, L)^dim
    double h = 0.0;  // spacing 2L/n

    std::size_t total() const;
    double coord(int i) const { return -L + h * static_cast<double>(i); }
    // Flat row-major index (axis 0 slowest).
    std::size_t index(int i0, int i1 = 0) const {
        return dim == 2 ? static_cast<std::size_t>(i0) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i1)
                        : static_cast<std::size_t>(i0);
    }
    Point point(int i0, int i1 = 0) const {
        return dim == 2 ? Point{coord(i0), coord(i1)} : Point{coord(i0), 0.0};
    }

    bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(int dim, int n_per_axis, double L);

struct Field {
    GridSpec grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(const GridSpec& g) : grid(g), values(g.total(), 0.0) {}

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }
};

void require_same_grid(const Field& a, const Field& b, const char* where);
bool all_finite(const Field& u);

// h^dim * sum(u_i * v_i); the lattice L2 scalar product.
double inner_product(const Field& u, const Field& v);
double l2_norm(const Field& u);

// Small arithmetic helpers used throughout the solvers.
Field scaled(const Field& u, double a);
void add_scaled(Field& u, double a, const Field& v);  // u += a*v
Field positive_part(const Field& u);
double max_value(const Field& u);
double min_value(const Field& u);
double max_abs(const Field& u);

// Cyclic lattice shift by whole cells per axis (exact, no interpolation).
Field shift_periodic(const Field& u, const std::array<int, 2>& cells);

// Fraction of the mass of u^2 carried by the outer shell |x_d| >= (1-shell)*L.
// Post-hoc diagnostic for the box-truncation quality of a localized solution.
double boundary_mass_fraction(const Field& u, double shell = 0.1);

}  // namespace fsp
