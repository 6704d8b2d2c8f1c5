#include "fsp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fsp {

double point_norm(const Point& p) { return std::hypot(p[0], p[1]); }

double point_dist(const Point& a, const Point& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

std::size_t GridSpec::total() const {
    std::size_t t = static_cast<std::size_t>(n);
    return dim == 2 ? t * t : t;
}

static bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

GridSpec make_grid(int dim, int n_per_axis, double L) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("make_grid: dim must be 1 or 2, got " + std::to_string(dim));
    if (!is_power_of_two(n_per_axis) || n_per_axis < 16)
        throw std::invalid_argument("make_grid: n_per_axis must be a power of two >= 16, got " +
                                    std::to_string(n_per_axis));
    if (!(L > 0.0) || !std::isfinite(L))
        throw std::invalid_argument("make_grid: half-length L must be positive and finite");
    GridSpec g;
    g.dim = dim;
    g.n = n_per_axis;
    g.L = L;
    g.h = 2.0 * L / static_cast<double>(n_per_axis);
    return g;
}

void require_same_grid(const Field& a, const Field& b, const char* where) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument(std::string(where) + ": fields live on different grids");
}

bool all_finite(const Field& u) {
    return std::all_of(u.values.begin(), u.values.end(),
                       [](double x) { return std::isfinite(x); });
}

double inner_product(const Field& u, const Field& v) {
    require_same_grid(u, v, "inner_product");
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    double cell = u.grid.h;
    if (u.grid.dim == 2) cell *= u.grid.h;
    return cell * s;
}

double l2_norm(const Field& u) { return std::sqrt(inner_product(u, u)); }

Field scaled(const Field& u, double a) {
    Field r = u;
    for (double& x : r.values) x *= a;
    return r;
}

void add_scaled(Field& u, double a, const Field& v) {
    require_same_grid(u, v, "add_scaled");
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += a * v[i];
}

Field positive_part(const Field& u) {
    Field r = u;
    for (double& x : r.values) x = std::max(x, 0.0);
    return r;
}

double max_value(const Field& u) {
    return *std::max_element(u.values.begin(), u.values.end());
}

double min_value(const Field& u) {
    return *std::min_element(u.values.begin(), u.values.end());
}

double max_abs(const Field& u) {
    double m = 0.0;
    for (double x : u.values) m = std::max(m, std::fabs(x));
    return m;
}

Field shift_periodic(const Field& u, const std::array<int, 2>& cells) {
    const GridSpec& g = u.grid;
    Field r(g);
    auto wrap = [&](int i) {
        int m = i % g.n;
        return m < 0 ? m + g.n : m;
    };
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) r[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(wrap(i - cells[0]))];
    } else {
        for (int i0 = 0; i0 < g.n; ++i0)
            for (int i1 = 0; i1 < g.n; ++i1)
                r[g.index(i0, i1)] = u[g.index(wrap(i0 - cells[0]), wrap(i1 - cells[1]))];
    }
    return r;
}

double boundary_mass_fraction(const Field& u, double shell) {
    const GridSpec& g = u.grid;
    const double cut = (1.0 - shell) * g.L;
    double outer = 0.0, total = 0.0;
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) {
            double m = u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
            total += m;
            if (std::fabs(g.coord(i)) >= cut) outer += m;
        }
    } else {
        for (int i0 = 0; i0 < g.n; ++i0)
            for (int i1 = 0; i1 < g.n; ++i1) {
                double m = u[g.index(i0, i1)] * u[g.index(i0, i1)];
                total += m;
                if (std::fabs(g.coord(i0)) >= cut || std::fabs(g.coord(i1)) >= cut) outer += m;
            }
    }
    return total > 0.0 ? outer / total : 0.0;
}

}  // namespace fsp
