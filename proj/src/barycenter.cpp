#include "fsp/barycenter.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fsp {

TruncationSpec TruncationSpec::for_potential(const Potential& p) {
    TruncationSpec t;
    t.delta = p.delta;
    double max_y = 0.0;
    for (const Point& y : p.minima) max_y = std::max(max_y, point_norm(y));
    if (p.kind == PotentialKind::ring) max_y = p.ring_radius;
    t.rho = max_y + 2.0 * t.delta + 1.0;
    return t;
}

Point chi(const Point& x, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("chi: rho must be > 0");
    const double r = point_norm(x);
    if (r <= rho) return x;
    const double scale = rho / r;
    return Point{x[0] * scale, x[1] * scale};
}

Point barycenter(const Field& u, double eps, const TruncationSpec& trunc) {
    const GridSpec& g = u.grid;
    double mass = 0.0;
    Point num{0.0, 0.0};
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) {
            const double m = u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
            const Point c = chi(Point{eps * g.coord(i), 0.0}, trunc.rho);
            num[0] += c[0] * m;
            mass += m;
        }
    } else {
        for (int i0 = 0; i0 < g.n; ++i0)
            for (int i1 = 0; i1 < g.n; ++i1) {
                const double m = u[g.index(i0, i1)] * u[g.index(i0, i1)];
                const Point c = chi(Point{eps * g.coord(i0), eps * g.coord(i1)}, trunc.rho);
                num[0] += c[0] * m;
                num[1] += c[1] * m;
                mass += m;
            }
    }
    if (!(mass > 0.0)) throw std::invalid_argument("barycenter: zero field");
    return Point{num[0] / mass, num[1] / mass};
}

double dist_to_M(const Point& p, const Potential& potential) {
    if (potential.kind == PotentialKind::ring)
        return std::fabs(point_norm(p) - potential.ring_radius);
    double d = std::numeric_limits<double>::infinity();
    for (const Point& y : potential.minima) d = std::min(d, point_dist(p, y));
    return d;
}

}  // namespace fsp
