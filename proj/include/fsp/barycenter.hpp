// Truncated center-of-mass diagnostics: where a solution concentrates.

#pragma once

#include "fsp/grid.hpp"
#include "fsp/model.hpp"

namespace fsp {

struct TruncationSpec {
    double rho = 0.0;    // truncation radius of chi
    double delta = 0.0;  // neighborhood scale of the minimum set

    // Defaults tied to a potential family: delta from the family, and
    // rho = max |y| over the declared minima + 2*delta + 1, so the 2*delta
    // neighborhood of the minimum set sits inside the ball of radius rho.
    static TruncationSpec for_potential(const Potential& p);
};

// Radial clamp: x inside the rho-ball is kept, outside is projected onto it.
Point chi(const Point& x, double rho);

// beta(u) = int chi(eps x) u^2 / int u^2; |result| <= rho always, and the
// result is invariant under scaling of u.
Point barycenter(const Field& u, double eps, const TruncationSpec& trunc);

// Euclidean distance from p to the declared minimum set (point list, or the
// circle for the ring family).
double dist_to_M(const Point& p, const Potential& potential);

}  // namespace fsp
