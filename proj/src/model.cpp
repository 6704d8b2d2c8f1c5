#include "fsp/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fsp {

double riesz_gamma(int N, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("riesz_gamma: alpha must be > 0");
    if (!(alpha < static_cast<double>(N)))
        throw std::invalid_argument("riesz_gamma: alpha must be < N (Gamma pole at N/2 - alpha/2 = 0)");
    const double n2 = 0.5 * static_cast<double>(N);
    const double logv = n2 * std::log(std::numbers::pi) + alpha * std::numbers::ln2 +
                        std::lgamma(0.5 * alpha) - std::lgamma(n2 - 0.5 * alpha);
    return std::exp(logv);
}

FracParams FracParams::make(int N, double s, double alpha, double theta, double eps) {
    FracParams p{s, alpha, theta, eps, N};
    HypothesisReport rep = validate_hypotheses(N, s, alpha, theta, eps,
                                               /*q=*/4.0, nullptr, nullptr);
    for (const auto& c : rep.checks) {
        if (c.name.rfind("H1", 0) == 0 && !c.passed)
            throw std::invalid_argument("FracParams: " + c.name + " violated: " + c.detail);
        if (c.name == "eps" && !c.passed)
            throw std::invalid_argument("FracParams: " + c.detail);
    }
    return p;
}

FracParams FracParams::with_eps(double new_eps) const {
    if (!(new_eps > 0.0)) throw std::invalid_argument("with_eps: eps must be > 0");
    FracParams p = *this;
    p.eps = new_eps;
    return p;
}

double Potential::operator()(const Point& x) const {
    switch (kind) {
        case PotentialKind::constant:
            return mu;
        case PotentialKind::multi_well: {
            double v = Vinf;
            const double w2 = width * width;
            for (const Point& c : centers) {
                const double dx = x[0] - c[0];
                const double dy = x[1] - c[1];
                v -= (Vinf - V0) * std::exp(-(dx * dx + dy * dy) / w2);
            }
            return std::max(v, V0);
        }
        case PotentialKind::ring: {
            const double r = point_norm(x) - ring_radius;
            const double v = Vinf - (Vinf - V0) * std::exp(-r * r / (width * width));
            return std::max(v, V0);
        }
    }
    return mu;
}

Potential Potential::constant(double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("Potential::constant: mu must be > 0");
    Potential p;
    p.kind = PotentialKind::constant;
    p.mu = mu;
    p.V0 = mu;
    p.Vinf = mu;
    p.minima = {Point{0.0, 0.0}};
    p.delta = 1.0;
    p.cat_M = 1;
    return p;
}

Potential Potential::multi_well(std::vector<Point> centers, double V0, double Vinf, double width) {
    if (centers.empty()) throw std::invalid_argument("Potential::multi_well: no centers");
    if (!(V0 > 0.0)) throw std::invalid_argument("Potential::multi_well: V0 must be > 0");
    if (!(V0 < Vinf)) throw std::invalid_argument("Potential::multi_well: V0 < Vinf required");
    if (!(width > 0.0)) throw std::invalid_argument("Potential::multi_well: width must be > 0");
    Potential p;
    p.kind = PotentialKind::multi_well;
    p.centers = centers;
    p.V0 = V0;
    p.Vinf = Vinf;
    p.width = width;
    p.minima = std::move(centers);
    p.cat_M = static_cast<int>(p.minima.size());
    // Admissible neighborhood scale: half the minimal pairwise separation.
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.minima.size(); ++i)
        for (std::size_t j = i + 1; j < p.minima.size(); ++j)
            sep = std::min(sep, point_dist(p.minima[i], p.minima[j]));
    p.delta = std::isfinite(sep) ? 0.5 * sep : 1.0;
    return p;
}

Potential Potential::ring(double radius, double V0, double Vinf, double width) {
    if (!(radius > 0.0)) throw std::invalid_argument("Potential::ring: radius must be > 0");
    if (!(V0 > 0.0)) throw std::invalid_argument("Potential::ring: V0 must be > 0");
    if (!(V0 < Vinf)) throw std::invalid_argument("Potential::ring: V0 < Vinf required");
    if (!(width > 0.0)) throw std::invalid_argument("Potential::ring: width must be > 0");
    Potential p;
    p.kind = PotentialKind::ring;
    p.ring_radius = radius;
    p.V0 = V0;
    p.Vinf = Vinf;
    p.width = width;
    p.minima = {Point{radius, 0.0}, Point{-radius, 0.0},
                Point{0.0, radius}, Point{0.0, -radius}};  // samples of the circle
    p.delta = width;  // ring thickness
    p.cat_M = 2;      // category of the circle in itself
    return p;
}

Field sample_potential(const Potential& p, const GridSpec& grid, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("sample_potential: eps must be > 0");
    Field v(grid);
    if (grid.dim == 1) {
        for (int i = 0; i < grid.n; ++i)
            v[static_cast<std::size_t>(i)] = p(Point{eps * grid.coord(i), 0.0});
    } else {
        for (int i0 = 0; i0 < grid.n; ++i0)
            for (int i1 = 0; i1 < grid.n; ++i1)
                v[grid.index(i0, i1)] = p(Point{eps * grid.coord(i0), eps * grid.coord(i1)});
    }
    return v;
}

Nonlinearity::Nonlinearity(double q_) : q(q_) {
    if (!(q_ > 3.0)) throw std::invalid_argument("Nonlinearity: exponent q must exceed 3");
}

double Nonlinearity::f(double t) const { return t > 0.0 ? std::pow(t, q) : 0.0; }
double Nonlinearity::df(double t) const { return t > 0.0 ? q * std::pow(t, q - 1.0) : 0.0; }
double Nonlinearity::F(double t) const { return t > 0.0 ? std::pow(t, q + 1.0) / (q + 1.0) : 0.0; }
double Nonlinearity::f_over_t3(double t) const { return t > 0.0 ? std::pow(t, q - 3.0) : 0.0; }

bool HypothesisReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const HypothesisCheck& c) { return c.passed; });
}

std::string HypothesisReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.passed) return c.name + ": " + c.detail;
    return {};
}

namespace {

std::string num(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

HypothesisReport validate_hypotheses(int N, double s, double alpha, double theta, double eps,
                                     double q, const Potential* pot, const GridSpec* grid) {
    HypothesisReport rep;
    auto add = [&rep](std::string name, bool ok, std::string detail) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    add("H1:s", s > 0.0 && s < 1.0, "s in (0,1); s = " + num(s));
    add("H1:alpha", alpha > 0.0 && alpha < static_cast<double>(N),
        "alpha in (0,N); alpha = " + num(alpha) + ", N = " + std::to_string(N));
    add("H1:theta", theta > 0.0 && theta < alpha,
        "theta in (0,alpha); theta = " + num(theta) + ", alpha = " + num(alpha));
    add("H1:N", static_cast<double>(N) > 2.0 * s && static_cast<double>(N) < 2.0 * s + alpha,
        "N in (2s, 2s+alpha); N = " + std::to_string(N) + ", 2s = " + num(2.0 * s) +
            ", 2s+alpha = " + num(2.0 * s + alpha));
    add("eps", eps > 0.0, "eps > 0; eps = " + num(eps));

    const double crit = 2.0 * static_cast<double>(N) / (static_cast<double>(N) - 2.0 * s);
    add("f1", q > 1.0, "f C^1 and vanishing on t<=0 needs q > 1; q = " + num(q));
    add("f2", q > 1.0, "f(t)/t -> 0 as t -> 0 needs q > 1; q = " + num(q));
    add("f3", q < crit - 2.0,
        "q < 2N/(N-2s) - 2 so q0 in (q, 2N/(N-2s)-1) exists; q = " + num(q) +
            ", bound = " + num(crit - 2.0));
    add("f4", q > 3.0, "K = q+1 > 4 needs q > 3; q = " + num(q));
    add("f5", q > 3.0, "f(t)/t^3 = t^{q-3} strictly increasing needs q > 3; q = " + num(q));

    // Numeric spot checks on a log grid (only possible when q is in range).
    if (q > 3.0) {
        const Nonlinearity nl(q);
        bool f4_ok = true, f5_ok = true;
        double prev = -1.0;
        for (int i = 0; i <= 48; ++i) {
            const double t = std::pow(10.0, -6.0 + 0.25 * i);  // 1e-6 .. 1e6
            const double lhs = (q + 1.0) * nl.F(t);
            const double rhs = t * nl.f(t);
            if (!(lhs <= rhs * (1.0 + 1e-12) + 1e-300)) f4_ok = false;
            const double r = nl.f_over_t3(t);
            if (prev >= 0.0 && !(r > prev)) f5_ok = false;
            prev = r;
        }
        add("f4:numeric", f4_ok, "K F(t) <= t f(t) on t in [1e-6, 1e6], K = q+1");
        add("f5:numeric", f5_ok, "f(t)/t^3 strictly increasing on t in [1e-6, 1e6]");
    }

    if (pot != nullptr) {
        bool v1 = pot->V0 > 0.0 && (pot->kind == PotentialKind::constant || pot->V0 < pot->Vinf);
        std::string detail = "0 < V0" + std::string(pot->kind == PotentialKind::constant ? "" : " < Vinf") +
                             "; V0 = " + num(pot->V0) + ", Vinf = " + num(pot->Vinf);
        add("V1", v1, detail);

        bool attain = true;
        for (const Point& y : pot->minima)
            if (std::fabs((*pot)(y)-pot->V0) > 1e-10) attain = false;
        add("V1:minima", attain, "every declared minimizer attains V0 within 1e-10");

        if (grid != nullptr) {
            // One-sided: lattice points need not hit the minima exactly, but
            // the clamp keeps every sample at or above V0.
            Field v = sample_potential(*pot, *grid, 1.0);
            const double vmin = min_value(v);
            add("V1:grid-min", vmin >= pot->V0 - 1e-10,
                "sampled V never falls below V0; sampled min = " + num(vmin));
        }
    }
    return rep;
}

HypothesisReport validate_hypotheses(const ModelParams& mp) {
    return validate_hypotheses(mp.frac.N, mp.frac.s, mp.frac.alpha, mp.frac.theta, mp.frac.eps,
                               mp.nonlin.q, &mp.potential, &mp.grid);
}

ModelParams ModelParams::make(FracParams frac, Potential pot, Nonlinearity nonlin, GridSpec grid) {
    if (frac.N != grid.dim)
        throw std::invalid_argument("ModelParams: parameter dimension N must match the grid dimension");
    HypothesisReport rep = validate_hypotheses(frac.N, frac.s, frac.alpha, frac.theta, frac.eps,
                                               nonlin.q, &pot, &grid);
    if (!rep.all_passed())
        throw std::invalid_argument("ModelParams: hypothesis violated: " + rep.first_failure());
    ModelParams mp;
    mp.frac = frac;
    mp.potential = std::move(pot);
    mp.nonlin = nonlin;
    mp.grid = grid;
    mp.gamma_alpha = riesz_gamma(frac.N, frac.alpha);
    return mp;
}

ModelParams ModelParams::with_eps(double eps) const {
    ModelParams mp = *this;
    mp.frac = frac.with_eps(eps);
    return mp;
}

}  // namespace fsp
