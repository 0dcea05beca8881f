#pragma once

#include "bicoef/expr.hpp"
#include "bicoef/series.hpp"

#include <optional>

namespace bicoef {

// Expression bundle for F = G/H together with the symbolic partials of H.
struct Problem {
    ExprPtr G, H, Hz, Hw;
    std::string zvar = "z", wvar = "w";
    double unit_tol = 1e-12;

    static Problem make(ExprPtr g, ExprPtr h, std::string zv = "z", std::string wv = "w") {
        Problem p;
        p.G = std::move(g);
        p.H = std::move(h);
        p.zvar = std::move(zv);
        p.wvar = std::move(wv);
        p.Hz = bicoef::differentiate(p.H, p.zvar);
        p.Hw = bicoef::differentiate(p.H, p.wvar);
        return p;
    }
};

template <class C>
C eval_H(const Problem& p, const C& z, const C& w) {
    return eval_scalar<C>(p.H, {{p.zvar, z}, {p.wvar, w}}, p.unit_tol);
}
template <class C>
C eval_Hz(const Problem& p, const C& z, const C& w) {
    return eval_scalar<C>(p.Hz, {{p.zvar, z}, {p.wvar, w}}, p.unit_tol);
}
template <class C>
C eval_Hw(const Problem& p, const C& z, const C& w) {
    return eval_scalar<C>(p.Hw, {{p.zvar, z}, {p.wvar, w}}, p.unit_tol);
}
template <class C>
C eval_G(const Problem& p, const C& z, const C& w) {
    return eval_scalar<C>(p.G, {{p.zvar, z}, {p.wvar, w}}, p.unit_tol);
}

// Newton refinement of w onto H(z, w) = 0 from a seed inside the basin.
template <class C>
C solve_on_curve(const Problem& p, const C& z, const C& w_seed) {
    C w = w_seed;
    double scale = std::max(1.0, mag(w_seed));
    double target = std::min(1e-13, 100.0 * FieldInfo<C>::eps);
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 50; ++it) {
        C h = eval_H(p, z, w);
        C hw = eval_Hw(p, z, w);
        if (mag(hw) <= p.unit_tol * std::max(1.0, mag(h)))
            fail(ErrorCode::NonSimple, "H_w vanished during Newton refinement onto H=0");
        double hm = mag(h), gate = std::max(1.0, mag(hw) * scale);
        if (hm <= target * gate) return w;
        if (hm <= 1e-13 * gate && hm > 0.5 * prev) return w; // stalled at the noise floor
        prev = hm;
        w = w - h / hw;
        scale = std::max(1.0, mag(w));
    }
    fail(ErrorCode::NoConvergence, "Newton onto H=0 did not converge within 50 iterations");
}

// Local parametrization w = g(z) of the zero set of H about (zeta_c, omega_c),
// with the partials of H at the center and an empirical convergence radius.
template <class C>
struct CriticalChart {
    Problem prob; // cheap AST handle bundle, copied so charts own their lifetime
    C zeta_c{}, omega_c{};
    Series1<C> g;      // in dz = z - zeta_c; g[0] = omega_c
    C Hz_c{}, Hw_c{};
    double radius_est = 0.0;
};

namespace detail {
// 1 / limsup |c_m|^{1/m} from the tail of the coefficient sequence
template <class C>
double radius_estimate(const Series1<C>& g) {
    double scale = std::max(1e-300, g.max_mag());
    double r = std::numeric_limits<double>::infinity();
    for (int m = g.order() / 2; m <= g.order(); ++m) {
        double a = mag(g[m]) / scale;
        if (a <= 1e-280) continue;
        r = std::min(r, std::pow(a, -1.0 / static_cast<double>(m)));
    }
    return r;
}
} // namespace detail

template <class C>
CriticalChart<C> chart(const Problem& p, const C& zeta_c, const C& omega_c, int order) {
    double hscale = std::max(1.0, mag(omega_c));
    C h0 = eval_H(p, zeta_c, omega_c);
    if (mag(h0) > 1e-10 * hscale)
        fail(ErrorCode::NoConvergence, "chart center does not lie on H=0");
    C hw = eval_Hw(p, zeta_c, omega_c);
    if (mag(hw) <= p.unit_tol * hscale)
        fail(ErrorCode::NonSimple, "H_w vanishes at the chart center");
    if (mag(zeta_c) <= p.unit_tol || mag(omega_c) <= p.unit_tol)
        fail(ErrorCode::DegenerateCenter, "strict minimality requires zeta_c * omega_c != 0");

    // series Newton for g: correct order doubles each iteration
    Series1<C> zs = Series1<C>::identity("dz", order);
    zs[0] = zeta_c;
    Series1<C> g = Series1<C>::constant("dz", order, omega_c);
    int iters = 2;
    for (int m = 1; m < order + 1; m *= 2) ++iters;
    std::map<std::string, Series1<C>> env{{p.zvar, zs}, {p.wvar, g}};
    for (int k = 0; k < iters; ++k) {
        env[p.wvar] = g;
        Series1<C> h = lift_expr(p.H, env, p.unit_tol);
        Series1<C> hws = lift_expr(p.Hw, env, p.unit_tol);
        g = g - div(h, hws, p.unit_tol);
    }

    // residual check: H(z, g(z)) must vanish through the chart order
    env[p.wvar] = g;
    Series1<C> res = lift_expr(p.H, env, p.unit_tol);
    double rscale = std::max(1.0, g.max_mag());
    if (res.max_mag() > 1e-11 * rscale)
        fail(ErrorCode::NoConvergence, "chart residual exceeds tolerance: " + std::to_string(res.max_mag()));

    CriticalChart<C> c;
    c.prob = p;
    c.zeta_c = zeta_c;
    c.omega_c = omega_c;
    c.g = std::move(g);
    c.Hz_c = eval_Hz(p, zeta_c, omega_c);
    c.Hw_c = hw;
    c.radius_est = detail::radius_estimate(c.g);
    return c;
}

template <class C>
void require_in_chart(const CriticalChart<C>& ch, const C& zeta) {
    if (mag(zeta - ch.zeta_c) > 0.5 * ch.radius_est)
        fail(ErrorCode::ChartRadiusExceeded,
             "zeta is outside half the chart's empirical radius (" + std::to_string(ch.radius_est) + ")");
}

// d = -zeta g'(zeta)/g(zeta), cross-checked against zeta H_z/(omega H_w)
template <class C>
C direction(const CriticalChart<C>& ch, const C& zeta) {
    require_in_chart(ch, zeta);
    C dz = zeta - ch.zeta_c;
    C gval = ch.g.eval(dz);
    C gder = differentiate(ch.g).eval(dz);
    C d1 = -(zeta * gder) / gval;

    C hz = eval_Hz(ch.prob, zeta, gval);
    C hw = eval_Hw(ch.prob, zeta, gval);
    C d2 = (zeta * hz) / (gval * hw);
    if (mag(d1 - d2) > 1e-9 * std::max(1.0, mag(d1)))
        fail(ErrorCode::CrossCheckFailed, "direction cross-check disagreement above 1e-9");
    return d1;
}

template <class C>
struct DirectionPoint {
    double lambda;
    C zeta, omega;
};

// zeta(lambda) on the continuation branch through zeta_c: damped Newton on
// d(zeta) = lambda seeded at the center.
template <class C>
DirectionPoint<C> solve_direction(const CriticalChart<C>& ch, double lambda) {
    if (!(lambda > 0.0)) fail(ErrorCode::OutOfCone, "direction ratio must be positive");
    Series1<C> gd = differentiate(ch.g);
    Series1<C> gdd = differentiate(gd);
    auto dirfun = [&](const C& zeta) {
        C dz = zeta - ch.zeta_c;
        return -(zeta * gd.eval(dz)) / ch.g.eval(dz);
    };
    auto dirder = [&](const C& zeta) {
        C dz = zeta - ch.zeta_c;
        C g = ch.g.eval(dz), g1 = gd.eval(dz), g2 = gdd.eval(dz);
        C t = g1 / g;
        return -t - zeta * g2 / g + zeta * t * t;
    };

    C lam = FieldInfo<C>::from_double(lambda);
    C zeta = ch.zeta_c;
    C f = dirfun(zeta) - lam;
    for (int it = 0; it < 50; ++it) {
        if (mag(f) <= 1e-11 * std::max(1.0, lambda)) {
            C omega = solve_on_curve(ch.prob, zeta, ch.g.eval(zeta - ch.zeta_c));
            return {lambda, zeta, omega};
        }
        C step = f / dirder(zeta);
        C znew = zeta - step;
        C fnew{};
        // halve the step while it overshoots
        int damp = 0;
        for (; damp < 40; ++damp) {
            if (mag(znew - ch.zeta_c) > 0.5 * ch.radius_est) {
                step = FieldInfo<C>::from_double(0.5) * step;
                znew = zeta - step;
                continue;
            }
            fnew = dirfun(znew) - lam;
            if (mag(fnew) <= mag(f)) break;
            step = FieldInfo<C>::from_double(0.5) * step;
            znew = zeta - step;
        }
        if (damp == 40)
            fail(ErrorCode::OutOfCone, "direction Newton left the chart for lambda=" + std::to_string(lambda));
        zeta = znew;
        f = fnew;
    }
    fail(ErrorCode::NoConvergence, "direction Newton did not converge for lambda=" + std::to_string(lambda));
}

struct MinimalityReport {
    bool ok = false;
    double margin = 0.0;     // min over the arc of |g(zeta e^{i theta})| - |g(zeta)|
    double torus_min = 0.0;  // min |H|/max|H| on the distinguished boundary, origin arc excluded
    double arc = 0.0;        // half-width of the probed arc
};

// Numerical probe of strict minimality: samples |g| on the chart-valid arc and
// |H| on the torus |z|=|zeta|, |w|=|omega|.  Report-only, never a proof.
template <class C>
MinimalityReport minimality_probe(const CriticalChart<C>& ch, const C& zeta, int gridM) {
    MinimalityReport rep;
    if (gridM < 16) gridM = 16;
    double slack = 0.45 * ch.radius_est - mag(zeta - ch.zeta_c);
    if (!(slack > 0.0)) return rep; // cannot validate any arc from this chart
    double s = std::min(1.0, slack / (2.0 * mag(zeta)));
    rep.arc = 2.0 * std::asin(s);

    C omega = solve_on_curve(ch.prob, zeta, ch.g.eval(zeta - ch.zeta_c));
    double base = mag(omega);
    double margin = std::numeric_limits<double>::infinity();
    for (int m = 1; m <= gridM; ++m) {
        double th = rep.arc * m / gridM;
        for (double sgn : {1.0, -1.0}) {
            C zt = zeta * FieldInfo<C>::from_parts(std::cos(sgn * th), std::sin(sgn * th));
            C seed = ch.g.eval(zt - ch.zeta_c);
            C w;
            try {
                w = solve_on_curve(ch.prob, zt, seed);
            } catch (const Error&) {
                return rep;
            }
            margin = std::min(margin, mag(w) - base);
        }
    }
    rep.margin = margin;

    // coarse |H| scan on the distinguished boundary, skipping the arc at the
    // singular point itself
    const int T = 24;
    double hmin = std::numeric_limits<double>::infinity(), hmax = 0.0;
    for (int i = -T / 2; i < T / 2; ++i)
        for (int j = -T / 2; j < T / 2; ++j) {
            double th = 2.0 * M_PI * i / T, ph = 2.0 * M_PI * j / T;
            if (std::fabs(th) < 1.5 * 2.0 * M_PI / T && std::fabs(ph) < 1.5 * 2.0 * M_PI / T) continue;
            C zt = zeta * FieldInfo<C>::from_parts(std::cos(th), std::sin(th));
            C wt = omega * FieldInfo<C>::from_parts(std::cos(ph), std::sin(ph));
            double h = mag(eval_H(ch.prob, zt, wt));
            hmin = std::min(hmin, h);
            hmax = std::max(hmax, h);
        }
    rep.torus_min = hmin / std::max(hmax, 1e-300);
    rep.ok = margin > 0.0 && rep.torus_min > 1e-9;
    return rep;
}

} // namespace bicoef
