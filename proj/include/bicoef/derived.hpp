#pragma once

#include "bicoef/geometry.hpp"

namespace bicoef {

namespace detail {

// zeta * (e^{i theta} - 1) as a series in theta
template <class C>
Series1<C> circle_inner(const C& zeta, int order) {
    Series1<C> s("theta", order);
    C term = FieldInfo<C>::from_double(1.0);
    C i = imag_unit<C>();
    for (int k = 1; k <= order; ++k) {
        term = term * i / FieldInfo<C>::from_double(static_cast<double>(k));
        s[k] = zeta * term;
    }
    return s;
}

// (zeta_c + delta) e^{i theta} - zeta_c on the (delta, theta) grid
template <class C>
Series2<C> circle_inner2(const C& zeta_c, int nd, int nt) {
    Series2<C> s("delta", "theta", nd, nt);
    C term = FieldInfo<C>::from_double(1.0);
    C i = imag_unit<C>();
    if (nd >= 1) s.at(1, 0) = term;
    for (int k = 1; k <= nt; ++k) {
        term = term * i / FieldInfo<C>::from_double(static_cast<double>(k));
        s.at(0, k) = zeta_c * term;
        if (nd >= 1) s.at(1, k) = term;
    }
    return s;
}

// re-center the chart at zeta so theta-expansions carry no delta spill
template <class C>
CriticalChart<C> local_chart(const CriticalChart<C>& ch, const C& zeta, int order) {
    require_in_chart(ch, zeta);
    if (mag(zeta - ch.zeta_c) <= 1e-15 * std::max(1.0, mag(ch.zeta_c)))
        return chart(ch.prob, ch.zeta_c, ch.omega_c, order);
    C omega = solve_on_curve(ch.prob, zeta, ch.g.eval(zeta - ch.zeta_c));
    return chart(ch.prob, zeta, omega, order);
}

} // namespace detail

// a(zeta, theta) = -G(z, g(z)) / (g(z) H_w(z, g(z))) on z = zeta e^{i theta}
template <class C>
Series1<C> amplitude_at(const Problem& p, const CriticalChart<C>& ch, const C& zeta, int order) {
    CriticalChart<C> lc = detail::local_chart(ch, zeta, order + 2);
    Series1<C> inner = detail::circle_inner(zeta, order);
    Series1<C> gs = compose(lc.g, inner, p.unit_tol);
    Series1<C> zs = inner;
    zs[0] = zeta;
    std::map<std::string, Series1<C>> env{{p.zvar, zs}, {p.wvar, gs}};
    Series1<C> gexp = lift_expr(p.G, env, p.unit_tol);
    Series1<C> hw = lift_expr(p.Hw, env, p.unit_tol);
    return -div(gexp, gs * hw, p.unit_tol);
}

// f(zeta, theta) = ln(g(zeta e^{i theta})/g(zeta)) - i theta zeta g'(zeta)/g(zeta);
// the constant and linear coefficients vanish identically and are pinned to 0.
template <class C>
Series1<C> phase_at(const CriticalChart<C>& ch, const C& zeta, int order) {
    const Problem& p = ch.prob;
    CriticalChart<C> lc = detail::local_chart(ch, zeta, order + 2);
    Series1<C> inner = detail::circle_inner(zeta, order);
    Series1<C> gs = compose(lc.g, inner, p.unit_tol);
    C gval = lc.g[0];
    C gder = lc.g[1];
    Series1<C> ratio = (FieldInfo<C>::from_double(1.0) / gval) * gs;
    Series1<C> f = log(ratio, p.unit_tol);
    C c = zeta * gder / gval;
    C i = imag_unit<C>();
    if (order >= 1) f[1] = f[1] - i * c;

    double scale = std::max(1e-300, f.max_mag());
    if (mag(f[0]) > 1e-9 * scale || (order >= 1 && mag(f[1]) > 1e-9 * scale))
        fail(ErrorCode::PhaseLinearTermNonzero,
             "phase series does not vanish to second order at theta=0");
    f[0] = C{};
    if (order >= 1) f[1] = C{};
    return f;
}

// Degree data of the derived pair at the center: a2/f2 on the (delta, theta)
// grid, the amplitude change of degree p -> q, and the constant phase degree n.
template <class C>
struct DerivedPair {
    Series2<C> a2, f2;
    int p = 0, q = 0, n = 0;
    C u_c{};          // [theta^n] f at delta = 0
    double re_check = 0.0; // Re u (n even) or Re(i u) (n odd)
};

template <class C>
DerivedPair<C> degrees(const Problem& p, const CriticalChart<C>& ch, int delta_order,
                       int theta_order, double ident_tol = 1e-9) {
    if (ch.g.order() < delta_order + theta_order)
        fail(ErrorCode::OrderTooSmall, "chart order too small for the requested (delta, theta) grid");

    Series2<C> inner = detail::circle_inner2(ch.zeta_c, delta_order, theta_order);
    Series2<C> gs = compose2(ch.g, inner, p.unit_tol);
    Series2<C> zs = inner;
    zs.at(0, 0) = ch.zeta_c;

    std::map<std::string, Series2<C>> env{{p.zvar, zs}, {p.wvar, gs}};
    Series2<C> gexp = lift_expr(p.G, env, p.unit_tol);
    Series2<C> hw = lift_expr(p.Hw, env, p.unit_tol);

    DerivedPair<C> out;
    out.a2 = -div(gexp, gs * hw, p.unit_tol);

    // g and zeta g'/g as functions of delta alone
    Series1<C> gdelta = ch.g.with_order(delta_order);
    gdelta.set_var("delta");
    Series1<C> gder = differentiate(ch.g).with_order(delta_order);
    gder.set_var("delta");
    Series1<C> zdelta = Series1<C>::identity("delta", delta_order);
    zdelta[0] = ch.zeta_c;
    Series1<C> cdelta = div(zdelta * gder, gdelta, p.unit_tol);

    Series2<C> ratio = div(gs, Series2<C>::from_first(gdelta, "theta", theta_order), p.unit_tol);
    Series2<C> f2 = log(ratio, p.unit_tol);
    Series2<C> itheta("delta", "theta", delta_order, theta_order);
    itheta.at(0, 1) = imag_unit<C>();
    f2 = f2 - itheta * Series2<C>::from_first(cdelta, "theta", theta_order);

    double fscale = std::max(1e-300, f2.max_mag());
    for (int i = 0; i <= delta_order; ++i)
        for (int j = 0; j <= 1; ++j) {
            if (mag(f2.at(i, j)) > 1e-9 * fscale)
                fail(ErrorCode::PhaseLinearTermNonzero,
                     "phase grid has nonvanishing constant/linear theta coefficients");
            f2.at(i, j) = C{};
        }
    out.f2 = std::move(f2);

    double ascale = std::max(1e-300, out.a2.max_mag());
    auto row_zero = [&](const Series2<C>& s, int j, double scale) {
        for (int i = 0; i <= s.order1(); ++i)
            if (mag(s.at(i, j)) > ident_tol * scale) return false;
        return true;
    };

    // p: least theta-degree whose delta-coefficient function is not identically 0
    int pdeg = -1;
    for (int j = 0; j <= theta_order; ++j)
        if (!row_zero(out.a2, j, ascale)) { pdeg = j; break; }
    if (pdeg < 0) fail(ErrorCode::AmplitudeIdenticallyZero, "derived amplitude vanishes identically");

    // q: least j >= p with a nonzero value at delta = 0
    int qdeg = -1;
    for (int j = pdeg; j <= theta_order; ++j)
        if (mag(out.a2.at(0, j)) > ident_tol * ascale) { qdeg = j; break; }
    if (qdeg < 0 || qdeg >= theta_order - 2)
        fail(ErrorCode::OrderTooSmall, "amplitude degree q not interior to the theta order");

    // n: least j >= 2 with nonzero phase coefficient at delta = 0
    fscale = std::max(1e-300, out.f2.max_mag());
    int ndeg = -1;
    for (int j = 2; j <= theta_order; ++j)
        if (mag(out.f2.at(0, j)) > ident_tol * fscale) { ndeg = j; break; }
    if (ndeg < 0 || ndeg >= theta_order - 2)
        fail(ErrorCode::OrderTooSmall, "phase degree n not interior to the theta order");
    for (int j = 2; j < ndeg; ++j)
        if (!row_zero(out.f2, j, fscale))
            fail(ErrorCode::PhaseDegreeChange,
                 "phase changes vanishing degree as zeta varies; the coalescing-phase case is unsupported");

    out.p = pdeg;
    out.q = qdeg;
    out.n = ndeg;
    out.u_c = out.f2.at(0, ndeg);
    out.re_check = (ndeg % 2 == 0) ? to_real_part(out.u_c)
                                   : to_real_part(imag_unit<C>() * out.u_c);
    return out;
}

} // namespace bicoef
