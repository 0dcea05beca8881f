#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bicoef/derived.hpp"

#include <cmath>

using namespace bicoef;

namespace {
Problem delannoy_problem() { return Problem::make(parse("1"), parse("1-z-w-z*w")); }
Problem lagrange_problem() { return Problem::make(parse("1-2*z"), parse("1-w/(1-z)")); }

CriticalChart<Cx> make_ch(const Problem& p, double zc, double wseed, int order) {
    Cx omega = solve_on_curve(p, Cx(zc), Cx(wseed));
    return chart(p, Cx(zc), omega, order);
}
} // namespace

TEST_CASE("derived amplitude matches the closed forms") {
    Problem del = delannoy_problem();
    CriticalChart<Cx> ch = make_ch(del, std::sqrt(2.0) - 1.0, 0.4, 48);

    Series1<Cx> a = amplitude_at(del, ch, Cx(0.3), 16);
    CHECK(std::abs(a[0] - Cx(1.0 / 0.7)) < 1e-12);
    CHECK(std::abs(a[1] - Cx(0.0, 0.3 / 0.49)) < 1e-12);
    // full closed form a = 1/(1 - zeta e^{i theta}) coefficientwise
    for (int j = 0; j <= 12; ++j) {
        // [theta^j] 1/(1-z e^{it}) via the geometric/exponential double sum,
        // computed with an independent brute-force finite sum over k
        Cx want = 0.0;
        for (int k = 0; k <= 60; ++k) {
            double fact = 1.0;
            for (int m = 1; m <= j; ++m) fact *= m;
            Cx ik = std::pow(Cx(0, 1) * static_cast<double>(k), j);
            want += std::pow(Cx(0.3), k) * ik / fact;
        }
        CHECK(std::abs(a[j] - want) < 1e-11);
    }

    Problem lag = lagrange_problem();
    CriticalChart<Cx> cl = make_ch(lag, 0.5, 0.5, 48);
    Series1<Cx> al = amplitude_at(lag, cl, Cx(0.5), 16);
    CHECK(std::abs(al[0]) < 1e-13);
    CHECK(std::abs(al[1] - Cx(0.0, -1.0)) < 1e-12);

    Series1<Cx> al4 = amplitude_at(lag, cl, Cx(0.4), 16);
    CHECK(std::abs(al4[0] - 0.2) < 1e-12);
}

TEST_CASE("derived phase matches the closed forms and vanishes to order two") {
    Problem del = delannoy_problem();
    CriticalChart<Cx> ch = make_ch(del, std::sqrt(2.0) - 1.0, 0.4, 48);

    Series1<Cx> f = phase_at(ch, Cx(0.3), 16);
    CHECK(std::abs(f[0]) == 0.0);
    CHECK(std::abs(f[1]) == 0.0);
    double want2 = 0.3 * 1.09 / (0.91 * 0.91);
    CHECK(std::abs(f[2] - want2) < 1e-12);
    // cubic term zeta(1+6 zeta^2+zeta^4)/(3 (1-zeta^2)^3), imaginary
    double z = 0.3;
    double want3 = z * (1 + 6 * z * z + z * z * z * z) / (3 * std::pow(1 - z * z, 3));
    CHECK(std::abs(f[3] - Cx(0.0, want3)) < 1e-12);

    Problem lag = lagrange_problem();
    CriticalChart<Cx> cl = make_ch(lag, 0.5, 0.5, 48);
    Series1<Cx> fl = phase_at(cl, Cx(0.5), 16);
    CHECK(std::abs(fl[2] - 1.0) < 1e-12);

    // Re f > 0 on the punctured arc (sampled)
    for (double th : {-0.4, -0.1, -0.01, 0.01, 0.1, 0.4}) {
        CHECK(f.eval(Cx(th)).real() > 0.0);
        CHECK(fl.eval(Cx(th)).real() > 0.0);
    }
}

TEST_CASE("degree classification") {
    Problem del = delannoy_problem();
    CriticalChart<Cx> ch = make_ch(del, std::sqrt(2.0) - 1.0, 0.4, 48);
    DerivedPair<Cx> dp = degrees(del, ch, 12, 24);
    CHECK(dp.p == 0);
    CHECK(dp.q == 0);
    CHECK(dp.n == 2);
    CHECK(dp.re_check > 0.0);

    Problem lag = lagrange_problem();
    CriticalChart<Cx> cl = make_ch(lag, 0.5, 0.5, 48);
    DerivedPair<Cx> lp = degrees(lag, cl, 12, 24);
    CHECK(lp.p == 0);
    CHECK(lp.q == 1);
    CHECK(lp.n == 2);
    CHECK(std::abs(lp.u_c - 1.0) < 1e-12);

    // [theta^0] a2 = 1 - 2 zeta = -2 delta exactly
    Series1<Cx> row0 = lp.a2.slice_second(0);
    CHECK(std::abs(row0[0]) < 1e-12);
    CHECK(std::abs(row0[1] + 2.0) < 1e-12);
    for (int i = 2; i <= row0.order(); ++i) CHECK(std::abs(row0[i]) < 1e-10);

    Problem simple = Problem::make(parse("1"), parse("1-z-w"));
    Cx omega = solve_on_curve(simple, Cx(0.5), Cx(0.4));
    CriticalChart<Cx> cs = chart(simple, Cx(0.5), omega, 48);
    DerivedPair<Cx> sp = degrees(simple, cs, 12, 24);
    CHECK(sp.p == 0);
    CHECK(sp.q == 0);
    CHECK(sp.n == 2);

    CHECK_THROWS_AS((void)degrees(del, ch, 4, 4), Error);
    try {
        (void)degrees(del, make_ch(del, std::sqrt(2.0) - 1.0, 0.4, 10), 4, 4);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OrderTooSmall);
    }
}

TEST_CASE("grid slices agree with the pointwise series") {
    Problem lag = lagrange_problem();
    CriticalChart<Cx> cl = make_ch(lag, 0.5, 0.5, 64);
    DerivedPair<Cx> lp = degrees(lag, cl, 14, 20);

    for (double d : {-0.05, -0.02, 0.01, 0.04}) {
        Cx zeta(0.5 + d);
        Series1<Cx> a = amplitude_at(lag, cl, zeta, 20);
        Series1<Cx> f = phase_at(cl, zeta, 20);
        double ascale = std::max(1.0, a.max_mag());
        double fscale = std::max(1.0, f.max_mag());
        for (int j = 0; j <= 16; ++j) {
            Cx aval = lp.a2.slice_second(j).eval(Cx(d));
            Cx fval = lp.f2.slice_second(j).eval(Cx(d));
            CHECK(std::abs(aval - a[j]) <= 1e-9 * ascale);
            CHECK(std::abs(fval - f[j]) <= 1e-9 * fscale);
        }
    }
}

TEST_CASE("degrees in extended precision") {
    Problem lag = lagrange_problem();
    CDD zc(DD(0.5));
    CDD omega = solve_on_curve(lag, zc, CDD(DD(0.5)));
    CriticalChart<CDD> cl = chart(lag, zc, omega, 40);
    DerivedPair<CDD> lp = degrees(lag, cl, 10, 18);
    CHECK(lp.p == 0);
    CHECK(lp.q == 1);
    CHECK(lp.n == 2);
    CHECK(mag(lp.u_c - CDD(1.0)) < 1e-25);
}
