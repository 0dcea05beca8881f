#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bicoef/series.hpp"

#include <random>

using namespace bicoef;

namespace {

using S1 = Series1<Cx>;

S1 make(std::initializer_list<Cx> cs) { return S1("t", std::vector<Cx>(cs)); }

std::mt19937_64 rng(20260811);

Cx rand_cx(double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    return {u(rng), u(rng)};
}

// Coefficients decay geometrically so the drawn series keeps its zeros and
// critical points away from the expansion disk; the stated roundoff bounds
// are about arithmetic error, not about series with singularities at the
// origin's doorstep.
S1 random_series(int order, bool unit_constant, bool zero_constant) {
    S1 s("t", order);
    double decay = 1.0;
    for (int j = 0; j <= order; ++j) {
        if (j >= 1) decay *= 0.1;
        s[j] = decay * rand_cx();
    }
    if (unit_constant)
        while (std::abs(s[0]) <= 0.1) s[0] = rand_cx(-2.0, 2.0);
    if (zero_constant) {
        s[0] = 0.0;
        while (std::abs(s[1]) <= 0.5) s[1] = rand_cx(-2.0, 2.0);
    }
    return s;
}

double coeff_dist(const S1& a, const S1& b) {
    double m = 0.0;
    for (int j = 0; j <= std::min(a.order(), b.order()); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

} // namespace

TEST_CASE("arith basics") {
    S1 one_plus = make({1, 1});
    S1 one_minus = make({1, -1});
    S1 p = one_plus.with_order(4) * one_minus.with_order(4);
    CHECK(p[0] == Cx(1.0));
    CHECK(p[1] == Cx(0.0));
    CHECK(p[2] == Cx(-1.0));

    // geometric series
    S1 one = S1::constant("t", 6, 1.0);
    S1 g = one / make({1, -1}).with_order(6);
    for (int j = 0; j <= 6; ++j) CHECK(std::abs(g[j] - 1.0) < 1e-14);

    CHECK_THROWS_AS((void)div(one, S1("t", 6)), Error);
    try {
        (void)div(one, S1("t", 6));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DivisionByNonUnit);
    }

    // division then multiplication round-trips the numerator
    for (int rep = 0; rep < 50; ++rep) {
        S1 a = random_series(12, false, false);
        S1 b = random_series(12, true, false);
        S1 q = a / b;
        CHECK(coeff_dist(q * b, a) <= 1e-12 * std::max(1.0, a.max_mag()) * std::max(1.0, b.max_mag()));
    }
}

TEST_CASE("bivariate division reproduces the Delannoy grid") {
    // exact lattice-path recursion as the independent oracle
    auto del = [](int r, int s) {
        std::vector<std::vector<long>> f(r + 1, std::vector<long>(s + 1, 0));
        for (int i = 0; i <= r; ++i)
            for (int j = 0; j <= s; ++j) {
                if (i == 0 || j == 0) { f[i][j] = 1; continue; }
                f[i][j] = f[i - 1][j] + f[i - 1][j - 1] + f[i][j - 1];
            }
        return f[r][s];
    };

    Series2<Cx> h("z", "w", 4, 4);
    h.at(0, 0) = 1.0;
    h.at(1, 0) = -1.0;
    h.at(0, 1) = -1.0;
    h.at(1, 1) = -1.0;
    Series2<Cx> f = Series2<Cx>::constant("z", "w", 4, 4, 1.0) / h;
    CHECK(std::abs(f.coeff(1, 1) - 3.0) < 1e-13);
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j)
            CHECK(std::abs(f.at(i, j) - Cx(static_cast<double>(del(i, j)))) < 1e-11);

    CHECK_THROWS_AS((void)f.coeff(5, 0), Error);
}

TEST_CASE("compose") {
    S1 outer = make({1, 1, 1});
    S1 inner = make({0, 1, 1}).with_order(4);
    S1 r = compose(outer.with_order(4), inner);
    CHECK(std::abs(r[0] - 1.0) < 1e-15);
    CHECK(std::abs(r[1] - 1.0) < 1e-15);
    CHECK(std::abs(r[2] - 2.0) < 1e-15);

    // e^{i t}: coefficients i^k / k!
    int n = 8;
    S1 es("t", n);
    double fact = 1.0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) fact *= k;
        es[k] = Cx(1.0 / fact);
    }
    S1 it("t", n);
    it[1] = Cx(0.0, 1.0);
    S1 eit = compose(es, it);
    Cx ik(1.0, 0.0);
    fact = 1.0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) fact *= k;
        CHECK(std::abs(eit[k] - ik / fact) < 1e-14);
        ik *= Cx(0.0, 1.0);
    }

    CHECK_THROWS_AS((void)compose(outer, make({1, 1}).with_order(3)), Error);
}

TEST_CASE("revert") {
    S1 id = S1::identity("t", 8);
    CHECK(coeff_dist(revert(id), id) < 1e-15);

    S1 s = make({0, 1, 1}).with_order(8);
    S1 t = revert(s);
    // classic alternating reversion coefficients, verified by composition
    CHECK(std::abs(t[1] - 1.0) < 1e-12);
    CHECK(std::abs(t[2] + 1.0) < 1e-12);
    CHECK(std::abs(t[3] - 2.0) < 1e-12);
    CHECK(std::abs(t[4] + 5.0) < 1e-12);
    CHECK(coeff_dist(compose(t, s), id) < 1e-12);

    S1 two = make({0, 2}).with_order(5);
    S1 half = revert(two);
    CHECK(std::abs(half[1] - 0.5) < 1e-15);

    // spec round-trip example
    S1 f = make({0, 1, 0.3, -0.1}).with_order(9);
    CHECK(coeff_dist(compose(revert(f), f), S1::identity("t", 9)) < 1e-12);

    CHECK_THROWS_AS((void)revert(make({1, 1})), Error);
    CHECK_THROWS_AS((void)revert(make({0, 0, 1})), Error);

    for (int rep = 0; rep < 50; ++rep) {
        S1 a = random_series(10, false, true);
        double scale = std::max(1.0, a.max_mag());
        CHECK(coeff_dist(compose(revert(a), a), S1::identity("t", 10)) <= 1e-10 * scale);
    }
}

TEST_CASE("log and exp") {
    S1 lp = log(make({1, 1}).with_order(6));
    for (int j = 1; j <= 6; ++j)
        CHECK(std::abs(lp[j] - Cx(((j % 2) ? 1.0 : -1.0) / j)) < 1e-14);

    S1 rt = exp(log(make({1, 1}).with_order(6)));
    CHECK(std::abs(rt[0] - 1.0) < 1e-14);
    CHECK(std::abs(rt[1] - 1.0) < 1e-14);
    for (int j = 2; j <= 6; ++j) CHECK(std::abs(rt[j]) < 1e-14);

    CHECK_THROWS_AS((void)log(S1("t", 4)), Error);

    for (int rep = 0; rep < 200; ++rep) {
        S1 s = random_series(12, true, false);
        CHECK(coeff_dist(exp(log(s)), s) <= 1e-12 * s.max_mag());
    }
}

TEST_CASE("nth_root") {
    S1 sq = nth_root(make({1, 1}).with_order(6), 2, Branch<Cx>::principal());
    CHECK(std::abs(sq[0] - 1.0) < 1e-14);
    CHECK(std::abs(sq[1] - 0.5) < 1e-14);
    CHECK(std::abs(sq[2] + 0.125) < 1e-14);

    S1 eight = S1::constant("t", 3, 8.0);
    CHECK(std::abs(nth_root(eight, 3, Branch<Cx>::principal())[0] - 2.0) < 1e-13);

    // square then root with the nearest branch returns the original series
    S1 t = make({1, Cx(0, 1)}).with_order(8);
    S1 back = nth_root(t * t, 2, Branch<Cx>::nearest(t[0]));
    CHECK(coeff_dist(back, t) < 1e-13);

    CHECK_THROWS_AS((void)nth_root(S1("t", 3), 2, Branch<Cx>::principal()), Error);
    try {
        // target equidistant from both square roots of 4
        (void)nth_root(S1::constant("t", 2, 4.0), 2, Branch<Cx>::nearest(Cx(0.0, 1.0)));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::AmbiguousBranch);
    }

    for (int rep = 0; rep < 100; ++rep) {
        long n = 2 + static_cast<long>(rep % 7);
        S1 s = random_series(10, true, false);
        S1 r = nth_root(s, n, Branch<Cx>::principal());
        CHECK(coeff_dist(pow_int(r, n), s) <= 1e-10 * std::max(1.0, s.max_mag()));
    }
}

TEST_CASE("calculus") {
    S1 i1 = integrate(make({1, 1}));
    CHECK(std::abs(i1[0]) == 0.0);
    CHECK(std::abs(i1[1] - 1.0) < 1e-15);
    CHECK(std::abs(i1[2] - 0.5) < 1e-15);

    S1 cube("t", 3);
    cube[3] = 1.0;
    S1 d = differentiate(cube);
    CHECK(d.order() == 2);
    CHECK(std::abs(d[2] - 3.0) < 1e-15);
}

TEST_CASE("extract") {
    S1 g = S1::constant("t", 5, 1.0) / make({1, -1}).with_order(5);
    CHECK(std::abs(g.coeff(2) - 1.0) < 1e-14);
    CHECK(std::abs(make({1, 1}).eval(Cx(0.5)) - 1.5) < 1e-15);
    CHECK_THROWS_AS((void)g.coeff(9), Error);
}

TEST_CASE("extended precision instantiation") {
    using SD = Series1<CDD>;
    SD s("t", 10);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int j = 0; j <= 10; ++j) s[j] = CDD(DD(u(rng)), DD(u(rng)));
    s[0] = CDD(1.25);
    SD r = exp(log(s));
    double m = 0.0;
    for (int j = 0; j <= 10; ++j) m = std::max(m, mag(r[j] - s[j]));
    CHECK(m <= 1e-25 * s.max_mag());

    SD q = div(s, s);
    CHECK(mag(q[0] - CDD(1.0)) < 1e-30);
    for (int j = 1; j <= 10; ++j) CHECK(mag(q[j]) < 1e-28);
}

TEST_CASE("bivariate exp/log/sqrt") {
    Series2<Cx> s("u", "v", 5, 5);
    s.at(0, 0) = 1.5;
    s.at(1, 0) = 0.3;
    s.at(0, 1) = Cx(0.1, -0.2);
    s.at(1, 1) = -0.25;
    s.at(2, 1) = 0.05;

    Series2<Cx> l = log(exp(s));
    double m = 0.0;
    for (int i = 0; i <= 5; ++i)
        for (int j = 0; j <= 5; ++j) m = std::max(m, std::abs(l.at(i, j) - s.at(i, j)));
    CHECK(m < 1e-13);

    Series2<Cx> r = sqrt(s);
    Series2<Cx> back = r * r - s;
    CHECK(back.max_mag() < 1e-13);
}
