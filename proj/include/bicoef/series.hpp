#pragma once

#include "bicoef/error.hpp"
#include "bicoef/field.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace bicoef {

inline constexpr double kUnitTol = 1e-12; // "nonzero constant term" threshold, relative

// Branch selection for n-th roots: the principal root of the constant term,
// or the candidate closest to a caller-supplied target.
template <class C>
struct Branch {
    enum class Mode { principal, nearest };
    Mode mode = Mode::principal;
    C target{};

    static Branch principal() { return {}; }
    static Branch nearest(const C& t) {
        if (exactly_zero(t)) fail(ErrorCode::AmbiguousBranch, "nearest-branch target must be nonzero");
        Branch b;
        b.mode = Mode::nearest;
        b.target = t;
        return b;
    }
};

// ---------------------------------------------------------------------------
// Series1: truncated Taylor series in one variable, coefficients 0..order.
// All binary operations truncate to the minimum order of the operands; values
// are immutable in practice (ops return new series).
// ---------------------------------------------------------------------------
template <class C>
class Series1 {
public:
    Series1() : var_("x"), c_(1) {}
    Series1(std::string var, int order) : var_(std::move(var)), c_(static_cast<size_t>(order) + 1) {}
    Series1(std::string var, std::vector<C> coeffs) : var_(std::move(var)), c_(std::move(coeffs)) {
        if (c_.empty()) c_.resize(1);
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const std::string& var() const { return var_; }
    void set_var(std::string v) { var_ = std::move(v); }

    const C& operator[](int j) const { return c_[static_cast<size_t>(j)]; }
    C& operator[](int j) { return c_[static_cast<size_t>(j)]; }

    // [x^j], throwing when j exceeds the truncation order
    const C& coeff(int j) const {
        if (j < 0 || j > order())
            fail(ErrorCode::IndexOutOfOrder,
                 "coefficient " + std::to_string(j) + " of a series of order " + std::to_string(order()));
        return c_[static_cast<size_t>(j)];
    }

    C eval(const C& x) const {
        C r = c_.back();
        for (int j = order() - 1; j >= 0; --j) r = r * x + c_[static_cast<size_t>(j)];
        return r;
    }

    double max_mag() const {
        double m = 0.0;
        for (const auto& v : c_) m = std::max(m, mag(v));
        return m;
    }

    // order change: truncate or zero-extend
    Series1 with_order(int n) const {
        Series1 r(var_, n);
        int m = std::min(n, order());
        for (int j = 0; j <= m; ++j) r[j] = c_[static_cast<size_t>(j)];
        return r;
    }

    // drop the m lowest coefficients (divide by x^m); caller checks they vanish
    Series1 stripped(int m) const {
        int n = std::max(0, order() - m);
        Series1 r(var_, n);
        for (int j = 0; j <= n; ++j)
            if (j + m <= order()) r[j] = c_[static_cast<size_t>(j + m)];
        return r;
    }

    // multiply by x^m, truncating at the same order
    Series1 shifted_up(int m) const {
        Series1 r(var_, order());
        for (int j = m; j <= order(); ++j) r[j] = c_[static_cast<size_t>(j - m)];
        return r;
    }

    static Series1 constant(std::string var, int order, const C& v) {
        Series1 r(std::move(var), order);
        r[0] = v;
        return r;
    }
    static Series1 identity(std::string var, int order) {
        Series1 r(std::move(var), order);
        if (order >= 1) r[1] = FieldInfo<C>::from_double(1.0);
        return r;
    }

private:
    std::string var_;
    std::vector<C> c_;
};

template <class C>
Series1<C> operator+(const Series1<C>& a, const Series1<C>& b) {
    int n = std::min(a.order(), b.order());
    Series1<C> r(a.var(), n);
    for (int j = 0; j <= n; ++j) r[j] = a[j] + b[j];
    return r;
}

template <class C>
Series1<C> operator-(const Series1<C>& a, const Series1<C>& b) {
    int n = std::min(a.order(), b.order());
    Series1<C> r(a.var(), n);
    for (int j = 0; j <= n; ++j) r[j] = a[j] - b[j];
    return r;
}

template <class C>
Series1<C> operator-(const Series1<C>& a) {
    Series1<C> r(a.var(), a.order());
    for (int j = 0; j <= a.order(); ++j) r[j] = -a[j];
    return r;
}

template <class C>
Series1<C> operator*(const Series1<C>& a, const Series1<C>& b) {
    int n = std::min(a.order(), b.order());
    Series1<C> r(a.var(), n);
    for (int i = 0; i <= std::min(a.order(), n); ++i) {
        if (exactly_zero(a[i])) continue;
        for (int j = 0; i + j <= n && j <= b.order(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

template <class C>
Series1<C> operator*(const C& s, const Series1<C>& a) {
    Series1<C> r(a.var(), a.order());
    for (int j = 0; j <= a.order(); ++j) r[j] = s * a[j];
    return r;
}

template <class C>
Series1<C> div(const Series1<C>& a, const Series1<C>& b, double tol = kUnitTol) {
    if (near_zero(b[0], tol, b.max_mag()))
        fail(ErrorCode::DivisionByNonUnit, "series division by vanishing constant term");
    int n = std::min(a.order(), b.order());
    Series1<C> r(a.var(), n);
    for (int j = 0; j <= n; ++j) {
        C acc = a[j];
        for (int i = 0; i < j; ++i) {
            if (exactly_zero(r[i])) continue;
            acc = acc - r[i] * b[j - i];
        }
        r[j] = acc / b[0];
    }
    return r;
}

template <class C>
Series1<C> operator/(const Series1<C>& a, const Series1<C>& b) { return div(a, b); }

namespace detail {
// plain Horner evaluation of the truncated polynomial `outer` at `inner`
template <class C>
Series1<C> horner1(const Series1<C>& outer, const Series1<C>& inner) {
    Series1<C> r = Series1<C>::constant(inner.var(), inner.order(), outer[outer.order()]);
    for (int k = outer.order() - 1; k >= 0; --k) {
        r = r * inner;
        r[0] += outer[k];
    }
    return r;
}
}

// Taylor coefficients of outer(inner(x)) to truncation order; requires
// inner(0) = 0 so that the result is order-correct.
template <class C>
Series1<C> compose(const Series1<C>& outer, const Series1<C>& inner, double tol = kUnitTol) {
    if (!near_zero(inner[0], tol, std::max(1.0, inner.max_mag())))
        fail(ErrorCode::NonZeroConstant, "compose requires inner series with zero constant term");
    Series1<C> in = inner;
    in[0] = C{};
    return detail::horner1(outer, in);
}

// Horner evaluation without the zero-constant requirement.  Exact for the
// truncated polynomial; the caller owns the truncation-error model (used for
// re-centering charts inside their disk of convergence).
template <class C>
Series1<C> eval_poly(const Series1<C>& outer, const Series1<C>& inner) {
    return detail::horner1(outer, inner);
}

template <class C>
Series1<C> differentiate(const Series1<C>& s) {
    int n = std::max(0, s.order() - 1);
    Series1<C> r(s.var(), n);
    for (int j = 0; j + 1 <= s.order(); ++j)
        r[j] = FieldInfo<C>::from_double(static_cast<double>(j + 1)) * s[j + 1];
    return r;
}

template <class C>
Series1<C> integrate(const Series1<C>& s) {
    Series1<C> r(s.var(), s.order() + 1);
    for (int j = 0; j <= s.order(); ++j)
        r[j + 1] = s[j] / FieldInfo<C>::from_double(static_cast<double>(j + 1));
    return r;
}

// functional inverse: T with compose(T, S) = identity, requires S(0)=0, S'(0)!=0
template <class C>
Series1<C> revert(const Series1<C>& s, double tol = kUnitTol) {
    double scale = std::max(1.0, s.max_mag());
    if (!near_zero(s[0], tol, scale))
        fail(ErrorCode::NotInvertible, "revert requires zero constant term");
    if (s.order() < 1 || near_zero(s[1], tol, scale))
        fail(ErrorCode::NotInvertible, "revert requires nonzero linear coefficient");

    int n = s.order();
    Series1<C> sd = differentiate(s).with_order(n);
    Series1<C> id = Series1<C>::identity(s.var(), n);
    Series1<C> t(s.var(), n);
    t[1] = FieldInfo<C>::from_double(1.0) / s[1];

    int iters = 2;
    for (int m = 1; m < n + 1; m *= 2) ++iters; // Newton doubles the valid order
    for (int k = 0; k < iters; ++k) {
        Series1<C> f = compose(s.with_order(n), t) - id;
        Series1<C> fp = compose(sd, t);
        t = t - div(f, fp, tol);
        t[0] = C{};
    }
    return t;
}

// log of a unit series (principal branch at the constant term)
template <class C>
Series1<C> log(const Series1<C>& s, double tol = kUnitTol) {
    if constexpr (FieldInfo<C>::is_exact) {
        fail(ErrorCode::UnsupportedExact, "log over the exact rational field");
    } else {
        if (near_zero(s[0], tol, s.max_mag()))
            fail(ErrorCode::LogOfZero, "series log requires nonzero constant term");
        using std::log;
        Series1<C> r = integrate(div(differentiate(s), s.with_order(std::max(0, s.order() - 1)), tol))
                           .with_order(s.order());
        r[0] = log(s[0]);
        return r;
    }
}

template <class C>
Series1<C> exp(const Series1<C>& s) {
    if constexpr (FieldInfo<C>::is_exact) {
        fail(ErrorCode::UnsupportedExact, "exp over the exact rational field");
    } else {
        using std::exp;
        int n = s.order();
        Series1<C> r(s.var(), n);
        r[0] = FieldInfo<C>::from_double(1.0);
        // E' = E * (s - s0)'  =>  m e_m = sum_{j=1}^m j s_j e_{m-j}
        for (int m = 1; m <= n; ++m) {
            C acc{};
            for (int j = 1; j <= m; ++j)
                acc += FieldInfo<C>::from_double(static_cast<double>(j)) * s[j] * r[m - j];
            r[m] = acc / FieldInfo<C>::from_double(static_cast<double>(m));
        }
        C e0 = exp(s[0]);
        for (int j = 0; j <= n; ++j) r[j] = e0 * r[j];
        return r;
    }
}

// k-th of the n candidate n-th roots of z (principal rotated by e^{2 pi i k/n})
template <class C>
C root_candidate(const C& z, long n, long k) {
    using std::exp; using std::log;
    C r = exp(log(z) / FieldInfo<C>::from_double(static_cast<double>(n)));
    if (k == 0) return r;
    if constexpr (std::is_same_v<C, CDD>) {
        DD ang = ddc::two_pi * DD(static_cast<double>(k)) / DD(static_cast<double>(n));
        DD sn, cs;
        sincos(ang, sn, cs);
        return r * CDD(cs, sn);
    } else {
        double ang = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
        return r * FieldInfo<C>::from_parts(std::cos(ang), std::sin(ang));
    }
}

template <class C>
C scalar_nth_root(const C& z, long n, const Branch<C>& branch) {
    if (exactly_zero(z)) fail(ErrorCode::RootOfZero, "n-th root of zero");
    if (branch.mode == Branch<C>::Mode::principal) return root_candidate(z, n, 0);
    C best{};
    double d_best = -1.0, d_second = -1.0;
    for (long k = 0; k < n; ++k) {
        C cand = root_candidate(z, n, k);
        double d = mag(cand - branch.target);
        if (d_best < 0.0 || d < d_best) {
            d_second = d_best;
            d_best = d;
            best = cand;
        } else if (d_second < 0.0 || d < d_second) {
            d_second = d;
        }
    }
    if (n > 1 && d_second >= 0.0 && d_second - d_best <= 1e-6 * mag(best))
        fail(ErrorCode::AmbiguousBranch, "two n-th root candidates equidistant from target");
    return best;
}

// T with T^n = S; the constant term is the branch-selected root of S(0)
template <class C>
Series1<C> nth_root(const Series1<C>& s, long n, const Branch<C>& branch, double tol = kUnitTol) {
    if (near_zero(s[0], tol, s.max_mag()))
        fail(ErrorCode::RootOfZero, "series n-th root requires nonzero constant term");
    C r0 = scalar_nth_root(s[0], n, branch);
    Series1<C> unit(s.var(), s.order());
    for (int j = 0; j <= s.order(); ++j) unit[j] = s[j] / s[0];
    Series1<C> lg = log(unit, tol);
    lg[0] = C{}; // log(1) exactly
    for (int j = 0; j <= lg.order(); ++j) lg[j] = lg[j] / FieldInfo<C>::from_double(static_cast<double>(n));
    Series1<C> r = exp(lg);
    for (int j = 0; j <= r.order(); ++j) r[j] = r0 * r[j];
    return r;
}

template <class C>
Series1<C> pow_int(const Series1<C>& s, long e, double tol = kUnitTol) {
    if (e == 0) return Series1<C>::constant(s.var(), s.order(), FieldInfo<C>::from_double(1.0));
    bool inv = e < 0;
    unsigned long m = inv ? static_cast<unsigned long>(-(e + 1)) + 1ul : static_cast<unsigned long>(e);
    Series1<C> base = s;
    Series1<C> r = Series1<C>::constant(s.var(), s.order(), FieldInfo<C>::from_double(1.0));
    while (m) {
        if (m & 1ul) r = r * base;
        base = base * base;
        m >>= 1;
    }
    if (inv) return div(Series1<C>::constant(s.var(), s.order(), FieldInfo<C>::from_double(1.0)), r, tol);
    return r;
}

// ---------------------------------------------------------------------------
// Series2: truncated Taylor series in two variables on a rectangular grid.
// coeff(i, j) multiplies  u^i v^j  for vars (u, v).
// ---------------------------------------------------------------------------
template <class C>
class Series2 {
public:
    Series2() : vars_{"u", "v"}, n1_(0), n2_(0), c_(1) {}
    Series2(std::string v1, std::string v2, int n1, int n2)
        : vars_{std::move(v1), std::move(v2)}, n1_(n1), n2_(n2),
          c_(static_cast<size_t>(n1 + 1) * static_cast<size_t>(n2 + 1)) {}

    int order1() const { return n1_; }
    int order2() const { return n2_; }
    const std::string& var1() const { return vars_.first; }
    const std::string& var2() const { return vars_.second; }

    const C& at(int i, int j) const { return c_[idx(i, j)]; }
    C& at(int i, int j) { return c_[idx(i, j)]; }

    const C& coeff(int i, int j) const {
        if (i < 0 || i > n1_ || j < 0 || j > n2_)
            fail(ErrorCode::IndexOutOfOrder, "coefficient (" + std::to_string(i) + "," + std::to_string(j) +
                                                 ") of series with orders (" + std::to_string(n1_) + "," +
                                                 std::to_string(n2_) + ")");
        return c_[idx(i, j)];
    }

    C eval(const C& x, const C& y) const {
        C r{};
        for (int i = n1_; i >= 0; --i) {
            C row{};
            for (int j = n2_; j >= 0; --j) row = row * y + at(i, j);
            r = r * x + row;
        }
        return r;
    }

    double max_mag() const {
        double m = 0.0;
        for (const auto& v : c_) m = std::max(m, mag(v));
        return m;
    }

    // [v2^j] as a series in v1
    Series1<C> slice_second(int j) const {
        Series1<C> r(vars_.first, n1_);
        for (int i = 0; i <= n1_; ++i) r[i] = at(i, j);
        return r;
    }

    static Series2 constant(std::string v1, std::string v2, int n1, int n2, const C& v) {
        Series2 r(std::move(v1), std::move(v2), n1, n2);
        r.at(0, 0) = v;
        return r;
    }

    // embed a one-variable series as a function of the first / second variable
    static Series2 from_first(const Series1<C>& s, const std::string& v2, int n2) {
        Series2 r(s.var(), v2, s.order(), n2);
        for (int i = 0; i <= s.order(); ++i) r.at(i, 0) = s[i];
        return r;
    }
    static Series2 from_second(const Series1<C>& s, const std::string& v1, int n1) {
        Series2 r(v1, s.var(), n1, s.order());
        for (int j = 0; j <= s.order(); ++j) r.at(0, j) = s[j];
        return r;
    }

private:
    size_t idx(int i, int j) const {
        return static_cast<size_t>(i) * static_cast<size_t>(n2_ + 1) + static_cast<size_t>(j);
    }

    std::pair<std::string, std::string> vars_;
    int n1_, n2_;
    std::vector<C> c_;
};

template <class C>
Series2<C> operator+(const Series2<C>& a, const Series2<C>& b) {
    int n1 = std::min(a.order1(), b.order1()), n2 = std::min(a.order2(), b.order2());
    Series2<C> r(a.var1(), a.var2(), n1, n2);
    for (int i = 0; i <= n1; ++i)
        for (int j = 0; j <= n2; ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
    return r;
}

template <class C>
Series2<C> operator-(const Series2<C>& a, const Series2<C>& b) {
    int n1 = std::min(a.order1(), b.order1()), n2 = std::min(a.order2(), b.order2());
    Series2<C> r(a.var1(), a.var2(), n1, n2);
    for (int i = 0; i <= n1; ++i)
        for (int j = 0; j <= n2; ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
    return r;
}

template <class C>
Series2<C> operator-(const Series2<C>& a) {
    Series2<C> r(a.var1(), a.var2(), a.order1(), a.order2());
    for (int i = 0; i <= a.order1(); ++i)
        for (int j = 0; j <= a.order2(); ++j) r.at(i, j) = -a.at(i, j);
    return r;
}

template <class C>
Series2<C> operator*(const Series2<C>& a, const Series2<C>& b) {
    int n1 = std::min(a.order1(), b.order1()), n2 = std::min(a.order2(), b.order2());
    Series2<C> r(a.var1(), a.var2(), n1, n2);
    for (int i = 0; i <= a.order1() && i <= n1; ++i)
        for (int j = 0; j <= a.order2() && j <= n2; ++j) {
            const C& av = a.at(i, j);
            if (exactly_zero(av)) continue;
            for (int k = 0; i + k <= n1 && k <= b.order1(); ++k)
                for (int l = 0; j + l <= n2 && l <= b.order2(); ++l) {
                    const C& bv = b.at(k, l);
                    if (exactly_zero(bv)) continue;
                    r.at(i + k, j + l) += av * bv;
                }
        }
    return r;
}

template <class C>
Series2<C> operator*(const C& s, const Series2<C>& a) {
    Series2<C> r(a.var1(), a.var2(), a.order1(), a.order2());
    for (int i = 0; i <= a.order1(); ++i)
        for (int j = 0; j <= a.order2(); ++j) r.at(i, j) = s * a.at(i, j);
    return r;
}

template <class C>
Series2<C> div(const Series2<C>& a, const Series2<C>& b, double tol = kUnitTol) {
    if (near_zero(b.at(0, 0), tol, b.max_mag()))
        fail(ErrorCode::DivisionByNonUnit, "bivariate series division by vanishing constant term");
    int n1 = std::min(a.order1(), b.order1()), n2 = std::min(a.order2(), b.order2());
    Series2<C> r(a.var1(), a.var2(), n1, n2);
    for (int i = 0; i <= n1; ++i)
        for (int j = 0; j <= n2; ++j) {
            C acc = a.at(i, j);
            for (int k = 0; k <= i; ++k)
                for (int l = 0; l <= j; ++l) {
                    if (k == i && l == j) continue;
                    const C& rv = r.at(k, l);
                    if (exactly_zero(rv)) continue;
                    acc = acc - rv * b.at(i - k, j - l);
                }
            r.at(i, j) = acc / b.at(0, 0);
        }
    return r;
}

template <class C>
Series2<C> operator/(const Series2<C>& a, const Series2<C>& b) { return div(a, b); }

template <class C>
Series2<C> pow_int(const Series2<C>& s, long e, double tol = kUnitTol) {
    Series2<C> one = Series2<C>::constant(s.var1(), s.var2(), s.order1(), s.order2(),
                                          FieldInfo<C>::from_double(1.0));
    if (e == 0) return one;
    bool inv = e < 0;
    unsigned long m = inv ? static_cast<unsigned long>(-(e + 1)) + 1ul : static_cast<unsigned long>(e);
    Series2<C> base = s, r = one;
    while (m) {
        if (m & 1ul) r = r * base;
        base = base * base;
        m >>= 1;
    }
    if (inv) return div(one, r, tol);
    return r;
}

namespace detail {
// sum_{k} coeffs[k] * X^k for X with zero constant term (nilpotent under truncation)
template <class C>
Series2<C> nilpotent_sum(const Series2<C>& x, const std::vector<C>& coeffs) {
    Series2<C> r = Series2<C>::constant(x.var1(), x.var2(), x.order1(), x.order2(), coeffs[0]);
    Series2<C> p = Series2<C>::constant(x.var1(), x.var2(), x.order1(), x.order2(),
                                        FieldInfo<C>::from_double(1.0));
    for (size_t k = 1; k < coeffs.size(); ++k) {
        p = p * x;
        r = r + coeffs[k] * p;
    }
    return r;
}
}

template <class C>
Series2<C> exp(const Series2<C>& s) {
    if constexpr (FieldInfo<C>::is_exact) {
        fail(ErrorCode::UnsupportedExact, "exp over the exact rational field");
    } else {
        using std::exp;
        int deg = s.order1() + s.order2();
        Series2<C> x = s;
        C s0 = s.at(0, 0);
        x.at(0, 0) = C{};
        std::vector<C> coeffs(static_cast<size_t>(deg) + 1);
        C f = FieldInfo<C>::from_double(1.0);
        coeffs[0] = f;
        for (int k = 1; k <= deg; ++k) {
            f = f / FieldInfo<C>::from_double(static_cast<double>(k));
            coeffs[static_cast<size_t>(k)] = f;
        }
        return exp(s0) * detail::nilpotent_sum(x, coeffs);
    }
}

template <class C>
Series2<C> log(const Series2<C>& s, double tol = kUnitTol) {
    if constexpr (FieldInfo<C>::is_exact) {
        fail(ErrorCode::UnsupportedExact, "log over the exact rational field");
    } else {
        using std::log;
        if (near_zero(s.at(0, 0), tol, s.max_mag()))
            fail(ErrorCode::LogOfZero, "bivariate series log requires nonzero constant term");
        int deg = s.order1() + s.order2();
        C s0 = s.at(0, 0);
        Series2<C> x = (FieldInfo<C>::from_double(1.0) / s0) * s;
        x.at(0, 0) = C{};
        std::vector<C> coeffs(static_cast<size_t>(deg) + 1);
        for (int k = 1; k <= deg; ++k)
            coeffs[static_cast<size_t>(k)] =
                FieldInfo<C>::from_double((k % 2) ? 1.0 / k : -1.0 / k);
        Series2<C> r = detail::nilpotent_sum(x, coeffs);
        r.at(0, 0) = log(s0);
        return r;
    }
}

template <class C>
Series2<C> sqrt(const Series2<C>& s, double tol = kUnitTol) {
    if constexpr (FieldInfo<C>::is_exact) {
        fail(ErrorCode::UnsupportedExact, "sqrt over the exact rational field");
    } else {
        if (near_zero(s.at(0, 0), tol, s.max_mag()))
            fail(ErrorCode::RootOfZero, "bivariate series sqrt requires nonzero constant term");
        Series2<C> lg = log(s, tol);
        lg = FieldInfo<C>::from_double(0.5) * lg;
        return exp(lg);
    }
}

// outer(inner) for a one-variable outer and two-variable inner, inner(0,0)=0
template <class C>
Series2<C> compose2(const Series1<C>& outer, const Series2<C>& inner, double tol = kUnitTol) {
    if (!near_zero(inner.at(0, 0), tol, std::max(1.0, inner.max_mag())))
        fail(ErrorCode::NonZeroConstant, "compose2 requires inner series with zero constant term");
    Series2<C> in = inner;
    in.at(0, 0) = C{};
    Series2<C> r = Series2<C>::constant(in.var1(), in.var2(), in.order1(), in.order2(),
                                        outer[outer.order()]);
    for (int k = outer.order() - 1; k >= 0; --k) {
        r = r * in;
        r.at(0, 0) += outer[k];
    }
    return r;
}

} // namespace bicoef
