#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace bicoef {

// Double-double real number: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
// Gives roughly 31 significant decimal digits.  Used as the extended-precision
// mode behind the computation context; the algorithms follow the classic
// QD/dd_real recipes (error-free transforms, one Newton step from a double
// seed for the inverse functions).
struct DD {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DD() = default;
    constexpr DD(double h) : hi(h), lo(0.0) {}
    constexpr DD(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi; }
    bool is_finite() const { return std::isfinite(hi) && std::isfinite(lo); }
};

namespace detail {

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

// requires |a| >= |b|
inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline void split(double a, double& hi, double& lo) {
    constexpr double splitter = 134217729.0; // 2^27 + 1
    double t = splitter * a;
    hi = t - (t - a);
    lo = a - hi;
}

inline DD two_prod(double a, double b) {
    double p = a * b;
#if defined(__FMA__) || defined(FP_FAST_FMA)
    double err = std::fma(a, b, -p);
#else
    double ahi, alo, bhi, blo;
    split(a, ahi, alo);
    split(b, bhi, blo);
    double err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo;
#endif
    return {p, err};
}

} // namespace detail

inline DD operator+(const DD& a, const DD& b) {
    DD s = detail::two_sum(a.hi, b.hi);
    DD t = detail::two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = detail::quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return detail::quick_two_sum(s.hi, s.lo);
}

inline DD operator-(const DD& a) { return {-a.hi, -a.lo}; }
inline DD operator-(const DD& a, const DD& b) { return a + (-b); }

inline DD operator*(const DD& a, const DD& b) {
    DD p = detail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return detail::quick_two_sum(p.hi, p.lo);
}

inline DD operator/(const DD& a, const DD& b) {
    double q1 = a.hi / b.hi;
    DD r = a - DD(q1) * b;
    double q2 = r.hi / b.hi;
    r = r - DD(q2) * b;
    double q3 = r.hi / b.hi;
    DD q = detail::quick_two_sum(q1, q2);
    return q + DD(q3);
}

inline DD& operator+=(DD& a, const DD& b) { a = a + b; return a; }
inline DD& operator-=(DD& a, const DD& b) { a = a - b; return a; }
inline DD& operator*=(DD& a, const DD& b) { a = a * b; return a; }
inline DD& operator/=(DD& a, const DD& b) { a = a / b; return a; }

inline bool operator==(const DD& a, const DD& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const DD& a, const DD& b) { return !(a == b); }
inline bool operator<(const DD& a, const DD& b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const DD& a, const DD& b) { return b < a; }
inline bool operator<=(const DD& a, const DD& b) { return !(b < a); }
inline bool operator>=(const DD& a, const DD& b) { return !(a < b); }

inline DD abs(const DD& a) { return (a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0)) ? -a : a; }
inline double to_double(const DD& a) { return a.hi; }

// scale by an exact power of two
inline DD mul_pwr2(const DD& a, double p2) { return {a.hi * p2, a.lo * p2}; }

inline DD sqr(const DD& a) {
    DD p = detail::two_prod(a.hi, a.hi);
    p.lo += 2.0 * a.hi * a.lo;
    p.lo += a.lo * a.lo;
    return detail::quick_two_sum(p.hi, p.lo);
}

namespace ddc {
// hi/lo pairs for the usual constants
inline constexpr DD pi{3.141592653589793116e+00, 1.224646799147353207e-16};
inline constexpr DD two_pi{6.283185307179586232e+00, 2.449293598294706414e-16};
inline constexpr DD pi_half{1.570796326794896558e+00, 6.123233995736766036e-17};
inline constexpr DD ln2{6.931471805599452862e-01, 2.319046813846299558e-17};
inline constexpr double eps = 4.93038065763132e-32; // 2^-104
}

DD sqrt(const DD& a);
DD exp(const DD& a);
DD log(const DD& a);
void sincos(const DD& a, DD& s, DD& c);
DD sin(const DD& a);
DD cos(const DD& a);
DD atan2(const DD& y, const DD& x);
DD pow_int(DD a, long n);
DD dd_from_string(const std::string& s);

} // namespace bicoef
