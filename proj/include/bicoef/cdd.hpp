#pragma once

#include "bicoef/dd.hpp"

#include <complex>

namespace bicoef {

// Complex number over double-double reals.  Mirrors the parts of
// std::complex<double> the series and geometry code relies on, so templated
// code can switch precision by swapping the scalar type.
struct CDD {
    DD re, im;

    constexpr CDD() = default;
    constexpr CDD(double r) : re(r), im(0.0) {}
    constexpr CDD(const DD& r) : re(r), im(0.0) {}
    constexpr CDD(const DD& r, const DD& i) : re(r), im(i) {}
    CDD(const std::complex<double>& z) : re(z.real()), im(z.imag()) {}

    bool is_finite() const { return re.is_finite() && im.is_finite(); }
};

inline CDD operator+(const CDD& a, const CDD& b) { return {a.re + b.re, a.im + b.im}; }
inline CDD operator-(const CDD& a, const CDD& b) { return {a.re - b.re, a.im - b.im}; }
inline CDD operator-(const CDD& a) { return {-a.re, -a.im}; }
inline CDD operator*(const CDD& a, const CDD& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline CDD operator/(const CDD& a, const CDD& b) {
    DD d = sqr(b.re) + sqr(b.im);
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline CDD& operator+=(CDD& a, const CDD& b) { a = a + b; return a; }
inline CDD& operator-=(CDD& a, const CDD& b) { a = a - b; return a; }
inline CDD& operator*=(CDD& a, const CDD& b) { a = a * b; return a; }
inline CDD& operator/=(CDD& a, const CDD& b) { a = a / b; return a; }
inline bool operator==(const CDD& a, const CDD& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const CDD& a, const CDD& b) { return !(a == b); }

inline DD real(const CDD& z) { return z.re; }
inline DD imag(const CDD& z) { return z.im; }
inline CDD conj(const CDD& z) { return {z.re, -z.im}; }
inline DD norm(const CDD& z) { return sqr(z.re) + sqr(z.im); }
inline DD abs(const CDD& z) { return sqrt(norm(z)); }
inline DD arg(const CDD& z) { return atan2(z.im, z.re); }

inline CDD exp(const CDD& z) {
    DD e = exp(z.re);
    DD s, c;
    sincos(z.im, s, c);
    return {e * c, e * s};
}

inline CDD log(const CDD& z) {
    return {mul_pwr2(log(norm(z)), 0.5), arg(z)};
}

inline CDD sqrt(const CDD& z) {
    if (z.re.hi == 0.0 && z.re.lo == 0.0 && z.im.hi == 0.0 && z.im.lo == 0.0) return CDD();
    DD r = abs(z);
    DD th = mul_pwr2(arg(z), 0.5);
    DD sr = sqrt(r);
    DD s, c;
    sincos(th, s, c);
    return {sr * c, sr * s};
}

inline CDD pow_int(const CDD& a, long n) {
    if (n == 0) return CDD(1.0);
    bool inv = n < 0;
    unsigned long m = inv ? static_cast<unsigned long>(-(n + 1)) + 1ul : static_cast<unsigned long>(n);
    CDD base = a, result(1.0);
    while (m) {
        if (m & 1ul) result = result * base;
        base = base * base;
        m >>= 1;
    }
    return inv ? CDD(1.0) / result : result;
}

inline std::complex<double> to_std(const CDD& z) { return {z.re.hi, z.im.hi}; }

} // namespace bicoef
