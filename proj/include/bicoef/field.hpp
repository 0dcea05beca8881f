#pragma once

#include "bicoef/cdd.hpp"
#include "bicoef/error.hpp"

#include <gmpxx.h>

#include <cmath>
#include <complex>

namespace bicoef {

using Cx = std::complex<double>;
using Rat = mpq_class; // exact real field for the rational coefficient oracle

enum class Precision { standard, extended };

// --- double magnitude, used uniformly for tolerance decisions ---

inline double mag(const Cx& z) { return std::abs(z); }
inline double mag(const CDD& z) { return std::hypot(z.re.hi, z.im.hi); }
inline double mag(const Rat& q) { return std::fabs(q.get_d()); }
inline double mag(double x) { return std::fabs(x); }

inline double to_real_part(const Cx& z) { return z.real(); }
inline double to_real_part(const CDD& z) { return z.re.hi; }
inline double to_imag_part(const Cx& z) { return z.imag(); }
inline double to_imag_part(const CDD& z) { return z.im.hi; }

inline bool exactly_zero(const Cx& z) { return z == Cx(0.0); }
inline bool exactly_zero(const CDD& z) { return z == CDD(); }
inline bool exactly_zero(const Rat& q) { return sgn(q) == 0; }

// Exact fields ignore the tolerance; floating fields compare |x| <= tol*scale.
template <class C>
bool near_zero(const C& x, double tol, double scale) {
    if constexpr (std::is_same_v<C, Rat>) {
        (void)tol; (void)scale;
        return exactly_zero(x);
    } else {
        return mag(x) <= tol * scale;
    }
}

// --- conversions ---

template <class C> struct FieldInfo;

template <> struct FieldInfo<Cx> {
    static constexpr bool is_exact = false;
    static constexpr double eps = 2.220446049250313e-16;
    static Cx from_double(double d) { return Cx(d, 0.0); }
    static Cx from_parts(double re, double im) { return Cx(re, im); }
    static Cx from_rational(const Rat& q) { return Cx(q.get_d(), 0.0); }
    static Cx to_cx(const Cx& z) { return z; }
    static bool is_finite(const Cx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
};

namespace detail {
// exact double-double value of a big integer (truncated at 2 limb-doubles)
inline DD dd_from_mpz(const mpz_class& n) {
    double d0 = n.get_d();
    mpz_class r = n - mpz_class(d0);
    double d1 = r.get_d();
    mpz_class r2 = r - mpz_class(d1);
    return DD(d0) + DD(d1) + DD(r2.get_d());
}
}

template <> struct FieldInfo<CDD> {
    static constexpr bool is_exact = false;
    static constexpr double eps = ddc::eps;
    static CDD from_double(double d) { return CDD(d); }
    static CDD from_parts(double re, double im) { return CDD(DD(re), DD(im)); }
    static CDD from_rational(const Rat& q) {
        return CDD(detail::dd_from_mpz(q.get_num()) / detail::dd_from_mpz(q.get_den()));
    }
    static Cx to_cx(const CDD& z) { return to_std(z); }
    static bool is_finite(const CDD& z) { return z.is_finite(); }
};

template <> struct FieldInfo<Rat> {
    static constexpr bool is_exact = true;
    static constexpr double eps = 0.0;
    static Rat from_double(double d) { return Rat(d); }
    static Rat from_rational(const Rat& q) { return q; }
    static Cx to_cx(const Rat& q) { return Cx(q.get_d(), 0.0); }
    static bool is_finite(const Rat&) { return true; }
};

// imaginary unit in field C
template <class C> C imag_unit() { return FieldInfo<C>::from_parts(0.0, 1.0); }

} // namespace bicoef
