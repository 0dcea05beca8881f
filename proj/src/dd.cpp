#include "bicoef/dd.hpp"

#include "bicoef/error.hpp"

#include <array>
#include <cstdlib>

namespace bicoef {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::DivisionByNonUnit: return "DivisionByNonUnit";
        case ErrorCode::NonZeroConstant: return "NonZeroConstant";
        case ErrorCode::NotInvertible: return "NotInvertible";
        case ErrorCode::LogOfZero: return "LogOfZero";
        case ErrorCode::RootOfZero: return "RootOfZero";
        case ErrorCode::AmbiguousBranch: return "AmbiguousBranch";
        case ErrorCode::IndexOutOfOrder: return "IndexOutOfOrder";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnboundVariable: return "UnboundVariable";
        case ErrorCode::EvalPole: return "EvalPole";
        case ErrorCode::EvalBranch: return "EvalBranch";
        case ErrorCode::NotAnalyticAtCenter: return "NotAnalyticAtCenter";
        case ErrorCode::UnsupportedExact: return "UnsupportedExact";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::NonSimple: return "NonSimple";
        case ErrorCode::DegenerateCenter: return "DegenerateCenter";
        case ErrorCode::ChartRadiusExceeded: return "ChartRadiusExceeded";
        case ErrorCode::CrossCheckFailed: return "CrossCheckFailed";
        case ErrorCode::OutOfCone: return "OutOfCone";
        case ErrorCode::PhaseLinearTermNonzero: return "PhaseLinearTermNonzero";
        case ErrorCode::PhaseDegreeChange: return "PhaseDegreeChange";
        case ErrorCode::AmplitudeIdenticallyZero: return "AmplitudeIdenticallyZero";
        case ErrorCode::OrderTooSmall: return "OrderTooSmall";
        case ErrorCode::DegreeMismatch: return "DegreeMismatch";
        case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
        case ErrorCode::ContinuationLost: return "ContinuationLost";
        case ErrorCode::NoNearbyRoot: return "NoNearbyRoot";
        case ErrorCode::BranchAmbiguous: return "BranchAmbiguous";
        case ErrorCode::BranchFailure: return "BranchFailure";
        case ErrorCode::SignUndefined: return "SignUndefined";
        case ErrorCode::NonPositiveArgument: return "NonPositiveArgument";
        case ErrorCode::NotConstantDegree: return "NotConstantDegree";
        case ErrorCode::NotApplicable: return "NotApplicable";
        case ErrorCode::NotAnalyticAtOrigin: return "NotAnalyticAtOrigin";
        case ErrorCode::PositivityProbeFailed: return "PositivityProbeFailed";
        case ErrorCode::OracleMissing: return "OracleMissing";
        case ErrorCode::CacheFormat: return "CacheFormat";
        case ErrorCode::DuplicateMode: return "DuplicateMode";
        case ErrorCode::ProblemFileError: return "ProblemFileError";
    }
    return "UnknownError";
}

DD sqrt(const DD& a) {
    if (a.hi == 0.0 && a.lo == 0.0) return DD(0.0);
    if (a.hi < 0.0) fail(ErrorCode::NonFinite, "dd sqrt of negative value");
    // Karp's trick: one step of Newton on 1/sqrt, done mostly in double.
    double x = 1.0 / std::sqrt(a.hi);
    double ax = a.hi * x;
    return DD(ax) + (a - sqr(DD(ax))) * DD(x * 0.5);
}

DD exp(const DD& a) {
    // exp(k ln2 + r) = 2^k exp(r), exp(r) by Taylor on r/512 then 9 squarings.
    if (a.hi <= -709.0) return DD(0.0);
    if (a.hi >= 709.0) fail(ErrorCode::NonFinite, "dd exp overflow");
    double m = std::floor(a.hi / ddc::ln2.hi + 0.5);
    DD r = mul_pwr2(a - ddc::ln2 * DD(m), 1.0 / 512.0);

    DD p = sqr(r);
    DD s = r + mul_pwr2(p, 0.5);
    p = p * r;
    double fact = 6.0;
    DD t = p / DD(fact);
    int k = 3;
    while (std::fabs(t.hi) > 1e-35 && k < 20) {
        s = s + t;
        p = p * r;
        ++k;
        fact *= k;
        t = p / DD(fact);
    }
    s = s + t;
    // undo the /512 scaling: s <- (1+s)^512 - 1, computed incrementally
    for (int i = 0; i < 9; ++i) s = mul_pwr2(s, 2.0) + sqr(s);
    s = s + DD(1.0);
    return mul_pwr2(s, std::ldexp(1.0, static_cast<int>(m)));
}

DD log(const DD& a) {
    if (a.hi <= 0.0) fail(ErrorCode::LogOfZero, "dd log of non-positive value");
    // Newton: x <- x + a e^{-x} - 1, starting from the double log.
    DD x(std::log(a.hi));
    x = x + a * exp(-x) - DD(1.0);
    return x;
}

namespace {

// Taylor sin/cos on |t| <= pi/4
void sincos_taylor(const DD& t, DD& s, DD& c) {
    DD t2 = sqr(t);
    // sin
    DD term = t;
    DD sum = t;
    double fact = 1.0;
    for (int k = 1; k <= 16; ++k) {
        fact = fact * (2.0 * k) * (2.0 * k + 1.0);
        term = term * t2;
        DD add = term / DD((k % 2) ? -fact : fact);
        sum = sum + add;
        if (std::fabs(add.hi) < 1e-35) break;
    }
    s = sum;
    // cos
    term = DD(1.0);
    sum = DD(1.0);
    fact = 1.0;
    for (int k = 1; k <= 16; ++k) {
        fact = fact * (2.0 * k - 1.0) * (2.0 * k);
        term = term * t2;
        DD add = term / DD((k % 2) ? -fact : fact);
        sum = sum + add;
        if (std::fabs(add.hi) < 1e-35) break;
    }
    c = sum;
}

} // namespace

void sincos(const DD& a, DD& s, DD& c) {
    // reduce modulo 2*pi, then modulo pi/2 into a quadrant
    double k2pi = std::floor(a.hi / ddc::two_pi.hi + 0.5);
    DD r = a - ddc::two_pi * DD(k2pi);
    double q = std::floor(r.hi / ddc::pi_half.hi + 0.5);
    DD t = r - ddc::pi_half * DD(q);
    int quad = static_cast<int>(q) & 3;
    if (quad < 0) quad += 4;

    DD st, ct;
    sincos_taylor(t, st, ct);
    switch (quad) {
        case 0: s = st; c = ct; break;
        case 1: s = ct; c = -st; break;
        case 2: s = -st; c = -ct; break;
        default: s = -ct; c = st; break;
    }
}

DD sin(const DD& a) { DD s, c; sincos(a, s, c); return s; }
DD cos(const DD& a) { DD s, c; sincos(a, s, c); return c; }

DD atan2(const DD& y, const DD& x) {
    if (x.hi == 0.0 && x.lo == 0.0 && y.hi == 0.0 && y.lo == 0.0)
        fail(ErrorCode::NonFinite, "dd atan2(0,0)");
    DD r = sqrt(sqr(x) + sqr(y));
    // one Newton refinement of the double atan2 against x sin - y cos = 0
    DD th(std::atan2(y.hi, x.hi));
    DD s, c;
    sincos(th, s, c);
    th = th + (y * c - x * s) / r;
    return th;
}

DD pow_int(DD a, long n) {
    if (n == 0) return DD(1.0);
    bool inv = n < 0;
    unsigned long m = inv ? static_cast<unsigned long>(-(n + 1)) + 1ul : static_cast<unsigned long>(n);
    DD result(1.0);
    while (m) {
        if (m & 1ul) result = result * a;
        a = sqr(a);
        m >>= 1;
    }
    return inv ? DD(1.0) / result : result;
}

DD dd_from_string(const std::string& str) {
    // parse into hi + lo with a second pass on the residual
    double hi = std::strtod(str.c_str(), nullptr);
    // crude but adequate: refine via long double residual
    long double v = std::strtold(str.c_str(), nullptr);
    double lo = static_cast<double>(v - static_cast<long double>(hi));
    return {hi, lo};
}

} // namespace bicoef
