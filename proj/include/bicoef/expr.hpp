#pragma once

#include "bicoef/field.hpp"
#include "bicoef/series.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>

namespace bicoef {

// Expression AST for G, H, u, v.  Constants are exact rationals (decimal
// literals are rational), so a problem built from +,-,*,/,^ stays eligible
// for the exact coefficient oracle.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Func };
    enum class Fn { Exp, Log, Sqrt };

    Kind kind;
    Rat value;        // Const
    std::string name; // Var
    ExprPtr a, b;     // operands
    long exponent = 0; // Pow
    Fn fn = Fn::Exp;   // Func

    static ExprPtr constant(Rat v);
    static ExprPtr variable(std::string n);
    static ExprPtr unary(Kind k, ExprPtr x);
    static ExprPtr binary(Kind k, ExprPtr x, ExprPtr y);
    static ExprPtr power(ExprPtr x, long e);
    static ExprPtr func(Fn f, ExprPtr x);
};

// grammar: +,-,*,/ left-associative; ^ binds tightest with a literal integer
// exponent; functions exp, log, sqrt; rational and decimal constants.
ExprPtr parse(const std::string& text);

std::string print(const ExprPtr& e); // canonical fully-parenthesized form
ExprPtr differentiate(const ExprPtr& e, const std::string& var);
bool exact_eligible(const ExprPtr& e); // no exp/log/sqrt nodes
std::set<std::string> variables_of(const ExprPtr& e);
uint64_t fnv1a64(const std::string& s);

// ---------------------------------------------------------------------------
// Generic evaluation: the same AST walk over scalars, Series1 or Series2.
// ---------------------------------------------------------------------------

template <class T> struct is_series1_t : std::false_type {};
template <class C> struct is_series1_t<Series1<C>> : std::true_type {};
template <class T> struct is_series2_t : std::false_type {};
template <class C> struct is_series2_t<Series2<C>> : std::true_type {};

template <class C>
C scalar_pow_int(const C& a, long e) {
    if (e == 0) return FieldInfo<C>::from_double(1.0);
    bool inv = e < 0;
    unsigned long m = inv ? static_cast<unsigned long>(-(e + 1)) + 1ul : static_cast<unsigned long>(e);
    C base = a, r = FieldInfo<C>::from_double(1.0);
    while (m) {
        if (m & 1ul) r = r * base;
        base = base * base;
        m >>= 1;
    }
    if (inv) {
        if (exactly_zero(r)) fail(ErrorCode::EvalPole, "zero raised to a negative power");
        return FieldInfo<C>::from_double(1.0) / r;
    }
    return r;
}

namespace ring {

template <class R>
R constant(const Rat& q, const R& proto) {
    if constexpr (is_series1_t<R>::value) {
        using C = std::decay_t<decltype(proto[0])>;
        return R::constant(proto.var(), proto.order(), FieldInfo<C>::from_rational(q));
    } else if constexpr (is_series2_t<R>::value) {
        using C = std::decay_t<decltype(proto.at(0, 0))>;
        return R::constant(proto.var1(), proto.var2(), proto.order1(), proto.order2(),
                           FieldInfo<C>::from_rational(q));
    } else {
        (void)proto;
        return FieldInfo<R>::from_rational(q);
    }
}

template <class R>
R divide(const R& a, const R& b, double tol) {
    if constexpr (is_series1_t<R>::value || is_series2_t<R>::value) {
        return div(a, b, tol);
    } else {
        if (exactly_zero(b)) fail(ErrorCode::EvalPole, "division by zero");
        R r = a / b;
        if (!FieldInfo<R>::is_finite(r)) fail(ErrorCode::EvalPole, "division by a value too close to zero");
        return r;
    }
}

template <class R>
R power(const R& a, long e, double tol) {
    if constexpr (is_series1_t<R>::value || is_series2_t<R>::value) {
        return pow_int(a, e, tol);
    } else {
        (void)tol;
        return scalar_pow_int(a, e);
    }
}

template <class R>
R apply_fn(Expr::Fn f, const R& a, double tol) {
    if constexpr (is_series1_t<R>::value) {
        switch (f) {
            case Expr::Fn::Exp: return exp(a);
            case Expr::Fn::Log: return log(a, tol);
            case Expr::Fn::Sqrt: {
                using C = std::decay_t<decltype(a[0])>;
                return nth_root(a, 2, Branch<C>::principal(), tol);
            }
        }
    } else if constexpr (is_series2_t<R>::value) {
        switch (f) {
            case Expr::Fn::Exp: return exp(a);
            case Expr::Fn::Log: return log(a, tol);
            case Expr::Fn::Sqrt: return sqrt(a, tol);
        }
    } else if constexpr (FieldInfo<R>::is_exact) {
        fail(ErrorCode::UnsupportedExact, "exp/log/sqrt over the exact rational field");
    } else {
        using std::exp; using std::log; using std::sqrt;
        switch (f) {
            case Expr::Fn::Exp: {
                R r = exp(a);
                if (!FieldInfo<R>::is_finite(r)) fail(ErrorCode::NonFinite, "exp overflow");
                return r;
            }
            case Expr::Fn::Log:
                if (exactly_zero(a)) fail(ErrorCode::EvalBranch, "log of zero");
                return log(a);
            case Expr::Fn::Sqrt:
                if (exactly_zero(a)) fail(ErrorCode::EvalBranch, "sqrt of zero");
                return sqrt(a);
        }
    }
    fail(ErrorCode::NonFinite, "unreachable function kind");
}

} // namespace ring

template <class R>
R lift_expr(const ExprPtr& e, const std::map<std::string, R>& env, double tol = kUnitTol) {
    switch (e->kind) {
        case Expr::Kind::Const: {
            if (env.empty()) fail(ErrorCode::UnboundVariable, "empty environment");
            return ring::constant(e->value, env.begin()->second);
        }
        case Expr::Kind::Var: {
            auto it = env.find(e->name);
            if (it == env.end()) fail(ErrorCode::UnboundVariable, "variable '" + e->name + "' is not bound");
            return it->second;
        }
        case Expr::Kind::Neg: return -lift_expr(e->a, env, tol);
        case Expr::Kind::Add: return lift_expr(e->a, env, tol) + lift_expr(e->b, env, tol);
        case Expr::Kind::Sub: return lift_expr(e->a, env, tol) - lift_expr(e->b, env, tol);
        case Expr::Kind::Mul: return lift_expr(e->a, env, tol) * lift_expr(e->b, env, tol);
        case Expr::Kind::Div: return ring::divide(lift_expr(e->a, env, tol), lift_expr(e->b, env, tol), tol);
        case Expr::Kind::Pow: return ring::power(lift_expr(e->a, env, tol), e->exponent, tol);
        case Expr::Kind::Func: return ring::apply_fn(e->fn, lift_expr(e->a, env, tol), tol);
    }
    fail(ErrorCode::NonFinite, "unreachable expression kind");
}

template <class C>
C eval_scalar(const ExprPtr& e, const std::map<std::string, C>& bindings, double tol = kUnitTol) {
    C r = lift_expr(e, bindings, tol);
    if (!FieldInfo<C>::is_finite(r)) fail(ErrorCode::EvalPole, "non-finite evaluation result");
    return r;
}

// Taylor series of e about `center`, expanding in `var`; all other variables
// are held at their bound values.
template <class C>
Series1<C> taylor1(const ExprPtr& e, const std::string& var, const std::map<std::string, C>& center,
                   int order, double tol = kUnitTol) {
    std::map<std::string, Series1<C>> env;
    for (const auto& [name, val] : center) {
        if (name == var) {
            Series1<C> s = Series1<C>::identity(var, order);
            s[0] = val;
            env.emplace(name, std::move(s));
        } else {
            env.emplace(name, Series1<C>::constant(var, order, val));
        }
    }
    if (!env.count(var)) fail(ErrorCode::UnboundVariable, "expansion variable '" + var + "' has no center");
    try {
        return lift_expr(e, env, tol);
    } catch (const Error& err) {
        if (err.code() == ErrorCode::DivisionByNonUnit || err.code() == ErrorCode::LogOfZero ||
            err.code() == ErrorCode::RootOfZero)
            fail(ErrorCode::NotAnalyticAtCenter, err.what());
        throw;
    }
}

template <class C>
Series2<C> taylor2(const ExprPtr& e, const std::string& var1, const std::string& var2,
                   const std::map<std::string, C>& center, int order1, int order2,
                   double tol = kUnitTol) {
    std::map<std::string, Series2<C>> env;
    for (const auto& [name, val] : center) {
        Series2<C> s = Series2<C>::constant(var1, var2, order1, order2, val);
        if (name == var1 && order1 >= 1) s.at(1, 0) = FieldInfo<C>::from_double(1.0);
        if (name == var2 && order2 >= 1) s.at(0, 1) = FieldInfo<C>::from_double(1.0);
        env.emplace(name, std::move(s));
    }
    if (!env.count(var1) || !env.count(var2))
        fail(ErrorCode::UnboundVariable, "expansion variables must have centers");
    try {
        return lift_expr(e, env, tol);
    } catch (const Error& err) {
        if (err.code() == ErrorCode::DivisionByNonUnit || err.code() == ErrorCode::LogOfZero ||
            err.code() == ErrorCode::RootOfZero)
            fail(ErrorCode::NotAnalyticAtCenter, err.what());
        throw;
    }
}

} // namespace bicoef
