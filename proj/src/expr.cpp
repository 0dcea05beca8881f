#include "bicoef/expr.hpp"

#include <cctype>
#include <sstream>

namespace bicoef {

ExprPtr Expr::constant(Rat v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Const;
    v.canonicalize();
    e->value = std::move(v);
    return e;
}

ExprPtr Expr::variable(std::string n) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Var;
    e->name = std::move(n);
    return e;
}

ExprPtr Expr::unary(Kind k, ExprPtr x) {
    if (k == Kind::Neg && x->kind == Kind::Const) return constant(-x->value);
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->a = std::move(x);
    return e;
}

ExprPtr Expr::binary(Kind k, ExprPtr x, ExprPtr y) {
    // fold constants so that "3/4" style literals stay exact rationals
    if (x->kind == Kind::Const && y->kind == Kind::Const) {
        switch (k) {
            case Kind::Add: return constant(x->value + y->value);
            case Kind::Sub: return constant(x->value - y->value);
            case Kind::Mul: return constant(x->value * y->value);
            case Kind::Div:
                if (sgn(y->value) != 0) return constant(x->value / y->value);
                break;
            default: break;
        }
    }
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->a = std::move(x);
    e->b = std::move(y);
    return e;
}

ExprPtr Expr::power(ExprPtr x, long ex) {
    if (x->kind == Kind::Const && ex >= 0) {
        Rat r(1);
        Rat base = x->value;
        for (long i = 0; i < ex; ++i) r *= base;
        return constant(r);
    }
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Pow;
    e->a = std::move(x);
    e->exponent = ex;
    return e;
}

ExprPtr Expr::func(Fn f, ExprPtr x) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Func;
    e->fn = f;
    e->a = std::move(x);
    return e;
}

namespace {

struct Parser {
    const std::string& text;
    size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    [[noreturn]] void error(size_t at, const std::string& expected) {
        fail(ErrorCode::SyntaxError,
             "at offset " + std::to_string(at) + ": expected " + expected);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }

    bool accept(char c) {
        if (peek(c)) { ++pos; return true; }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) error(pos, std::string("'") + c + "'");
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    // digits[.digits][e[+-]digits] as an exact rational
    Rat parse_number() {
        size_t start = pos;
        std::string digits;
        long frac_digits = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            digits.push_back(text[pos++]);
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                digits.push_back(text[pos++]);
                ++frac_digits;
            }
        }
        if (digits.empty()) error(start, "a number");
        long exp10 = 0;
        if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
            size_t save = pos;
            ++pos;
            bool neg = false;
            if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
                neg = text[pos] == '-';
                ++pos;
            }
            if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
                pos = save; // "e" was an identifier boundary, not an exponent
            } else {
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                    exp10 = exp10 * 10 + (text[pos++] - '0');
                if (neg) exp10 = -exp10;
            }
        }
        mpz_class num(digits, 10);
        mpz_class den(1);
        long net = exp10 - frac_digits;
        mpz_class ten(10);
        if (net >= 0) {
            mpz_class scale;
            mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(net));
            num *= scale;
        } else {
            mpz_pow_ui(den.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(-net));
        }
        Rat q(num, den);
        q.canonicalize();
        return q;
    }

    std::string parse_ident() {
        skip_ws();
        size_t start = pos;
        if (pos >= text.size() ||
            !(std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            error(pos, "an identifier");
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        return text.substr(start, pos - start);
    }

    long parse_int_literal() {
        skip_ws();
        size_t start = pos;
        bool neg = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            neg = text[pos] == '-';
            ++pos;
        }
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            error(start, "an integer exponent");
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            ++pos;
            if (v > 1000000) error(start, "an exponent below 10^6");
        }
        return neg ? -v : v;
    }

    ExprPtr parse_primary() {
        skip_ws();
        if (pos >= text.size()) error(pos, "a primary expression");
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Expr::constant(parse_number());
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t ident_at = pos;
            std::string name = parse_ident();
            if (peek('(')) {
                Expr::Fn fn;
                if (name == "exp") fn = Expr::Fn::Exp;
                else if (name == "log") fn = Expr::Fn::Log;
                else if (name == "sqrt") fn = Expr::Fn::Sqrt;
                else error(ident_at, "a known function (exp, log, sqrt)");
                expect('(');
                ExprPtr arg = parse_expr();
                expect(')');
                return Expr::func(fn, arg);
            }
            return Expr::variable(name);
        }
        if (c == '(') {
            ++pos;
            ExprPtr e = parse_expr();
            expect(')');
            return e;
        }
        error(pos, "a number, variable or '('");
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_primary();
        if (accept('^')) {
            long e = parse_int_literal();
            return Expr::power(base, e);
        }
        return base;
    }

    ExprPtr parse_unary() {
        skip_ws();
        if (accept('-')) return Expr::unary(Expr::Kind::Neg, parse_unary());
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_unary();
        for (;;) {
            if (accept('*')) e = Expr::binary(Expr::Kind::Mul, e, parse_unary());
            else if (accept('/')) e = Expr::binary(Expr::Kind::Div, e, parse_unary());
            else return e;
        }
    }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        for (;;) {
            if (accept('-')) e = Expr::binary(Expr::Kind::Sub, e, parse_term());
            else if (accept('+')) e = Expr::binary(Expr::Kind::Add, e, parse_term());
            else return e;
        }
    }
};

} // namespace

ExprPtr parse(const std::string& text) {
    Parser p(text);
    ExprPtr e = p.parse_expr();
    if (!p.at_end()) p.error(p.pos, "end of input");
    return e;
}

std::string print(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Const: {
            std::ostringstream os;
            os << e->value;
            return os.str();
        }
        case Expr::Kind::Var: return e->name;
        case Expr::Kind::Neg: return "(-" + print(e->a) + ")";
        case Expr::Kind::Add: return "(" + print(e->a) + "+" + print(e->b) + ")";
        case Expr::Kind::Sub: return "(" + print(e->a) + "-" + print(e->b) + ")";
        case Expr::Kind::Mul: return "(" + print(e->a) + "*" + print(e->b) + ")";
        case Expr::Kind::Div: return "(" + print(e->a) + "/" + print(e->b) + ")";
        case Expr::Kind::Pow: return "(" + print(e->a) + "^" + std::to_string(e->exponent) + ")";
        case Expr::Kind::Func: {
            const char* n = e->fn == Expr::Fn::Exp ? "exp" : e->fn == Expr::Fn::Log ? "log" : "sqrt";
            return std::string(n) + "(" + print(e->a) + ")";
        }
    }
    return "?";
}

ExprPtr differentiate(const ExprPtr& e, const std::string& var) {
    using K = Expr::Kind;
    switch (e->kind) {
        case K::Const: return Expr::constant(Rat(0));
        case K::Var: return Expr::constant(Rat(e->name == var ? 1 : 0));
        case K::Neg: return Expr::unary(K::Neg, differentiate(e->a, var));
        case K::Add: return Expr::binary(K::Add, differentiate(e->a, var), differentiate(e->b, var));
        case K::Sub: return Expr::binary(K::Sub, differentiate(e->a, var), differentiate(e->b, var));
        case K::Mul: {
            auto da = differentiate(e->a, var), db = differentiate(e->b, var);
            return Expr::binary(K::Add, Expr::binary(K::Mul, da, e->b), Expr::binary(K::Mul, e->a, db));
        }
        case K::Div: {
            auto da = differentiate(e->a, var), db = differentiate(e->b, var);
            auto num = Expr::binary(K::Sub, Expr::binary(K::Mul, da, e->b), Expr::binary(K::Mul, e->a, db));
            return Expr::binary(K::Div, num, Expr::power(e->b, 2));
        }
        case K::Pow: {
            if (e->exponent == 0) return Expr::constant(Rat(0));
            auto da = differentiate(e->a, var);
            auto rest = Expr::power(e->a, e->exponent - 1);
            return Expr::binary(K::Mul, Expr::constant(Rat(e->exponent)),
                                Expr::binary(K::Mul, rest, da));
        }
        case K::Func: {
            auto da = differentiate(e->a, var);
            switch (e->fn) {
                case Expr::Fn::Exp: return Expr::binary(K::Mul, Expr::func(Expr::Fn::Exp, e->a), da);
                case Expr::Fn::Log: return Expr::binary(K::Div, da, e->a);
                case Expr::Fn::Sqrt: {
                    auto half = Expr::constant(Rat(1, 2));
                    return Expr::binary(K::Div, Expr::binary(K::Mul, half, da),
                                        Expr::func(Expr::Fn::Sqrt, e->a));
                }
            }
        }
    }
    fail(ErrorCode::NonFinite, "unreachable in differentiate");
}

bool exact_eligible(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Const:
        case Expr::Kind::Var: return true;
        case Expr::Kind::Neg: return exact_eligible(e->a);
        case Expr::Kind::Pow: return exact_eligible(e->a);
        case Expr::Kind::Func: return false;
        default: return exact_eligible(e->a) && exact_eligible(e->b);
    }
}

static void collect_vars(const ExprPtr& e, std::set<std::string>& out) {
    switch (e->kind) {
        case Expr::Kind::Const: return;
        case Expr::Kind::Var: out.insert(e->name); return;
        case Expr::Kind::Neg:
        case Expr::Kind::Pow:
        case Expr::Kind::Func: collect_vars(e->a, out); return;
        default:
            collect_vars(e->a, out);
            collect_vars(e->b, out);
    }
}

std::set<std::string> variables_of(const ExprPtr& e) {
    std::set<std::string> out;
    collect_vars(e, out);
    return out;
}

uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace bicoef
