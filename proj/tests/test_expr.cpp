#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bicoef/expr.hpp"

#include <cmath>
#include <random>

using namespace bicoef;

namespace {
std::mt19937_64 rng(424242);

ExprPtr rand_expr(int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 8);
    switch (pick(rng)) {
        case 0: {
            std::uniform_int_distribution<int> num(-4, 4), den(1, 4);
            return Expr::constant(Rat(num(rng), den(rng)));
        }
        case 1: {
            std::uniform_int_distribution<int> v(0, 1);
            return Expr::variable(v(rng) ? "z" : "w");
        }
        case 2: return Expr::binary(Expr::Kind::Add, rand_expr(depth - 1), rand_expr(depth - 1));
        case 3: return Expr::binary(Expr::Kind::Sub, rand_expr(depth - 1), rand_expr(depth - 1));
        case 4: return Expr::binary(Expr::Kind::Mul, rand_expr(depth - 1), rand_expr(depth - 1));
        case 5: {
            // keep denominators away from zero at the sample centers
            auto den = Expr::binary(Expr::Kind::Add, rand_expr(depth - 1), Expr::constant(Rat(5)));
            return Expr::binary(Expr::Kind::Div, rand_expr(depth - 1), den);
        }
        case 6: {
            std::uniform_int_distribution<int> e(0, 3);
            return Expr::power(rand_expr(depth - 1), e(rng));
        }
        case 7: {
            auto arg = Expr::binary(Expr::Kind::Add, rand_expr(depth - 1), Expr::constant(Rat(6)));
            return Expr::func(Expr::Fn::Log, arg);
        }
        default: return Expr::unary(Expr::Kind::Neg, rand_expr(depth - 1));
    }
}
} // namespace

TEST_CASE("parser accepts the application inputs") {
    CHECK_NOTHROW((void)parse("1/(1-z-w-z*w)"));
    CHECK_NOTHROW((void)parse("1-2*z"));
    CHECK_NOTHROW((void)parse("1/(1-z)"));
    CHECK_NOTHROW((void)parse("exp(2*log(1+z))"));
    CHECK_NOTHROW((void)parse("(1-z)^3 - z^-2"));
}

TEST_CASE("syntax errors carry the byte offset") {
    try {
        (void)parse("1/((");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SyntaxError);
        CHECK(std::string(e.what()).find("offset 4") != std::string::npos);
    }
    CHECK_THROWS_AS((void)parse("sin(z)"), Error);
    CHECK_THROWS_AS((void)parse("z^w"), Error);
    CHECK_THROWS_AS((void)parse("1+"), Error);
    CHECK_THROWS_AS((void)parse("(1+z"), Error);
}

TEST_CASE("rational and decimal constants are exact") {
    ExprPtr q = parse("3/4");
    REQUIRE(q->kind == Expr::Kind::Const);
    CHECK(q->value == Rat(3, 4));

    ExprPtr d = parse("0.375");
    REQUIRE(d->kind == Expr::Kind::Const);
    CHECK(d->value == Rat(3, 8));

    ExprPtr s = parse("25e-2");
    REQUIRE(s->kind == Expr::Kind::Const);
    CHECK(s->value == Rat(1, 4));

    CHECK(exact_eligible(parse("1/(1-z-w-z*w)")));
    CHECK(!exact_eligible(parse("exp(z)")));
}

TEST_CASE("scalar evaluation") {
    ExprPtr h = parse("1-z-w-z*w");
    std::map<std::string, Cx> at_origin{{"z", 0.0}, {"w", 0.0}};
    CHECK(std::abs(eval_scalar(h, at_origin) - 1.0) < 1e-15);

    ExprPtr v = parse("1-2*z");
    CHECK(std::abs(eval_scalar<Cx>(v, {{"z", Cx(0.5)}})) < 1e-15);

    double zc = std::sqrt(2.0) - 1.0;
    CHECK(std::abs(eval_scalar<Cx>(h, {{"z", Cx(zc)}, {"w", Cx(zc)}})) < 1e-14);

    CHECK_THROWS_AS((void)eval_scalar<Cx>(h, {{"z", Cx(0.0)}}), Error);
    try {
        (void)eval_scalar<Cx>(parse("1/z"), {{"z", Cx(0.0)}});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EvalPole);
    }
    try {
        (void)eval_scalar<Cx>(parse("log(z)"), {{"z", Cx(0.0)}});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EvalBranch);
    }
}

TEST_CASE("taylor expansion") {
    Series1<Cx> g = taylor1<Cx>(parse("1/(1-z)"), "z", {{"z", Cx(0.0)}}, 3);
    for (int j = 0; j <= 3; ++j) CHECK(std::abs(g[j] - 1.0) < 1e-14);

    Series2<Cx> f = taylor2<Cx>(parse("1/(1-z-w-z*w)"), "z", "w", {{"z", Cx(0.0)}, {"w", Cx(0.0)}}, 2, 2);
    const double want[3][3] = {{1, 1, 1}, {1, 3, 5}, {1, 5, 13}};
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2; ++j) CHECK(std::abs(f.at(i, j) - want[i][j]) < 1e-12);

    try {
        (void)taylor1<Cx>(parse("log(z)"), "z", {{"z", Cx(0.0)}}, 4);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotAnalyticAtCenter);
    }
}

TEST_CASE("symbolic differentiation") {
    ExprPtr h = parse("1-z-w-z*w");
    ExprPtr hz = differentiate(h, "z");
    std::map<std::string, Cx> pt{{"z", Cx(0.3, 0.1)}, {"w", Cx(-0.2)}};
    CHECK(std::abs(eval_scalar(hz, pt) - (-1.0 - pt["w"])) < 1e-14);

    ExprPtr e = parse("exp(2*z)/(1+z)");
    ExprPtr de = differentiate(e, "z");
    Cx z0(0.37, 0.0);
    double h_step = 1e-6;
    Cx fd = (eval_scalar<Cx>(e, {{"z", z0 + h_step}}) - eval_scalar<Cx>(e, {{"z", z0 - h_step}})) / (2 * h_step);
    CHECK(std::abs(eval_scalar<Cx>(de, {{"z", z0}}) - fd) < 1e-8 * std::abs(fd));
}

TEST_CASE("eval at center matches taylor constant term on random expressions") {
    std::map<std::string, Cx> center{{"z", Cx(0.31, 0.07)}, {"w", Cx(-0.22, 0.05)}};
    int done = 0;
    while (done < 100) {
        ExprPtr e = rand_expr(4);
        Cx direct;
        try {
            direct = eval_scalar(e, center);
        } catch (const Error&) {
            continue;
        }
        try {
            Series2<Cx> t = taylor2(e, "z", "w", center, 3, 3);
            CHECK(std::abs(t.at(0, 0) - direct) <= 1e-11 * std::max(1.0, std::abs(direct)));
            ++done;
        } catch (const Error&) {
            continue;
        }
    }
}

TEST_CASE("taylor first coefficients match central finite differences") {
    std::map<std::string, Cx> center{{"z", Cx(0.29)}, {"w", Cx(0.17)}};
    const double h = 1e-5;
    int done = 0;
    while (done < 100) {
        ExprPtr e = rand_expr(3);
        try {
            Series2<Cx> t = taylor2(e, "z", "w", center, 2, 2);
            auto cp = center, cm = center;
            cp["z"] += h;
            cm["z"] -= h;
            Cx fd = (eval_scalar(e, cp) - eval_scalar(e, cm)) / (2 * h);
            Cx dz = t.at(1, 0);
            if (std::abs(dz) < 1e-3) continue; // relative comparison needs a scale
            CHECK(std::abs(dz - fd) <= 1e-6 * std::abs(dz));
            ++done;
        } catch (const Error&) {
            continue;
        }
    }
}

TEST_CASE("canonical printing is stable for hashing") {
    ExprPtr a = parse("1/(1-z-w-z*w)");
    ExprPtr b = parse("1 / (1 - z - w - z*w)");
    CHECK(print(a) == print(b));
    CHECK(fnv1a64(print(a)) == fnv1a64(print(b)));
    CHECK(print(parse("2^3")) == "8");
}
