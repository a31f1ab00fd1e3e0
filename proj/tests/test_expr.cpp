//---------------------------------------------------------------------------//
// Copyright (c) 2026 swstab developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "swstab/expr.hpp"
#include "swstab/lie.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace swstab;

namespace {

Expr from_naive(const test::NaivePoly& n) {
    PolyQ p(n.dim);
    for (const auto& [m, c] : n.coef)
        if (!(c == 0)) p.add_term(m, c);
    return Expr::from_poly(p);
}

VectorFieldExpr field2(const std::string& a, const std::string& b) {
    return VectorFieldExpr::parse({a, b}, 2);
}

} // namespace

TEST(Parse, PolynomialFastPath) {
    Expr e = Expr::parse("x1^2 + 2*x2^2 + x3^2", 3);
    ASSERT_TRUE(e.is_polynomial());
    EXPECT_EQ(e.poly().term_count(), 3u);
    Expr zero = Expr::parse("0", 2);
    ASSERT_TRUE(zero.is_polynomial());
    EXPECT_TRUE(zero.poly().is_zero());
    Expr tree = Expr::parse("x1*cos(x1)", 3);
    EXPECT_FALSE(tree.is_polynomial());
}

TEST(Parse, DecimalsBecomeExactRationals) {
    Expr e = Expr::parse("0.25*x1", 1);
    ASSERT_TRUE(e.is_polynomial());
    Monomial m{1};
    EXPECT_EQ(e.poly().coefficient(m), Rational(1, 4));
}

TEST(Parse, DivisionByConstantStaysPolynomial) {
    Expr e = Expr::parse("x1^2/4 + x2/2", 2);
    ASSERT_TRUE(e.is_polynomial());
    double x[2] = {2.0, 3.0};
    EXPECT_DOUBLE_EQ(e.evaluate(x), 2.5);
    EXPECT_FALSE(Expr::parse("x1/(1+x2)", 2).is_polynomial());
}

TEST(Parse, ErrorsCarryByteOffsets) {
    try {
        Expr::parse("x1 + @", 2);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset, 5u);
    }
    EXPECT_THROW(Expr::parse("x3", 2), ParseError);       // index beyond dim
    EXPECT_THROW(Expr::parse("x0", 2), ParseError);       // indices start at 1
    EXPECT_THROW(Expr::parse("y1 + 1", 2), ParseError);   // unknown identifier
    EXPECT_THROW(Expr::parse("sin(x1, x2)", 2), ParseError);
    EXPECT_THROW(Expr::parse("min(x1)", 2), ParseError);
    EXPECT_THROW(Expr::parse("x1^(2)", 2), ParseError);   // exponent must be a uint
    EXPECT_THROW(Expr::parse("x1/0", 2), ParseError);
    EXPECT_THROW(Expr::parse("x1 x2", 2), ParseError);    // trailing input
}

TEST(Evaluate, BasicValues) {
    Expr V = Expr::parse("x1^2 + x2^2", 2);
    double p[2] = {3.0, 4.0};
    EXPECT_DOUBLE_EQ(V.evaluate(p), 25.0);

    Expr L = Expr::parse("-2*x1^2", 2);
    double q[2] = {1.0, 5.0};
    EXPECT_DOUBLE_EQ(L.evaluate(q), -2.0);

    Expr m = Expr::parse("min(x1*x2, 0)^2", 2);
    double r[2] = {1.0, -1.0};
    EXPECT_DOUBLE_EQ(m.evaluate(r), 1.0);
}

TEST(Evaluate, DivisionByZeroAtPoint) {
    Expr e = Expr::parse("x1/(x2 - 1)", 2);
    double ok[2] = {1.0, 3.0};
    EXPECT_DOUBLE_EQ(e.evaluate(ok), 0.5);
    double bad[2] = {1.0, 1.0};
    EXPECT_THROW(e.evaluate(bad), EvalError);
}

TEST(Partial, PowerProductConstant) {
    Expr a = Expr::parse("x1^4 + 2*x2^2", 2).partial(1);
    EXPECT_EQ(a.poly(), Expr::parse("4*x1^3", 2).poly());

    Expr b = Expr::parse("x1*cos(x1)", 1).partial(1);
    for (double t : {0.0, 0.3, -1.2}) {
        double x[1] = {t};
        EXPECT_NEAR(b.eval(x), std::cos(t) - t * std::sin(t), 1e-12);
    }

    Expr c = Expr::parse("7", 2).partial(2);
    EXPECT_TRUE(c.is_zero());

    EXPECT_THROW(Expr::parse("min(x1, x2)", 2).partial(1), NonDifferentiableError);
}

TEST(Lie, ClosedForms) {
    Expr V = Expr::parse("x1^4 + x2^4", 2);
    Expr L1 = lie_derivative(V, field2("x2^3", "-x1^3 - 2*x2^3"));
    EXPECT_EQ(L1.poly(), Expr::parse("-8*x2^6", 2).poly());

    Expr V6 = Expr::parse("x1^2 + 2*x2^2 + x3^2", 3);
    Expr L2 = lie_derivative(V6, VectorFieldExpr::parse({"-x1", "-2*x2", "-x1^2*x3^3"}, 3));
    EXPECT_EQ(L2.poly(), Expr::parse("-2*x1^2 - 8*x2^2 - 2*x1^2*x3^4", 3).poly());

    Expr any = Expr::parse("x1^2 + 5*x1*x2", 2);
    EXPECT_TRUE(lie_derivative(any, field2("0", "0")).is_zero());
}

TEST(Lie, TranscendentalModeMatchesClosedForm) {
    // cross terms with cos cancel exactly in the Lie derivative
    Expr V = Expr::parse("x1^2 + 2*x2^2 + x3^2", 3);
    VectorFieldExpr f3 =
        VectorFieldExpr::parse({"-x1 + 2*x3 - 2*x2*cos(x1)", "x1*cos(x1)", "-x3"}, 3);
    Expr L = lie_derivative(V, f3);
    EXPECT_FALSE(L.is_polynomial());
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        double x[3] = {u(rng), u(rng), u(rng)};
        double want = -2.0 * (x[0] - x[2]) * (x[0] - x[2]);
        EXPECT_NEAR(L.eval(x), want, 1e-12);
    }
}

TEST(LieChain, OneDimensionalHandComputation) {
    Expr V = Expr::parse("x1^2", 1);
    auto chain = lie_chain(V, VectorFieldExpr::parse({"-x1"}, 1), 2);
    EXPECT_EQ(chain[0].poly(), Expr::parse("-2*x1^2", 1).poly());
    EXPECT_EQ(chain[1].poly(), Expr::parse("4*x1^2", 1).poly());
}

TEST(LieChain, ZeroFieldGivesZeros) {
    Expr V = Expr::parse("x1^2 + x2^4", 2);
    auto chain = lie_chain(V, field2("0", "0"), 5);
    ASSERT_EQ(chain.size(), 5u);
    for (const auto& e : chain) EXPECT_TRUE(e.is_zero());
}

TEST(LieChain, LinearPairThirdOrderZeroSet) {
    // the third-order derivative separates the x2 axis from the common
    // tangency line of the linear pair
    Expr V = Expr::parse("x1^2 + x2^2", 2);
    auto chain = lie_chain(V, field2("-x1 - x2", "x1"), 3);
    EXPECT_EQ(chain[2].poly(), Expr::parse("-4*x1^2 - 12*x1*x2 - 4*x2^2", 2).poly());
    // zero set of L^3 meets {x1=0} only at the origin
    for (double s : {0.1, -0.4, 1.0}) {
        double x[2] = {0.0, s};
        EXPECT_GT(std::abs(chain[2].eval(x)), 1e-12);
    }
    EXPECT_THROW(lie_chain(V, field2("min(x1,0)", "0"), 2), NonPolynomialError);
}

TEST(LieChain, MatchesIndependentOracleOnRandomSystems) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int dim = 1 + trial % 3;
        auto nV = test::random_naive_poly(dim, 4, rng);
        std::vector<test::NaivePoly> nf;
        std::vector<Expr> fc;
        for (int j = 0; j < dim; ++j) {
            nf.push_back(test::random_naive_poly(dim, 4, rng));
            fc.push_back(from_naive(nf.back()));
        }
        Expr V = from_naive(nV);
        VectorFieldExpr f(dim, fc);
        auto chain = lie_chain(V, f, 3);
        test::NaivePoly cur = nV;
        for (int k = 0; k < 3; ++k) {
            cur = test::naive_lie(cur, nf);
            std::map<Monomial, Rational> got(chain[k].poly().terms().begin(),
                                             chain[k].poly().terms().end());
            EXPECT_EQ(got, cur.nonzero()) << "trial " << trial << " order " << k + 1;
        }
    }
}

TEST(LieLinearity, RandomPolynomials) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        int dim = 2;
        Expr V = from_naive(test::random_naive_poly(dim, 3, rng));
        Expr W = from_naive(test::random_naive_poly(dim, 3, rng));
        VectorFieldExpr f(dim, {from_naive(test::random_naive_poly(dim, 3, rng)),
                                from_naive(test::random_naive_poly(dim, 3, rng))});
        Rational a(3, 2), b(-7, 3);
        Expr lhs = lie_derivative(
            Expr::from_poly(V.poly().scaled(a) + W.poly().scaled(b)), f);
        PolyQ rhs = lie_derivative(V, f).poly().scaled(a) + lie_derivative(W, f).poly().scaled(b);
        EXPECT_EQ(lhs.poly(), rhs);
    }
}

TEST(LowestHomogeneous, Examples) {
    auto h1 = lowest_homogeneous(Expr::parse("-2*x1^2 - 8*x2^2 - 2*x1^2*x3^4", 3));
    EXPECT_EQ(h1.degree, 2);
    EXPECT_EQ(h1.poly, Expr::parse("-2*x1^2 - 8*x2^2", 3).poly());

    auto h2 = lowest_homogeneous(Expr::parse("x1^3 + x1^5", 1));
    EXPECT_EQ(h2.degree, 3);
    EXPECT_EQ(h2.poly, Expr::parse("x1^3", 1).poly());

    auto h3 = lowest_homogeneous(Expr::parse("0 - (x1 - x3)^2", 3));
    EXPECT_EQ(h3.degree, 2);
    EXPECT_EQ(h3.poly, Expr::parse("-(x1 - x3)^2", 3).poly());

    EXPECT_THROW(lowest_homogeneous(Expr::parse("0", 2)), std::invalid_argument);
    EXPECT_THROW(lowest_homogeneous(Expr::parse("1 + x1", 2)), std::invalid_argument);
}

TEST(LowestHomogeneous, SubtractionLeavesHigherDegrees) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto n = test::random_naive_poly(2, 5, rng);
        n.coef[std::vector<int>{0, 0}] = 0; // force vanishing at 0
        Expr e = from_naive(n);
        if (e.poly().is_zero()) continue;
        auto h = lowest_homogeneous(e);
        PolyQ rest = e.poly() - h.poly;
        EXPECT_TRUE(rest.is_zero() || rest.lowest_degree() > h.degree);
    }
}

TEST(RoundTrip, ParsePrintEvaluate) {
    std::mt19937 rng(5);
    std::vector<std::string> texts = {
        "x1^2 + 2*x2^2",
        "-8*x2^6",
        "x1*cos(x1) - exp(x2)/2",
        "min(x1*x2, 0)^2 + max(x1, x2)",
        "(x1 - x2)^3/4 + 0.5*x1",
    };
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (const auto& t : texts) {
        Expr e = Expr::parse(t, 2);
        Expr back = Expr::parse(e.to_string(), 2);
        if (e.is_polynomial()) {
            EXPECT_EQ(e.poly(), back.poly()) << t;
            continue;
        }
        for (int i = 0; i < 100; ++i) {
            double x[2] = {u(rng), u(rng)};
            EXPECT_NEAR(e.eval(x), back.eval(x), 1e-12) << t;
        }
    }
}

TEST(RoundTrip, PolynomialExactOnRationalPoints) {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        auto n = test::random_naive_poly(3, 4, rng);
        Expr e = from_naive(n);
        Expr back = Expr::parse(e.to_string(), 3);
        ASSERT_TRUE(back.is_polynomial());
        EXPECT_EQ(e.poly(), back.poly());
        std::uniform_int_distribution<int> num(-9, 9);
        for (int i = 0; i < 100; ++i) {
            std::vector<Rational> x{Rational(num(rng), 7), Rational(num(rng), 5),
                                    Rational(num(rng), 3)};
            EXPECT_EQ(e.eval_exact(x), back.eval_exact(x));
        }
    }
}

TEST(Evaluate, ExactAndFastPathsAgree) {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Expr e = Expr::parse("x1^4 - 3*x1*x2^2 + x2^6/8", 2);
    for (int i = 0; i < 200; ++i) {
        double x[2] = {u(rng), u(rng)};
        EXPECT_NEAR(e.evaluate(x), e.eval(x), 1e-10 * (1.0 + std::abs(e.eval(x))));
    }
}
