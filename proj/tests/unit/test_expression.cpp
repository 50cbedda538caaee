#include "nstar/errors.hpp"
#include "nstar/expression.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

using namespace nstar;

namespace {

Polynomial x(std::size_t k, std::size_t n = 3) { return Polynomial::coordinate(n, k); }

Root2Polynomial poly_of(std::string_view text, std::size_t n = 3) {
    const LoweredValue v = evaluate_expression(text, n);
    EXPECT_FALSE(v.is_wave);
    return v.poly;
}

void expect_parse_error(std::string_view text, std::size_t line, std::size_t column, std::size_t n = 3) {
    try {
        parse_expression(text, n);
        ADD_FAILURE() << "no error for " << text;
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), line) << text;
        EXPECT_EQ(e.column(), column) << text;
    }
}

}  // namespace

TEST(Parser, GrammarExamples) {
    EXPECT_EQ(poly_of("x1*x2 + 2*x3^2"), Root2Polynomial(x(1) * x(2) + (x(3) * x(3)).scaled(Complex(2))));
    EXPECT_EQ(poly_of("a(1,2)*abar(1,2)"),
              Root2Polynomial((x(1) * x(1) + x(2) * x(2)).scaled(Complex(make_rational(1, 2)))));
    EXPECT_EQ(poly_of("  x1 -\n x1 "), Root2Polynomial(Polynomial(3)));
    EXPECT_EQ(poly_of("-3/4i*x2"), Root2Polynomial(x(2).scaled(Complex(Rational(0), make_rational(-3, 4)))));
    EXPECT_EQ(poly_of("(1 + 2i)*x1 + i"), Root2Polynomial(x(1).scaled(Complex(1, 2)) + Polynomial::constant(3, Complex::i())));
    EXPECT_EQ(poly_of("(x1 + x2)^2 - x1^2 - x2^2"), Root2Polynomial((x(1) * x(2)).scaled(Complex(2))));
    EXPECT_EQ(poly_of("x1^0"), Root2Polynomial(Polynomial::constant(3, Complex(1))));
}

TEST(Parser, ErrorsCarryPositions) {
    EXPECT_THROW(parse_expression("x4", 3), ParseError);
    // positions point at the offending token
    expect_parse_error("x4", 1, 2);
    expect_parse_error("x1 +\n  x0", 2, 4);
    expect_parse_error("x1 + * x2", 1, 6);
    expect_parse_error("a(2,2)", 1, 3);
    expect_parse_error("wave(1,2)", 1, 1);
    expect_parse_error("y1", 1, 1);
    expect_parse_error("(x1", 1, 4);
    expect_parse_error("x1 x2", 1, 4);
    expect_parse_error("1/0", 1, 3);
    expect_parse_error("x1^1000", 1, 4);
    EXPECT_THROW(parse_expression("", 3), ParseError);
    EXPECT_NO_THROW(parse_expression("x4", 4));
}

TEST(Parser, MixingClassesIsRejected) {
    EXPECT_THROW(evaluate_expression("x1 * wave(1,0,0)", 3), ParseError);
    EXPECT_THROW(evaluate_expression("wave(1,0,0) + a(1,2)", 3), ParseError);
    EXPECT_THROW(evaluate_expression("wave(1,0,0)^2 + x1", 3), ParseError);
}

TEST(Parser, WaveValues) {
    const LoweredValue v = evaluate_expression("2*wave(1,0,0)*wave(0,1.5,0) - 1/2i*wave(0,0,0)", 3);
    ASSERT_TRUE(v.is_wave);
    EXPECT_EQ(to_string(v.wave), "(0 - 0.5i)*wave(0,0,0) + (2 + 0i)*wave(1,1.5,0)");
    EXPECT_THROW(parse_expression("1.5*x1", 3), ParseError);
}

TEST(Printer, MinimalParentheses) {
    EXPECT_EQ(print(parse_expression("((x1)) + (x2 * x3)", 3)), "x1 + x2*x3");
    EXPECT_EQ(print(parse_expression("(x1 + x2) * x3", 3)), "(x1 + x2)*x3");
    EXPECT_EQ(print(parse_expression("x1 - (x2 - x3)", 3)), "x1 - (x2 - x3)");
    EXPECT_EQ(print(parse_expression("(x1*x2)^3", 3)), "(x1*x2)^3");
    EXPECT_EQ(print(parse_expression("abar(1,3)^2 * 3/4i", 3)), "abar(1,3)^2*3/4i");
    EXPECT_EQ(print(parse_expression("sqrt 2 * x1", 3)), "sqrt2*x1");
    EXPECT_EQ(poly_of("sqrt2^2"), Root2Polynomial(Polynomial::constant(3, Complex(2))));
}

TEST(Printer, RandomTreesRoundTrip) {
    Rng rng(99);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = t % 2 == 0 ? 3 : 4;
        const Expression e = gen::random_expression(rng, n, 4);
        const std::string text = print(e);
        ASSERT_EQ(parse_expression(text, n), e) << text;
    }
    for (int t = 0; t < 200; ++t) {
        const Expression e = gen::random_expression(rng, 3, 3, true);
        const std::string text = print(e);
        ASSERT_EQ(parse_expression(text, 3), e) << text;
    }
}

TEST(Printer, CanonicalPolynomialTextParsesBack) {
    Rng rng(17);
    for (int t = 0; t < 200; ++t) {
        const Polynomial p = gen::random_polynomial(rng, 3, 4, 4);
        EXPECT_EQ(poly_of(to_string(p)), Root2Polynomial(p)) << to_string(p);
        const Root2Polynomial r(gen::random_polynomial(rng, 3), gen::random_polynomial(rng, 3));
        EXPECT_EQ(poly_of(to_string(r)), r) << to_string(r);
    }
}
