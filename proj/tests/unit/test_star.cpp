#include "nstar/errors.hpp"
#include "nstar/star.hpp"
#include "nstar/star_oracle.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

using namespace nstar;

namespace {

Polynomial x(std::size_t k, std::size_t n = 3) { return Polynomial::coordinate(n, k); }
Polynomial c(const Complex& v, std::size_t n = 3) { return Polynomial::constant(n, v); }
Complex i_times(const Rational& r) { return Complex(Rational(0), r); }

ThetaConfig theta3(long a, long b, long d) { return ThetaConfig(3, {Rational(a), Rational(b), Rational(d)}); }

Polynomial star(std::initializer_list<Polynomial> fs, const ThetaConfig& cfg) {
    const std::vector<Polynomial> v(fs);
    return star_n(v, cfg);
}

}  // namespace

TEST(Cycle, SigmaPowers) {
    EXPECT_EQ(sigma_power(1, 1, 3), 2u);
    EXPECT_EQ(sigma_power(3, 1, 3), 1u);
    EXPECT_EQ(sigma_power(2, 3, 3), 2u);
    EXPECT_EQ(sigma_power(4, 1, 4), 1u);
    EXPECT_EQ(CyclicPerm(5).apply(2, 7), 4u);
    EXPECT_THROW(sigma_power(0, 1, 3), DomainError);
    EXPECT_THROW(sigma_power(4, 1, 3), DomainError);
    EXPECT_EQ(wrap_index(0, 3), 3u);
    EXPECT_EQ(wrap_index(-1, 3), 2u);
    EXPECT_EQ(wrap_index(7, 3), 1u);
}

TEST(Theta, ValidationAndParsing) {
    EXPECT_THROW(ThetaConfig(2, {Rational(1), Rational(1)}), DomainError);
    EXPECT_THROW(ThetaConfig(3, {Rational(1)}), DomainError);
    EXPECT_EQ(ThetaConfig::parse(3, "1,1/2,-2").theta(2), make_rational(1, 2));
    EXPECT_THROW(ThetaConfig::parse(3, "1,1"), DomainError);
    EXPECT_THROW(ThetaConfig::parse(3, "1,x,1"), DomainError);
    EXPECT_TRUE(ThetaConfig(3, std::vector<Rational>(3)).is_zero());
    EXPECT_EQ(ThetaConfig::ones(4).negated().theta(4), Rational(-1));
}

TEST(POperator, TermsAtNThree) {
    const auto terms = p_operator_terms(theta3(1, 0, 0));
    ASSERT_EQ(terms.size(), 2u);
    EXPECT_EQ(terms[0].slot_derivatives, (std::vector<std::size_t>{1, 2, 3}));
    EXPECT_EQ(terms[0].weight, i_times(make_rational(1, 2)));
    EXPECT_EQ(terms[1].slot_derivatives, (std::vector<std::size_t>{1, 3, 2}));
    EXPECT_EQ(terms[1].weight, i_times(make_rational(-1, 2)));
    EXPECT_TRUE(p_operator_terms(theta3(0, 0, 0)).empty());
}

TEST(POperator, TermsAtNFour) {
    const auto terms = p_operator_terms(ThetaConfig(4, {Rational(1), Rational(0), Rational(0), Rational(0)}));
    ASSERT_EQ(terms.size(), 2u);
    EXPECT_EQ(terms[0].slot_derivatives, (std::vector<std::size_t>{1, 2, 3, 4}));
    EXPECT_EQ(terms[1].slot_derivatives, (std::vector<std::size_t>{1, 4, 3, 2}));
    EXPECT_EQ(p_operator_terms(ThetaConfig::ones(4)).size(), 8u);
}

TEST(StarN, ConstantsMultiply) {
    const Polynomial one = c(Complex(1));
    EXPECT_EQ(star({one, one, one}, theta3(1, 2, 3)), one);
    EXPECT_EQ(star({c(Complex(2)), c(Complex::i()), c(Complex(3))}, theta3(1, 1, 1)), c(Complex(Rational(0), Rational(6))));
}

TEST(StarN, OrderedCoordinateTriple) {
    const ThetaConfig cfg(3, {Rational(5), Rational(7), Rational(11)});
    EXPECT_EQ(star({x(1), x(2), x(3)}, cfg), x(1) * x(2) * x(3) + c(i_times(make_rational(5, 2))));
    EXPECT_EQ(to_string(star({x(1), x(2), x(3)}, ThetaConfig::ones(3))), "x1*x2*x3 + (1/2)i");
}

TEST(StarN, ReversedCoordinateTriple) {
    const ThetaConfig cfg(3, {Rational(5), Rational(7), Rational(11)});
    EXPECT_EQ(star({x(3), x(2), x(1)}, cfg), x(1) * x(2) * x(3) - c(i_times(make_rational(11, 2))));
    EXPECT_EQ(oracle_star_n(std::vector<Polynomial>{x(3), x(2), x(1)}, cfg),
              x(1) * x(2) * x(3) - c(i_times(make_rational(11, 2))));
}

TEST(StarN, ThetaZeroIsPointwise) {
    Rng rng(3);
    const ThetaConfig zero(4, std::vector<Rational>(4));
    for (int t = 0; t < 20; ++t) {
        std::vector<Polynomial> fs;
        Polynomial prod = c(Complex(1), 4);
        for (int s = 0; s < 4; ++s) {
            fs.push_back(gen::random_polynomial(rng, 4));
            prod = prod * fs.back();
        }
        EXPECT_EQ(star_n(fs, zero), prod);
    }
}

TEST(StarN, ArityAndDimensionErrors) {
    const std::vector<Polynomial> two{x(1), x(2)};
    EXPECT_THROW(star_n(two, ThetaConfig::ones(3)), ArityError);
    const std::vector<Polynomial> wrong{x(1, 4), x(2, 4), x(3, 4)};
    EXPECT_THROW(star_n(wrong, ThetaConfig::ones(3)), DomainError);
}

TEST(StarN, ZeroFactorGivesZero) {
    const std::vector<Polynomial> fs{x(1), Polynomial(3), x(3)};
    EXPECT_TRUE(star_n(fs, ThetaConfig::ones(3)).is_zero());
}

TEST(StarN, ExpansionStatsReportOrders) {
    ExpansionStats st;
    const std::vector<Polynomial> fs{x(1) * x(1), x(2) * x(2) * x(2), x(3) * x(3)};
    star_n(fs, ThetaConfig::ones(3), &st);
    EXPECT_EQ(st.order_bound, 2u);
    EXPECT_EQ(st.highest_order, 2u);
}

TEST(StarN, AgreesWithTermByTermOracle) {
    Rng rng(2024);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 3 + static_cast<std::size_t>(rng.uniform(0, 2));
        const ThetaConfig cfg = gen::random_theta(rng, n);
        std::vector<Polynomial> fs;
        for (std::size_t s = 0; s < n; ++s) fs.push_back(gen::random_polynomial(rng, n, 3));
        OracleStats os;
        ASSERT_EQ(star_n(fs, cfg), oracle_star_n(fs, cfg, +1, &os)) << "trial " << t;
        EXPECT_EQ(conjugate_star_n(fs, cfg), oracle_star_n(fs, cfg, -1));
    }
}

TEST(StarN, MultilinearInEverySlot) {
    Rng rng(99);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 3 + static_cast<std::size_t>(rng.uniform(0, 1));
        const ThetaConfig cfg = gen::random_theta(rng, n);
        std::vector<Polynomial> fs;
        for (std::size_t s = 0; s < n; ++s) fs.push_back(gen::random_polynomial(rng, n));
        const auto slot = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(n) - 1));
        const Polynomial extra = gen::random_polynomial(rng, n);
        const Complex lambda(Rational(static_cast<long>(rng.uniform(-3, 3))), Rational(static_cast<long>(rng.uniform(-3, 3))));
        auto a = fs, b = fs;
        b[slot] = extra;
        auto sum = fs;
        sum[slot] = fs[slot] + extra.scaled(lambda);
        EXPECT_EQ(star_n(sum, cfg), star_n(a, cfg) + star_n(b, cfg).scaled(lambda));
    }
}

TEST(Conjugate, NegatesTheta) {
    const ThetaConfig cfg(3, {Rational(2), Rational(3), Rational(4)});
    const std::vector<Polynomial> fs{x(1), x(2), x(3)};
    EXPECT_EQ(conjugate_star_n(fs, cfg), x(1) * x(2) * x(3) - c(i_times(Rational(1))));
    EXPECT_EQ(conjugate_star_n(fs, ThetaConfig(3, std::vector<Rational>(3))), x(1) * x(2) * x(3));
}

TEST(Conjugate, RealInputsConjugateToNegatedTheta) {
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        const ThetaConfig cfg = gen::random_theta(rng, 3);
        std::vector<Polynomial> fs;
        for (int s = 0; s < 3; ++s) fs.push_back(gen::random_polynomial(rng, 3, 4, 3, true));
        EXPECT_EQ(star_n(fs, cfg).conj(), conjugate_star_n(fs, cfg));
    }
}

TEST(Bracket, CoordinateExampleAndAntisymmetry) {
    const ThetaConfig cfg(3, {Rational(3), Rational(5), Rational(7)});
    EXPECT_EQ(bracket3(x(1), x(3), x(2), cfg), c(i_times(Rational(5))));
    Rng rng(17);
    for (int t = 0; t < 20; ++t) {
        const auto f = gen::random_polynomial(rng, 3), h = gen::random_polynomial(rng, 3),
                   g = gen::random_polynomial(rng, 3);
        EXPECT_TRUE((bracket3(f, h, g, cfg) + bracket3(h, f, g, cfg)).is_zero());
        EXPECT_TRUE(bracket3(f, f, g, cfg).is_zero());
    }
    const std::vector<Polynomial> mid{x(2, 4), x(3, 4)};
    EXPECT_TRUE(star_bracket(x(1, 4), x(1, 4), mid, ThetaConfig::ones(4)).is_zero());
    EXPECT_THROW(star_bracket(x(1, 4), x(2, 4), std::vector<Polynomial>{x(2, 4)}, ThetaConfig::ones(4)), ArityError);
}

TEST(Star3, MiddleArgumentConvention) {
    const ThetaConfig cfg(3, {Rational(1), Rational(2), Rational(3)});
    EXPECT_EQ(star3(x(1), x(2), x(3), cfg), star({x(1), x(2), x(3)}, cfg));
}
