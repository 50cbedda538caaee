#include "nstar/errors.hpp"
#include "nstar/oscillator.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace nstar;

namespace {

Polynomial x(std::size_t k, std::size_t n = 3) { return Polynomial::coordinate(n, k); }

ThetaConfig theta3(long a, long b, long c) { return ThetaConfig(3, {Rational(a), Rational(b), Rational(c)}); }

}  // namespace

TEST(Hamiltonian, FreeAndPairCoupling) {
    HamiltonianSpec spec;
    EXPECT_EQ(build_hamiltonian(spec), radius_squared(3));
    spec.set_coupling({1, 2}, Rational(1));
    EXPECT_EQ(build_hamiltonian(spec), radius_squared(3) + x(1) * x(2));
    EXPECT_THROW(spec.set_coupling({2, 1}, Rational(1)), DomainError);
    EXPECT_THROW(spec.set_coupling({1, 4}, Rational(1)), DomainError);
    EXPECT_EQ(spec.levi_civita_rank(), 2u);
}

TEST(Hamiltonian, QuarticCouplingAtFourAndInsertionOrder) {
    HamiltonianSpec a;
    a.n = 4;
    a.set_coupling({1, 2, 3, 4}, make_rational(1, 2));
    a.set_coupling({2, 3}, Rational(-1));
    HamiltonianSpec b;
    b.n = 4;
    b.set_coupling({2, 3}, Rational(-1));
    b.set_coupling({1, 2, 3, 4}, make_rational(1, 2));
    EXPECT_EQ(a.levi_civita_rank(), 4u);
    EXPECT_EQ(build_hamiltonian(a), build_hamiltonian(b));
    const Polynomial expect = radius_squared(4) + (x(1, 4) * x(2, 4) * x(3, 4) * x(4, 4)).scaled(Complex(make_rational(1, 2))) -
                              x(2, 4) * x(3, 4);
    EXPECT_EQ(build_hamiltonian(a), expect);
}

TEST(Hamiltonian, DiagonalForm) {
    HamiltonianSpec spec;
    spec.diag[0] = {Rational(1), Rational(1), Rational(1)};
    spec.diag[2] = {Rational(0), Rational(0), Rational(0)};
    EXPECT_EQ(build_diagonal_hamiltonian(spec), radius_squared(3));
    spec.diag[2] = {Rational(1), Rational(0), Rational(0)};
    EXPECT_EQ(build_diagonal_hamiltonian(spec), radius_squared(3) + pow(x(1), 4));
}

TEST(Hamiltonian, JsonRoundTrip) {
    HamiltonianSpec spec;
    spec.set_coupling({1, 3}, make_rational(-3, 4));
    spec.diag[0] = {Rational(1), Rational(2), Rational(3)};
    const HamiltonianSpec back = HamiltonianSpec::from_json(nlohmann::json::parse(spec.to_json().dump()));
    EXPECT_EQ(build_hamiltonian(back), build_hamiltonian(spec));
    EXPECT_EQ(back.diag, spec.diag);
}

TEST(Energy, PrintedFormula) {
    const ThetaConfig th = theta3(3, 5, 7);
    HamiltonianSpec free;
    EXPECT_EQ(energy(1, QuantumNumber{{0, 0, 0}}, th, free), make_rational(9, 2));
    EXPECT_EQ(energy(2, QuantumNumber{{1, 2, 0}}, th, free), make_rational(15, 2));

    HamiltonianSpec spec;
    spec.diag[0] = {Rational(1), Rational(0), Rational(0)};
    EXPECT_EQ(energy(1, QuantumNumber{{2, 0, 0}}, ThetaConfig::ones(3), spec), make_rational(7, 2));
    EXPECT_EQ(energy(1, QuantumNumber{{1, 1, 0}}, th, spec), make_rational(21, 2));
    EXPECT_EQ(energy(1, QuantumNumber{{0, 0, 0}}, th, spec), make_rational(9, 2));
    EXPECT_THROW(energy(4, QuantumNumber{{0, 0, 0}}, th, spec), DomainError);
}

TEST(Energy, LinearInTheta) {
    HamiltonianSpec spec;
    spec.diag[0] = {Rational(2), Rational(1), Rational(1)};
    spec.diag[2] = {Rational(1), make_rational(1, 3), Rational(0)};
    const QuantumNumber nb{{1, 0, 2}};
    const Rational e1 = energy(2, nb, theta3(1, 1, 1), spec);
    const Rational e5 = energy(2, nb, theta3(1, 5, 1), spec);
    EXPECT_EQ(e5, 5 * e1);
}

TEST(Hermite, RecurrenceAndGroundStates) {
    EXPECT_EQ(hermite_coefficients(0), std::vector<Rational>{Rational(1)});
    EXPECT_EQ(hermite_coefficients(2), (std::vector<Rational>{Rational(-2), Rational(0), Rational(4)}));
    for (unsigned k = 1; k < 10; ++k) {
        const auto hp = hermite_coefficients(k + 1), h = hermite_coefficients(k), hm = hermite_coefficients(k - 1);
        for (std::size_t j = 0; j < hp.size(); ++j) {
            Rational rhs = 0;
            if (j >= 1 && j - 1 < h.size()) rhs += 2 * h[j - 1];
            if (j < hm.size()) rhs -= 2 * Rational(k) * hm[j];
            EXPECT_EQ(hp[j], rhs) << "k=" << k << " j=" << j;
        }
    }
    const Polynomial r2 = radius_squared(3);
    EXPECT_EQ(ground_state(0, 3).poly, Polynomial::constant(3, Complex(1)));
    EXPECT_EQ(ground_state(1, 3).poly, r2);
    EXPECT_EQ(ground_state(2, 3).poly, r2 * r2 - Polynomial::constant(3, Complex(2)));
    EXPECT_EQ(ground_state(2, 3).weight, 1u);
}

TEST(PolyGaussClass, DerivativeRule) {
    const PolyGauss f{x(1) * x(2), 1};
    const PolyGauss d = f.derivative(1);
    EXPECT_EQ(d.poly, x(2) - x(1) * x(1) * x(2));
    const PolyGauss g{x(1), 3};
    EXPECT_EQ(g.derivative(1).poly, Polynomial::constant(3, Complex(1)) - (x(1) * x(1)).scaled(Complex(3)));
    const PolyGauss plain{x(1) * x(1), 0};
    EXPECT_EQ(plain.derivative(1).poly, x(1).scaled(Complex(2)));
}

TEST(TruncatedStar, OrderZeroAndThetaZeroArePointwise) {
    Rng rng(4);
    for (int t = 0; t < 5; ++t) {
        std::vector<PolyGauss> fs;
        for (int s = 0; s < 3; ++s) fs.push_back(PolyGauss{gen::random_polynomial(rng, 3, 2, 2), s == 0 ? 0u : 1u});
        const PolyGauss pw = pointwise_product(fs);
        EXPECT_EQ(pw.weight, 2u);
        EXPECT_EQ(star_polygauss_truncated(fs, theta3(1, 2, 3), 0).sum, pw);
        const auto zero = star_polygauss_truncated(fs, theta3(0, 0, 0), 3);
        EXPECT_EQ(zero.sum, pw);
        EXPECT_EQ(zero.last_increment_magnitude, 0.0);
    }
}

TEST(TruncatedStar, ConstantsAtOrderOne) {
    // Every P term hits three Gaussians: forward and reverse both give
    // -x1 x2 x3 w^3, so they cancel.
    const std::vector<PolyGauss> fs(3, PolyGauss{Polynomial::constant(3, Complex(2)), 1});
    const auto r = star_polygauss_truncated(fs, theta3(1, 2, 3), 1);
    ASSERT_EQ(r.increments.size(), 2u);
    EXPECT_TRUE(r.increments[1].is_zero());
    EXPECT_EQ(r.sum.poly, Polynomial::constant(3, Complex(8)));
}

TEST(TruncatedStar, MatchesPolynomialStarWithoutWeights) {
    Rng rng(13);
    for (int t = 0; t < 5; ++t) {
        const ThetaConfig th = gen::random_theta(rng, 3);
        std::vector<Polynomial> ps;
        std::vector<PolyGauss> fs;
        for (int s = 0; s < 3; ++s) {
            ps.push_back(gen::random_polynomial(rng, 3, 2, 2));
            fs.push_back(PolyGauss{ps.back(), 0});
        }
        EXPECT_EQ(star_polygauss_truncated(fs, th, 6).sum.poly, star_n(ps, th));
    }
}

TEST(Residual, OrderZeroHandValue) {
    HamiltonianSpec spec;
    const std::vector<std::vector<Rational>> pts{{Rational(1), make_rational(1, 2), Rational(0)},
                                                 {make_rational(-3, 4), Rational(2), Rational(1)}};
    const auto rep = residual_report(spec, ThetaConfig::ones(3), 0, 0, pts, 1, 2);
    ASSERT_EQ(rep.rows.size(), 2u);
    for (std::size_t p = 0; p < pts.size(); ++p) {
        const double x1 = pts[p][0].get_d(), x2 = pts[p][1].get_d(), x3 = pts[p][2].get_d();
        const double r2 = x1 * x1 + x2 * x2 + x3 * x3;
        // |a_12| psi0^2
        const double expect = std::sqrt((x1 * x1 + x2 * x2) / 2) * std::exp(-r2);
        EXPECT_EQ(rep.rows[p].ground_poly_modulus2, pts[p][0] * pts[p][0] + pts[p][1] * pts[p][1]);
        EXPECT_NEAR(rep.rows[p].ground_residual, expect, 1e-14);
    }
    EXPECT_EQ(rep.energy, make_rational(3, 2));
}

TEST(Residual, FullReportShape) {
    HamiltonianSpec spec;
    spec.set_coupling({1, 2}, make_rational(1, 2));
    const auto pts = default_sample_points(3, 20, 7);
    ASSERT_EQ(pts.size(), 20u);
    for (const auto& p : pts) {
        Rational r2 = 0;
        for (const auto& c : p) r2 += c * c;
        EXPECT_LE(r2, 16);
    }
    const auto rep = residual_report(spec, ThetaConfig::ones(3), 1, 6, pts);
    EXPECT_EQ(rep.rows.size(), 7u * 20u);
    EXPECT_EQ(rep.summary.size(), 7u);
    EXPECT_FALSE(rep.ground_trend.empty());
    EXPECT_FALSE(to_csv(rep).empty());
    EXPECT_TRUE(to_json(rep).contains("rows"));
    EXPECT_EQ(default_sample_points(3, 20, 7), pts);
}

TEST(Residual, RejectsFarPoints) {
    HamiltonianSpec spec;
    const std::vector<std::vector<Rational>> far{{Rational(4), make_rational(1, 4), Rational(0)}};
    EXPECT_THROW(residual_report(spec, ThetaConfig::ones(3), 0, 1, far), DomainError);
    const std::vector<std::vector<Rational>> edge{{Rational(4), Rational(0), Rational(0)}};
    EXPECT_NO_THROW(residual_report(spec, ThetaConfig::ones(3), 0, 1, edge));
}
