#pragma once

// Polynomials over Q(i, sqrt2): value = rational + sqrt2 * surd, both parts
// ordinary Gaussian-rational polynomials. Needed for the complex coordinates
// a_kl = (x_k + i x_l)/sqrt2 without leaving exact arithmetic.

#include "nstar/polynomial.hpp"
#include "nstar/star.hpp"

#include <nlohmann/json.hpp>

#include <complex>
#include <functional>
#include <span>
#include <string>

namespace nstar {

class Root2Polynomial {
  public:
    explicit Root2Polynomial(std::size_t n = 3) : rational_(n), surd_(n) {}
    Root2Polynomial(Polynomial rational)  // NOLINT(google-explicit-constructor)
        : rational_(std::move(rational)), surd_(rational_.dimension()) {}
    Root2Polynomial(Polynomial rational, Polynomial surd);

    const Polynomial& rational() const { return rational_; }
    const Polynomial& surd() const { return surd_; }
    std::size_t dimension() const { return rational_.dimension(); }
    bool is_zero() const { return rational_.is_zero() && surd_.is_zero(); }
    bool is_rational() const { return surd_.is_zero(); }

    Root2Polynomial conj() const { return {rational_.conj(), surd_.conj()}; }
    Root2Polynomial scaled(const Complex& c) const { return {rational_.scaled(c), surd_.scaled(c)}; }
    /// Multiplies by sqrt2.
    Root2Polynomial times_root2() const { return {surd_.scaled(Complex(2)), rational_}; }

    /// Numeric value at a real point (double precision).
    std::complex<double> evaluate(std::span<const double> point) const;

    Root2Polynomial& operator+=(const Root2Polynomial& o);
    Root2Polynomial& operator-=(const Root2Polynomial& o);

    friend Root2Polynomial operator+(Root2Polynomial a, const Root2Polynomial& b) { return a += b; }
    friend Root2Polynomial operator-(Root2Polynomial a, const Root2Polynomial& b) { return a -= b; }
    friend Root2Polynomial operator*(const Root2Polynomial& a, const Root2Polynomial& b);
    friend bool operator==(const Root2Polynomial& a, const Root2Polynomial& b) {
        return a.rational_ == b.rational_ && a.surd_ == b.surd_;
    }
    friend bool operator!=(const Root2Polynomial& a, const Root2Polynomial& b) { return !(a == b); }

  private:
    Polynomial rational_;
    Polynomial surd_;
};

using StarEngine = std::function<Polynomial(std::span<const Polynomial>, const ThetaConfig&)>;

/// The multinomial engine (star_n) as a StarEngine.
StarEngine default_star_engine();

/// Extends any star engine to Q(sqrt2) inputs by multilinearity.
Root2Polynomial star_n(std::span<const Root2Polynomial> factors, const ThetaConfig& cfg,
                       const StarEngine& engine);
Root2Polynomial star_n(std::span<const Root2Polynomial> factors, const ThetaConfig& cfg);

/// "P" when rational, "P + sqrt2*(S)" otherwise.
std::string to_string(const Root2Polynomial& p);

/// Plain polynomial array when rational, {"rational": [...], "sqrt2": [...]} otherwise.
nlohmann::ordered_json to_json(const Root2Polynomial& p);

/// (a_kl, abar_kl) = ((x_k + i x_l)/sqrt2, (x_k - i x_l)/sqrt2). Throws DomainError for k == l.
std::pair<Root2Polynomial, Root2Polynomial> complex_coords(std::size_t n, std::size_t k, std::size_t l);

}  // namespace nstar
