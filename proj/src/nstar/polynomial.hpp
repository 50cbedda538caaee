#pragma once

// Multivariate polynomials in x_1..x_n with exact Gaussian-rational
// coefficients. Canonical form: no zero coefficient is ever stored and terms
// iterate in graded-lex order (higher total degree first, then x1 > x2 > ...).

#include "nstar/scalar.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace nstar {

/// Exponent vector (e_1, ..., e_n) of the monomial x_1^{e_1} ... x_n^{e_n}.
using MultiIndex = std::vector<unsigned>;

unsigned total_degree(const MultiIndex& e);

/// Strict weak order: larger total degree first, then lexicographically larger.
struct GradedLexGreater {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

class Polynomial {
  public:
    using TermMap = std::map<MultiIndex, Complex, GradedLexGreater>;

    explicit Polynomial(std::size_t n = 3);

    static Polynomial constant(std::size_t n, const Complex& c);
    /// x_axis, axis is 1-based.
    static Polynomial coordinate(std::size_t n, std::size_t axis);
    static Polynomial monomial(std::size_t n, MultiIndex exponents, const Complex& c = Complex(1));

    std::size_t dimension() const { return n_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// -1 for the zero polynomial.
    int degree() const;
    /// Highest exponent of x_axis appearing in any term (0 for constants).
    unsigned degree_in(std::size_t axis) const;
    bool has_real_coefficients() const;

    /// Coefficient of a monomial (zero when absent).
    Complex coefficient(const MultiIndex& e) const;

    /// Adds c * x^e, merging with an existing term and purging zeros.
    void add_term(const MultiIndex& e, const Complex& c);

    Polynomial derivative(std::size_t axis) const;
    Polynomial conj() const;
    Polynomial scaled(const Complex& c) const;

    /// Keeps only terms whose predicate returns true.
    template <class Pred>
    Polynomial filtered(Pred&& keep) const {
        Polynomial out(n_);
        for (const auto& [e, c] : terms_)
            if (keep(e, c)) out.terms_.emplace(e, c);
        return out;
    }

    Complex evaluate(std::span<const Rational> point) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Complex& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(const Polynomial& a) { return a.scaled(Complex(-1)); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Complex& c) { return a *= c; }
    friend Polynomial operator*(const Complex& c, Polynomial a) { return a *= c; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  private:
    void check_axis(std::size_t axis) const;

    std::size_t n_;
    TermMap terms_;
};

Polynomial pow(const Polynomial& p, unsigned k);

/// |x|^2 = x_1^2 + ... + x_n^2.
Polynomial radius_squared(std::size_t n);

/// Canonical text: "x1*x2*x3 + (1/2)i", "0" for zero.
std::string to_string(const Polynomial& p);

/// Graded-lex JSON array of {exponents, re_num, re_den, im_num, im_den}.
/// Numerators/denominators are JSON integers when they fit in int64 and
/// decimal strings otherwise.
nlohmann::ordered_json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j, std::size_t n);

std::string monomial_text(const MultiIndex& e);

}  // namespace nstar
