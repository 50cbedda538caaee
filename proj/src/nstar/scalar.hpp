#pragma once

// Exact scalars: GMP rationals and Gaussian rationals (a + b i, a, b in Q).

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace nstar {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q". Throws DomainError on malformed input or q == 0.
Rational parse_rational(std::string_view text);

/// num/den in canonical form. den must be nonzero.
inline Rational make_rational(long num, long den) {
    Rational r{mpz_class(num), mpz_class(den)};
    r.canonicalize();
    return r;
}

/// "p" when the denominator is 1, "p/q" otherwise.
std::string rational_to_string(const Rational& r);

struct Complex {
    Rational re;
    Rational im;

    Complex() = default;
    Complex(Rational real) : re(std::move(real)) {}  // NOLINT(google-explicit-constructor)
    Complex(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}
    Complex(long real) : re(real) {}  // NOLINT(google-explicit-constructor)

    static Complex i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    Complex conj() const { return {re, -im}; }

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    Complex& operator/=(const Rational& d) { re /= d; im /= d; return *this; }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Rational& d) { return a /= d; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
};

/// |z|^2, exact.
inline Rational norm2(const Complex& z) { return z.re * z.re + z.im * z.im; }

/// Coefficient rendering used by the canonical polynomial printer:
/// "3", "1/2", "i", "2i", "(1/2)i", "(1 + 2i)". Sign of a purely real or purely
/// imaginary value is NOT included (callers emit it as a separate +/- token).
std::string complex_magnitude_text(const Complex& z);

/// True when the value prints with a leading minus (purely real or purely
/// imaginary negative values).
bool complex_is_negative(const Complex& z);

}  // namespace nstar
