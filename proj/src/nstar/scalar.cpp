#include "nstar/scalar.hpp"

#include "nstar/errors.hpp"

#include <cctype>

namespace nstar {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw DomainError("malformed rational '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    Rational r(n, d);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

std::string rational_to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

bool complex_is_negative(const Complex& z) {
    if (z.is_real()) return sgn(z.re) < 0;
    if (sgn(z.re) == 0) return sgn(z.im) < 0;
    return false;
}

std::string complex_magnitude_text(const Complex& z) {
    auto imag_text = [](const Rational& b) {
        Rational mag = abs(b);
        if (mag == 1) return std::string("i");
        if (mag.get_den() == 1) return mag.get_num().get_str() + "i";
        return "(" + rational_to_string(mag) + ")i";
    };
    if (z.is_real()) return rational_to_string(abs(z.re));
    if (sgn(z.re) == 0) return imag_text(z.im);
    return "(" + rational_to_string(z.re) + (sgn(z.im) < 0 ? " - " : " + ") + imag_text(z.im) + ")";
}

}  // namespace nstar
