#include "nstar/polynomial.hpp"

#include "nstar/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace nstar {

unsigned total_degree(const MultiIndex& e) { return std::accumulate(e.begin(), e.end(), 0u); }

bool GradedLexGreater::operator()(const MultiIndex& a, const MultiIndex& b) const {
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Polynomial::Polynomial(std::size_t n) : n_(n) {
    if (n == 0) throw DomainError("polynomial dimension must be positive");
}

Polynomial Polynomial::constant(std::size_t n, const Complex& c) {
    Polynomial p(n);
    p.add_term(MultiIndex(n, 0), c);
    return p;
}

Polynomial Polynomial::coordinate(std::size_t n, std::size_t axis) {
    Polynomial p(n);
    p.check_axis(axis);
    MultiIndex e(n, 0);
    e[axis - 1] = 1;
    p.add_term(e, Complex(1));
    return p;
}

Polynomial Polynomial::monomial(std::size_t n, MultiIndex exponents, const Complex& c) {
    if (exponents.size() != n) throw DomainError("exponent vector length does not match dimension");
    Polynomial p(n);
    p.add_term(exponents, c);
    return p;
}

void Polynomial::check_axis(std::size_t axis) const {
    if (axis < 1 || axis > n_)
        throw DomainError("axis " + std::to_string(axis) + " out of range 1.." + std::to_string(n_));
}

int Polynomial::degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(total_degree(terms_.begin()->first));
}

unsigned Polynomial::degree_in(std::size_t axis) const {
    check_axis(axis);
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[axis - 1]);
    return d;
}

bool Polynomial::has_real_coefficients() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
}

Complex Polynomial::coefficient(const MultiIndex& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Complex() : it->second;
}

void Polynomial::add_term(const MultiIndex& e, const Complex& c) {
    if (e.size() != n_) throw DomainError("exponent vector length does not match dimension");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial Polynomial::derivative(std::size_t axis) const {
    check_axis(axis);
    Polynomial out(n_);
    for (const auto& [e, c] : terms_) {
        const unsigned k = e[axis - 1];
        if (k == 0) continue;
        MultiIndex d = e;
        d[axis - 1] = k - 1;
        // distinct source monomials map to distinct targets
        out.terms_.emplace(std::move(d), c * Complex(Rational(k)));
    }
    return out;
}

Polynomial Polynomial::conj() const {
    Polynomial out(n_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, c.conj());
    return out;
}

Polynomial Polynomial::scaled(const Complex& c) const {
    Polynomial out = *this;
    out *= c;
    return out;
}

Complex Polynomial::evaluate(std::span<const Rational> point) const {
    if (point.size() != n_) throw DomainError("evaluation point has wrong dimension");
    Complex sum;
    for (const auto& [e, c] : terms_) {
        Rational m(1);
        for (std::size_t k = 0; k < n_; ++k)
            for (unsigned p = 0; p < e[k]; ++p) m *= point[k];
        sum += c * Complex(m);
    }
    return sum;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.n_ != n_) throw DomainError("dimension mismatch in polynomial addition");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.n_ != n_) throw DomainError("dimension mismatch in polynomial subtraction");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Complex& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.n_ != b.n_) throw DomainError("dimension mismatch in polynomial product");
    Polynomial out(a.n_);
    MultiIndex e(a.n_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t k = 0; k < a.n_; ++k) e[k] = ea[k] + eb[k];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Polynomial pow(const Polynomial& p, unsigned k) {
    Polynomial result = Polynomial::constant(p.dimension(), Complex(1));
    Polynomial base = p;
    while (k > 0) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k > 0) base = base * base;
    }
    return result;
}

Polynomial radius_squared(std::size_t n) {
    Polynomial r(n);
    for (std::size_t k = 1; k <= n; ++k) {
        MultiIndex e(n, 0);
        e[k - 1] = 2;
        r.add_term(e, Complex(1));
    }
    return r;
}

std::string monomial_text(const MultiIndex& e) {
    std::string out;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (!out.empty()) out += '*';
        out += 'x' + std::to_string(k + 1);
        if (e[k] > 1) out += '^' + std::to_string(e[k]);
    }
    return out;
}

std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        const bool negative = complex_is_negative(c);
        if (first) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        const std::string mono = monomial_text(e);
        const std::string mag = complex_magnitude_text(c);
        if (mono.empty()) {
            out += mag;
        } else if (mag == "1") {
            out += mono;
        } else {
            out += mag + "*" + mono;
        }
    }
    return out;
}

namespace {

nlohmann::ordered_json big_to_json(const mpz_class& z) {
    if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
    return z.get_str();
}

mpz_class big_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()), 10);
    if (j.is_string()) return mpz_class(j.get<std::string>(), 10);
    throw DomainError("expected integer or decimal string in polynomial JSON");
}

}  // namespace

nlohmann::ordered_json to_json(const Polynomial& p) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [e, c] : p.terms()) {
        nlohmann::ordered_json t;
        t["exponents"] = e;
        t["re_num"] = big_to_json(c.re.get_num());
        t["re_den"] = big_to_json(c.re.get_den());
        t["im_num"] = big_to_json(c.im.get_num());
        t["im_den"] = big_to_json(c.im.get_den());
        arr.push_back(std::move(t));
    }
    return arr;
}

Polynomial polynomial_from_json(const nlohmann::json& j, std::size_t n) {
    if (!j.is_array()) throw DomainError("polynomial JSON must be an array");
    Polynomial p(n);
    for (const auto& t : j) {
        auto e = t.at("exponents").get<MultiIndex>();
        mpz_class rd = big_from_json(t.at("re_den"));
        mpz_class id = big_from_json(t.at("im_den"));
        if (rd == 0 || id == 0) throw DomainError("zero denominator in polynomial JSON");
        Rational re(big_from_json(t.at("re_num")), rd);
        Rational im(big_from_json(t.at("im_num")), id);
        re.canonicalize();
        im.canonicalize();
        p.add_term(e, Complex(re, im));
    }
    return p;
}

}  // namespace nstar
