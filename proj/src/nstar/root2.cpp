#include "nstar/root2.hpp"

#include "nstar/errors.hpp"

#include <cmath>
#include <numbers>

namespace nstar {

Root2Polynomial::Root2Polynomial(Polynomial rational, Polynomial surd)
    : rational_(std::move(rational)), surd_(std::move(surd)) {
    if (rational_.dimension() != surd_.dimension()) throw DomainError("dimension mismatch in Q(sqrt2) polynomial");
}

Root2Polynomial& Root2Polynomial::operator+=(const Root2Polynomial& o) {
    rational_ += o.rational_;
    surd_ += o.surd_;
    return *this;
}

Root2Polynomial& Root2Polynomial::operator-=(const Root2Polynomial& o) {
    rational_ -= o.rational_;
    surd_ -= o.surd_;
    return *this;
}

Root2Polynomial operator*(const Root2Polynomial& a, const Root2Polynomial& b) {
    Polynomial r = a.rational_ * b.rational_ + (a.surd_ * b.surd_).scaled(Complex(2));
    Polynomial s = a.rational_ * b.surd_ + a.surd_ * b.rational_;
    return {std::move(r), std::move(s)};
}

std::complex<double> Root2Polynomial::evaluate(std::span<const double> point) const {
    auto eval = [&](const Polynomial& p) {
        std::complex<double> sum;
        for (const auto& [e, c] : p.terms()) {
            double m = 1.0;
            for (std::size_t k = 0; k < e.size(); ++k) m *= std::pow(point[k], static_cast<int>(e[k]));
            sum += std::complex<double>(c.re.get_d(), c.im.get_d()) * m;
        }
        return sum;
    };
    if (point.size() != dimension()) throw DomainError("evaluation point has wrong dimension");
    return eval(rational_) + std::numbers::sqrt2 * eval(surd_);
}

StarEngine default_star_engine() {
    return [](std::span<const Polynomial> f, const ThetaConfig& cfg) { return star_n(f, cfg); };
}

Root2Polynomial star_n(std::span<const Root2Polynomial> factors, const ThetaConfig& cfg,
                       const StarEngine& engine) {
    if (factors.size() != cfg.n()) throw ArityError("star product expects n factors");
    const std::size_t n = cfg.n();
    Root2Polynomial total(n);
    std::vector<Polynomial> pick(n, Polynomial(n));
    // Each slot contributes either its rational or its sqrt2 part.
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        unsigned surd_count = 0;
        bool vanished = false;
        for (std::size_t j = 0; j < n && !vanished; ++j) {
            const bool surd = (mask >> j) & 1u;
            pick[j] = surd ? factors[j].surd() : factors[j].rational();
            surd_count += surd;
            vanished = pick[j].is_zero();
        }
        if (vanished) continue;
        // sqrt2^c = 2^(c/2) or 2^((c-1)/2) * sqrt2
        Polynomial value = engine(pick, cfg).scaled(Complex(Rational(1u << (surd_count / 2))));
        total += (surd_count % 2 == 0) ? Root2Polynomial(value, Polynomial(n))
                                       : Root2Polynomial(Polynomial(n), value);
    }
    return total;
}

Root2Polynomial star_n(std::span<const Root2Polynomial> factors, const ThetaConfig& cfg) {
    return star_n(factors, cfg, default_star_engine());
}

std::string to_string(const Root2Polynomial& p) {
    if (p.is_rational()) return to_string(p.rational());
    if (p.rational().is_zero()) return "sqrt2*(" + to_string(p.surd()) + ")";
    return to_string(p.rational()) + " + sqrt2*(" + to_string(p.surd()) + ")";
}

nlohmann::ordered_json to_json(const Root2Polynomial& p) {
    if (p.is_rational()) return to_json(p.rational());
    nlohmann::ordered_json j;
    j["rational"] = to_json(p.rational());
    j["sqrt2"] = to_json(p.surd());
    return j;
}

std::pair<Root2Polynomial, Root2Polynomial> complex_coords(std::size_t n, std::size_t k, std::size_t l) {
    if (k == l) throw DomainError("complex coordinate needs distinct axes");
    const Polynomial xk = Polynomial::coordinate(n, k);
    const Polynomial xl = Polynomial::coordinate(n, l);
    const Rational half(1, 2);
    // 1/sqrt2 = sqrt2/2
    Polynomial a = (xk + xl.scaled(Complex::i())).scaled(Complex(half));
    Polynomial abar = (xk - xl.scaled(Complex::i())).scaled(Complex(half));
    return {Root2Polynomial(Polynomial(n), std::move(a)), Root2Polynomial(Polynomial(n), std::move(abar))};
}

}  // namespace nstar
