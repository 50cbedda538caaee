#include "nstar/star.hpp"

#include "nstar/errors.hpp"
#include "nstar/expansion.hpp"

#include <algorithm>
#include <sstream>

namespace nstar {

ThetaConfig::ThetaConfig(std::size_t n, std::vector<Rational> theta) : n_(n), theta_(std::move(theta)) {
    if (n < 3) throw DomainError("dimension must be at least 3, got " + std::to_string(n));
    if (theta_.size() != n)
        throw DomainError("theta has " + std::to_string(theta_.size()) + " components, expected " +
                          std::to_string(n));
}

ThetaConfig ThetaConfig::ones(std::size_t n) { return ThetaConfig(n, std::vector<Rational>(n, Rational(1))); }

ThetaConfig ThetaConfig::parse(std::size_t n, std::string_view csv) {
    std::vector<Rational> theta;
    std::size_t start = 0;
    while (start <= csv.size()) {
        auto comma = csv.find(',', start);
        if (comma == std::string_view::npos) comma = csv.size();
        std::string_view item = csv.substr(start, comma - start);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        theta.push_back(parse_rational(item));
        start = comma + 1;
    }
    return ThetaConfig(n, std::move(theta));
}

const Rational& ThetaConfig::theta(std::size_t k) const {
    if (k < 1 || k > n_) throw DomainError("theta index out of range");
    return theta_[k - 1];
}

ThetaConfig ThetaConfig::negated() const {
    std::vector<Rational> t;
    t.reserve(n_);
    for (const auto& v : theta_) t.emplace_back(-v);
    return ThetaConfig(n_, std::move(t));
}

bool ThetaConfig::is_zero() const {
    return std::all_of(theta_.begin(), theta_.end(), [](const Rational& v) { return sgn(v) == 0; });
}

CyclicPerm::CyclicPerm(std::size_t n) : n_(n) {
    if (n == 0) throw DomainError("cyclic permutation needs n >= 1");
}

std::size_t CyclicPerm::apply(std::size_t k, std::size_t p) const {
    if (k < 1 || k > n_)
        throw DomainError("index " + std::to_string(k) + " out of range 1.." + std::to_string(n_));
    return (k - 1 + p % n_) % n_ + 1;
}

std::size_t sigma_power(std::size_t k, std::size_t p, std::size_t n) { return CyclicPerm(n).apply(k, p); }

std::size_t wrap_index(long long k, std::size_t n) {
    const long long m = static_cast<long long>(n);
    return static_cast<std::size_t>(((k - 1) % m + m) % m + 1);
}

Polynomial partial_derivative(const Polynomial& f, std::size_t axis) { return f.derivative(axis); }

std::vector<TensorTerm> p_operator_terms(const ThetaConfig& cfg) {
    const std::size_t n = cfg.n();
    const CyclicPerm sigma(n);
    std::vector<TensorTerm> terms;
    for (std::size_t k = 1; k <= n; ++k) {
        const Rational& th = cfg.theta(k);
        if (sgn(th) == 0) continue;
        const Complex half_i_theta(Rational(0), th / 2);

        TensorTerm forward{std::vector<std::size_t>(n), half_i_theta};
        for (std::size_t j = 1; j <= n; ++j) forward.slot_derivatives[j - 1] = sigma.apply(k, j - 1);

        TensorTerm reverse{std::vector<std::size_t>(n), -half_i_theta};
        reverse.slot_derivatives[0] = k;
        for (std::size_t j = 2; j <= n; ++j) reverse.slot_derivatives[j - 1] = sigma.apply(k, n - j + 1);

        terms.push_back(std::move(forward));
        terms.push_back(std::move(reverse));
    }
    return terms;
}

namespace {

struct PolynomialOps {
    Polynomial derivative(const Polynomial& f, std::size_t axis) const { return f.derivative(axis); }
    bool is_zero(const Polynomial& f) const { return f.is_zero(); }
    Polynomial product(std::span<const Polynomial> slots) const {
        Polynomial out = slots.front();
        for (std::size_t j = 1; j < slots.size() && !out.is_zero(); ++j) out = out * slots[j];
        return out;
    }
    Polynomial scaled(const Polynomial& f, const Complex& c) const { return f.scaled(c); }
    void accumulate(Polynomial& into, const Polynomial& term) const { into += term; }
    Polynomial zero_like(const Polynomial& f) const { return Polynomial(f.dimension()); }
};

void check_factors(std::span<const Polynomial> factors, const ThetaConfig& cfg) {
    if (factors.size() != cfg.n())
        throw ArityError("star product expects " + std::to_string(cfg.n()) + " factors, got " +
                         std::to_string(factors.size()));
    for (const auto& f : factors)
        if (f.dimension() != cfg.n()) throw DomainError("factor dimension does not match theta configuration");
}

}  // namespace

Polynomial star_n(std::span<const Polynomial> factors, const ThetaConfig& cfg, ExpansionStats* stats) {
    check_factors(factors, cfg);
    if (stats) *stats = ExpansionStats{};
    for (const auto& f : factors)
        if (f.is_zero()) return Polynomial(cfg.n());

    unsigned bound = static_cast<unsigned>(factors.front().degree());
    for (const auto& f : factors) bound = std::min(bound, static_cast<unsigned>(f.degree()));

    const auto terms = p_operator_terms(cfg);
    detail::ExponentialExpansion<Polynomial, PolynomialOps> expansion(terms, bound, PolynomialOps{});
    auto increments = expansion.run(factors);

    Polynomial result(cfg.n());
    for (const auto& inc : increments) result += inc;
    if (stats) {
        stats->order_bound = bound;
        stats->highest_order = expansion.highest_order();
    }
    return result;
}

Polynomial conjugate_star_n(std::span<const Polynomial> factors, const ThetaConfig& cfg) {
    return star_n(factors, cfg.negated());
}

Polynomial star_bracket(const Polynomial& f, const Polynomial& h, std::span<const Polynomial> middle,
                        const ThetaConfig& cfg) {
    if (middle.size() + 2 != cfg.n())
        throw ArityError("bracket expects " + std::to_string(cfg.n() - 2) + " middle factors, got " +
                         std::to_string(middle.size()));
    std::vector<Polynomial> forward;
    forward.reserve(cfg.n());
    forward.push_back(f);
    forward.insert(forward.end(), middle.begin(), middle.end());
    forward.push_back(h);
    std::vector<Polynomial> backward = forward;
    std::swap(backward.front(), backward.back());
    return star_n(forward, cfg) - star_n(backward, cfg);
}

Polynomial star3(const Polynomial& f, const Polynomial& g, const Polynomial& h, const ThetaConfig& cfg) {
    const Polynomial factors[] = {f, g, h};
    return star_n(factors, cfg);
}

Polynomial bracket3(const Polynomial& f, const Polynomial& h, const Polynomial& g, const ThetaConfig& cfg) {
    const Polynomial middle[] = {g};
    return star_bracket(f, h, middle, cfg);
}

}  // namespace nstar
