#include "nstar/star_oracle.hpp"

#include "nstar/errors.hpp"

#include <vector>

namespace nstar {

namespace {

struct Summand {
    Rational theta_half;               // +/- theta_k / 2 (the i is applied separately)
    std::vector<std::size_t> axes;     // derivative axis for each slot
};

struct Tuple {
    Complex weight;
    std::vector<Polynomial> slots;
};

std::vector<Summand> summands(const ThetaConfig& cfg, int sign) {
    const long long n = static_cast<long long>(cfg.n());
    auto cyc = [n](long long k, long long p) { return static_cast<std::size_t>((k - 1 + p) % n + 1); };
    std::vector<Summand> out;
    for (long long k = 1; k <= n; ++k) {
        Rational half = cfg.theta(static_cast<std::size_t>(k)) / 2;
        if (sign < 0) half = -half;
        Summand fwd{half, {}};
        Summand rev{-half, {}};
        for (long long j = 1; j <= n; ++j) {
            fwd.axes.push_back(cyc(k, j - 1));
            rev.axes.push_back(j == 1 ? static_cast<std::size_t>(k) : cyc(k, n - j + 1));
        }
        out.push_back(std::move(fwd));
        out.push_back(std::move(rev));
    }
    return out;
}

}  // namespace

Polynomial oracle_star_n(std::span<const Polynomial> factors, const ThetaConfig& cfg, int sign,
                         OracleStats* stats) {
    if (factors.size() != cfg.n()) throw ArityError("oracle expects n factors");
    const auto ops = summands(cfg, sign);
    const std::size_t n = cfg.n();

    auto contract = [n](const Tuple& t) {
        Polynomial prod = t.slots[0];
        for (std::size_t j = 1; j < n; ++j) prod = prod * t.slots[j];
        return prod.scaled(t.weight);
    };

    std::vector<Tuple> state{Tuple{Complex(1), std::vector<Polynomial>(factors.begin(), factors.end())}};
    Polynomial result(n);
    Rational factorial(1);
    unsigned m = 0;
    while (!state.empty()) {
        Polynomial level(n);
        for (const auto& t : state) level += contract(t);
        result += level.scaled(Complex(Rational(1) / factorial));

        std::vector<Tuple> next;
        for (const auto& t : state) {
            for (const auto& op : ops) {
                if (sgn(op.theta_half) == 0) continue;
                Tuple d{t.weight * Complex(Rational(0), op.theta_half), {}};
                d.slots.reserve(n);
                bool vanished = false;
                for (std::size_t j = 0; j < n && !vanished; ++j) {
                    d.slots.push_back(t.slots[j].derivative(op.axes[j]));
                    vanished = d.slots.back().is_zero();
                }
                if (!vanished) next.push_back(std::move(d));
            }
        }
        if (next.empty()) break;
        state = std::move(next);
        ++m;
        factorial *= m;
    }
    if (stats) stats->powers_applied = m;
    return result;
}

}  // namespace nstar
