#pragma once

// Multinomial expansion of m[exp(P)(f_1 (x) ... (x) f_n)] for any function
// class closed under partial differentiation.
//
// P = sum_t w_t D_t where every D_t differentiates each slot once. The D_t
// commute, so exp(P) = prod_t exp(w_t D_t) and the series is enumerated as
// exponent tuples (m_1, ..., m_T). The depth-first walk applies D_t one order
// at a time and prunes a branch as soon as any slot vanishes.

#include "nstar/scalar.hpp"
#include "nstar/star.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace nstar::detail {

/// Ops must provide:
///   F derivative(const F&, std::size_t axis)
///   bool is_zero(const F&)
///   F product(std::span<const F>)        (pointwise product of all slots)
///   F scaled(const F&, const Complex&)
///   void accumulate(F& into, const F& term)
///   F zero_like(const F&)
template <class F, class Ops>
class ExponentialExpansion {
  public:
    ExponentialExpansion(std::span<const TensorTerm> terms, unsigned max_order, Ops ops)
        : terms_(terms), max_order_(max_order), ops_(std::move(ops)) {}

    /// Returns one accumulated increment per total order 0..max_order.
    std::vector<F> run(std::span<const F> factors) {
        by_order_.assign(max_order_ + 1, ops_.zero_like(factors.front()));
        highest_ = 0;
        std::vector<F> slots(factors.begin(), factors.end());
        walk(0, max_order_, Complex(1), slots);
        return std::move(by_order_);
    }

    /// Largest total order that contributed a nonzero term.
    unsigned highest_order() const { return highest_; }

  private:
    void walk(std::size_t t, unsigned remaining, const Complex& weight, const std::vector<F>& slots) {
        if (t == terms_.size()) {
            F term = ops_.product(std::span<const F>(slots));
            if (ops_.is_zero(term)) return;
            const unsigned order = max_order_ - remaining;
            ops_.accumulate(by_order_[order], ops_.scaled(term, weight));
            if (order > highest_) highest_ = order;
            return;
        }
        walk(t + 1, remaining, weight, slots);
        const TensorTerm& term = terms_[t];
        std::vector<F> current = slots;
        Complex w = weight;
        for (unsigned m = 1; m <= remaining; ++m) {
            for (std::size_t j = 0; j < current.size(); ++j) {
                current[j] = ops_.derivative(current[j], term.slot_derivatives[j]);
                if (ops_.is_zero(current[j])) return;
            }
            w = w * term.weight / Rational(m);
            walk(t + 1, remaining - m, w, current);
        }
    }

    std::span<const TensorTerm> terms_;
    unsigned max_order_;
    Ops ops_;
    std::vector<F> by_order_;
    unsigned highest_ = 0;
};

}  // namespace nstar::detail
