#pragma once

// The n-ary star product on polynomials:
//
//   star{f_1, ..., f_n} = m[ exp(P) (f_1 (x) ... (x) f_n) ]
//   P = sum_k (i theta_k / 2) ( d_k (x) d_{s(k)} (x) ... (x) d_{s^{n-1}(k)}
//                             - d_k (x) d_{s^{n-1}(k)} (x) ... (x) d_{s(k)} )
//
// with s the cyclic permutation k -> k+1 (mod n). The forward summand puts
// d_{s^{j-1}(k)} in slot j; the reverse summand puts d_k in slot 1 and
// d_{s^{n-j+1}(k)} in slot j >= 2. At n = 3 this is the familiar 3-ary form.

#include "nstar/polynomial.hpp"
#include "nstar/scalar.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace nstar {

class ThetaConfig {
  public:
    /// Throws DomainError unless n >= 3 and theta.size() == n.
    ThetaConfig(std::size_t n, std::vector<Rational> theta);

    /// theta = (1, ..., 1).
    static ThetaConfig ones(std::size_t n);
    /// Comma separated rationals, e.g. "1,1/2,-2".
    static ThetaConfig parse(std::size_t n, std::string_view csv);

    std::size_t n() const { return n_; }
    const std::vector<Rational>& theta() const { return theta_; }
    /// theta_k, k is 1-based.
    const Rational& theta(std::size_t k) const;
    ThetaConfig negated() const;
    bool is_zero() const;

    friend bool operator==(const ThetaConfig& a, const ThetaConfig& b) {
        return a.n_ == b.n_ && a.theta_ == b.theta_;
    }

  private:
    std::size_t n_;
    std::vector<Rational> theta_;
};

/// Order-n cycle on {1..n}.
class CyclicPerm {
  public:
    explicit CyclicPerm(std::size_t n);
    std::size_t n() const { return n_; }
    /// s^p(k); p is reduced modulo n. Throws DomainError for k outside 1..n.
    std::size_t apply(std::size_t k, std::size_t p) const;

  private:
    std::size_t n_;
};

std::size_t sigma_power(std::size_t k, std::size_t p, std::size_t n);

/// Wraps any integer index into {1..n}.
std::size_t wrap_index(long long k, std::size_t n);

Polynomial partial_derivative(const Polynomial& f, std::size_t axis);

/// One summand of P: a first-order derivative per slot and a weight.
struct TensorTerm {
    std::vector<std::size_t> slot_derivatives;  // 1-based axes, one per slot
    Complex weight;

    friend bool operator==(const TensorTerm&, const TensorTerm&) = default;
};

/// The 2n weighted summands (forward +i theta_k/2, reverse -i theta_k/2),
/// k ascending and forward before reverse; theta_k = 0 terms are omitted.
std::vector<TensorTerm> p_operator_terms(const ThetaConfig& cfg);

struct ExpansionStats {
    unsigned order_bound = 0;    // min_i deg(f_i)
    unsigned highest_order = 0;  // largest order with a nonzero contribution
};

Polynomial star_n(std::span<const Polynomial> factors, const ThetaConfig& cfg,
                  ExpansionStats* stats = nullptr);

/// m[exp(-P)(...)], which equals star_n with theta negated.
Polynomial conjugate_star_n(std::span<const Polynomial> factors, const ThetaConfig& cfg);

/// {f, h}_{*, g} = star(f, g..., h) - star(h, g..., f); `middle` holds the
/// n-2 fixed inner factors.
Polynomial star_bracket(const Polynomial& f, const Polynomial& h, std::span<const Polynomial> middle,
                        const ThetaConfig& cfg);

/// 3-ary convenience forms.
Polynomial star3(const Polynomial& f, const Polynomial& g, const Polynomial& h, const ThetaConfig& cfg);
Polynomial bracket3(const Polynomial& f, const Polynomial& h, const Polynomial& g, const ThetaConfig& cfg);

}  // namespace nstar
