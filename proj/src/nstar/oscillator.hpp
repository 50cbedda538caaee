#pragma once

// Coupled-oscillator application: Hamiltonian construction, the closed-form
// spectrum, Hermite ground states and truncated star products in the
// polynomial-times-Gaussian class.

#include "nstar/polynomial.hpp"
#include "nstar/star.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <span>
#include <string>
#include <vector>

namespace nstar {

struct HamiltonianSpec {
    std::size_t n = 3;
    /// lambda_{i1...ik} keyed by strictly increasing 1-based index tuples of
    /// even length 2..levi_civita_rank(). Levi-Civita factors are taken as +1
    /// on increasing tuples.
    std::map<std::vector<std::size_t>, Rational> couplings;
    /// Diagonal-form coefficients lambda_i^{(label)}, label = 0, 2, 4, ...;
    /// each entry has n values.
    std::map<unsigned, std::vector<Rational>> diag;

    /// n for even n, n - 1 for odd n.
    std::size_t levi_civita_rank() const { return n % 2 == 0 ? n : n - 1; }

    /// Validates and stores a coupling; throws DomainError on bad indices.
    void set_coupling(std::vector<std::size_t> indices, Rational value);
    void validate() const;

    static HamiltonianSpec from_json(const nlohmann::json& j);
    nlohmann::ordered_json to_json() const;
};

/// sum_j x_j^2 + sum over coupling tuples of lambda * x_{i1} ... x_{ik}.
Polynomial build_hamiltonian(const HamiltonianSpec& spec);

/// sum_p sum_i lambda_i^{(2p)} X_i^{2p+2}, written in x coordinates.
Polynomial build_diagonal_hamiltonian(const HamiltonianSpec& spec);

struct QuantumNumber {
    std::vector<unsigned> nbar;
    unsigned norm() const;
};

/// E_{k,nbar} = theta_k (lambda_k^{(0)} |nbar| + sum_{p>=1} S_k^p |nbar|^{p+1} + n/2)
/// with S_k = sum_i lambda_i^{(k)}; the series runs over p = 1..(number of
/// supplied non-zero labels) and vanishes when label k is not supplied.
Rational energy(std::size_t k, const QuantumNumber& nbar, const ThetaConfig& cfg, const HamiltonianSpec& spec);

/// Physicists' Hermite coefficients: H_k(u) = sum_j c_j u^j.
std::vector<Rational> hermite_coefficients(unsigned k);

/// poly(x) exp(-weight |x|^2 / 2). weight = 0 holds plain polynomials.
struct PolyGauss {
    Polynomial poly;
    unsigned weight = 1;

    PolyGauss derivative(std::size_t axis) const;
    bool is_zero() const { return poly.is_zero(); }
    double evaluate_abs(std::span<const double> x) const;

    friend bool operator==(const PolyGauss& a, const PolyGauss& b) {
        return a.weight == b.weight && a.poly == b.poly;
    }
};

PolyGauss pointwise_product(std::span<const PolyGauss> factors);

/// psi_k^0 = H_k(|x|^2/2) exp(-|x|^2/2).
PolyGauss ground_state(unsigned k, std::size_t n);

struct TruncatedStar {
    PolyGauss sum;                       // sum_{m <= order} P^m/m! (...)
    std::vector<PolyGauss> increments;   // one per order 0..order
    double last_increment_magnitude = 0; // max |coefficient| of the order-`order` increment
};

TruncatedStar star_polygauss_truncated(std::span<const PolyGauss> factors, const ThetaConfig& cfg, unsigned order);

struct ResidualRow {
    unsigned order;
    std::size_t point;
    /// |Rg|^2 where the ground-state residual is Rg(x) exp(-w|x|^2/2) / sqrt2
    /// (a_ij enters scaled by sqrt2); exact rational.
    Rational ground_poly_modulus2;
    double ground_residual;
    /// |Re|^2 for the eigenvalue residual Re(x) exp(-w|x|^2/2); exact rational.
    Rational eigen_poly_modulus2;
    double eigen_residual;
};

struct ResidualOrderSummary {
    unsigned order;
    double max_ground_residual;
    double max_eigen_residual;
};

struct ResidualReport {
    std::size_t n;
    unsigned k;
    std::size_t coord_i;
    std::size_t coord_j;
    Rational energy;
    unsigned max_order;
    std::vector<std::vector<Rational>> points;
    std::vector<ResidualRow> rows;
    std::vector<ResidualOrderSummary> summary;
    std::string ground_trend;
    std::string eigen_trend;
};

/// Residuals of star{a_ij, psi, ..., psi} = 0 and
/// star{H, psi, ..., psi} - E_{1,0} star{1, psi, ..., psi} = 0 with every psi
/// slot set to ground_state(k), for truncation orders 0..order.
/// Sample points must satisfy |x| <= 4.
ResidualReport residual_report(const HamiltonianSpec& spec, const ThetaConfig& cfg, unsigned k, unsigned order,
                               std::span<const std::vector<Rational>> sample_points, std::size_t coord_i = 1,
                               std::size_t coord_j = 2);

nlohmann::ordered_json to_json(const ResidualReport& r);
std::string to_csv(const ResidualReport& r);
/// Per-order maxima and the observed trends.
std::string to_text(const ResidualReport& r);

/// Deterministic rational points with coordinates of the form a/4, |x| <= 4.
std::vector<std::vector<Rational>> default_sample_points(std::size_t n, std::size_t count, std::uint64_t seed);

}  // namespace nstar
