#pragma once

// Star products of finite plane-wave sums sum_a c_a exp(i s_a.x).
//
// Every P summand acting on exp(i s^(j).x) in slot j pulls down i s^(j)_axis,
// so the n-ary product of plane waves is a single plane wave at the summed
// frequency with multiplier exp(kernel_exponent), where
//
//   kernel = (i^(n+1)/2) sum_k theta_k ( prod_j s^(j)_{s^{j-1}(k)}
//                                      - s^(1)_k prod_{j>=2} s^(j)_{s^{n-j+1}(k)} )
//
// At n = 3 this is real: (1/2) sum_j theta_j k_j Omega^{qr}_j.

#include "nstar/star.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace nstar {

using Frequency = std::vector<double>;

struct WaveTerm {
    std::complex<double> coeff;
    Frequency freq;
};

class WaveSum {
  public:
    static constexpr double kMergeTolerance = 1e-12;

    explicit WaveSum(std::size_t n = 3) : n_(n) {}
    WaveSum(std::size_t n, std::vector<WaveTerm> terms);

    static WaveSum plane_wave(Frequency freq, std::complex<double> coeff = 1.0);
    static WaveSum constant(std::size_t n, std::complex<double> c);

    std::size_t dimension() const { return n_; }
    const std::vector<WaveTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    std::complex<double> evaluate(std::span<const double> x) const;

    WaveSum& operator+=(const WaveSum& o);
    WaveSum scaled(std::complex<double> c) const;
    friend WaveSum operator+(WaveSum a, const WaveSum& b) { return a += b; }
    /// Pointwise product.
    friend WaveSum operator*(const WaveSum& a, const WaveSum& b);

  private:
    void canonicalize();

    std::size_t n_;
    std::vector<WaveTerm> terms_;  // sorted by frequency, no duplicates
};

/// max_a |a_coeff - b_coeff| / max(|b_coeff|) after matching frequencies.
double max_relative_difference(const WaveSum& a, const WaveSum& b);

/// Omega^{qr}_j = q_{s(j)} r_{s^2(j)} - q_{s^2(j)} r_{s(j)} (the cross product).
std::array<double, 3> omega(std::span<const double> q, std::span<const double> r);

/// sum_j p_j Omega^{qr}_j.
double triple_product(std::span<const double> p, std::span<const double> q, std::span<const double> r);

/// p.Omega^{qr} == r.Omega^{pq} == q.Omega^{rp} within tol.
bool triple_product_identity_check(std::span<const double> p, std::span<const double> q,
                                   std::span<const double> r, double tol = 1e-12);

std::complex<double> kernel_exponent(std::span<const Frequency> freqs, const ThetaConfig& cfg);
/// Allocation-free form: freqs[j] points at n components.
std::complex<double> kernel_exponent(std::span<const double* const> freqs, std::span<const double> theta);

WaveSum star_waves(std::span<const WaveSum> factors, const ThetaConfig& cfg);

// ---- periodic lattice oracle ------------------------------------------------

struct GridSpec {
    std::size_t n = 3;
    std::size_t points_per_axis = 8;
    double period = 6.283185307179586;

    std::size_t total_points() const;
    /// Signed frequency index in [-N/2, N/2) for a raw DFT index.
    long signed_index(std::size_t m) const;
    /// 2 pi * signed_index / L.
    double wavenumber(std::size_t m) const;
    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Row-major samples f(L j / N), axis 1 varying slowest.
struct Lattice {
    GridSpec spec;
    std::vector<std::complex<double>> samples;
};

Lattice sample_on_grid(const WaveSum& w, const GridSpec& spec);

/// Normalised spectrum c_m with f_j = sum_m c_m exp(2 pi i m.j / N).
std::vector<std::complex<double>> lattice_spectrum(const Lattice& lattice);

/// Reusable lattice oracle (holds FFT plans). Not thread-safe; use one per thread.
class GridOracle {
  public:
    static constexpr double kDefaultBudget = 1e8;

    explicit GridOracle(GridSpec spec, double budget = kDefaultBudget);
    ~GridOracle();
    GridOracle(const GridOracle&) = delete;
    GridOracle& operator=(const GridOracle&) = delete;

    const GridSpec& spec() const { return spec_; }

    /// Forward DFT of every factor, n-fold weighted frequency sum, inverse DFT.
    Lattice star(std::span<const Lattice> factors, const ThetaConfig& cfg);

    std::vector<std::complex<double>> forward(std::span<const std::complex<double>> samples);
    std::vector<std::complex<double>> backward(std::span<const std::complex<double>> spectrum);

  private:
    GridSpec spec_;
    double budget_;
    struct Plans;
    Plans* plans_;
};

Lattice grid_oracle_star(std::span<const Lattice> factors, const GridSpec& spec, const ThetaConfig& cfg,
                         double budget = GridOracle::kDefaultBudget);

/// Max over samples of |a - b| / max|b|.
double max_relative_error(const Lattice& a, const Lattice& b);

// ---- serialization ----------------------------------------------------------

/// One JSON header line {"n":..,"N":..,"L":..} then N^n little-endian double pairs.
void write_lattice(std::ostream& out, const Lattice& lattice);
Lattice read_lattice(std::istream& in);

/// "(re + im i)*wave(s1,...,sn) + ...", shortest round-trip doubles; "0" when empty.
std::string to_string(const WaveSum& w);
nlohmann::ordered_json to_json(const WaveSum& w);
WaveSum wave_sum_from_json(const nlohmann::json& j, std::size_t n);

}  // namespace nstar
