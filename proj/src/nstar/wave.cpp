#include "nstar/wave.hpp"

#include "nstar/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <charconv>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <string>

namespace nstar {

namespace {

bool lex_less(const Frequency& a, const Frequency& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool close_frequency(const Frequency& a, const Frequency& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (std::abs(a[k] - b[k]) > WaveSum::kMergeTolerance) return false;
    return true;
}

std::vector<double> theta_as_double(const ThetaConfig& cfg) {
    std::vector<double> t;
    for (const auto& v : cfg.theta()) t.push_back(v.get_d());
    return t;
}

// i^p
std::complex<double> i_power(std::size_t p) {
    switch (p % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

// exp(z), skipping the sincos when z is real (always the case at n = 3)
std::complex<double> exp_of(std::complex<double> z) {
    if (z.imag() == 0) return std::exp(z.real());
    return std::exp(z);
}

}  // namespace

WaveSum::WaveSum(std::size_t n, std::vector<WaveTerm> terms) : n_(n), terms_(std::move(terms)) {
    for (const auto& t : terms_)
        if (t.freq.size() != n_) throw DomainError("wave frequency has wrong dimension");
    canonicalize();
}

WaveSum WaveSum::plane_wave(Frequency freq, std::complex<double> coeff) {
    const std::size_t n = freq.size();
    return WaveSum(n, {WaveTerm{coeff, std::move(freq)}});
}

WaveSum WaveSum::constant(std::size_t n, std::complex<double> c) {
    return WaveSum(n, {WaveTerm{c, Frequency(n, 0.0)}});
}

void WaveSum::canonicalize() {
    const auto less = [](const WaveTerm& a, const WaveTerm& b) { return lex_less(a.freq, b.freq); };
    if (!std::is_sorted(terms_.begin(), terms_.end(), less)) std::stable_sort(terms_.begin(), terms_.end(), less);
    // Two frequencies within tolerance force some lex-adjacent pair whose first
    // differing component is within tolerance; without one, only exact
    // duplicates merge and one linear pass suffices.
    bool near_pairs = false;
    for (std::size_t a = 1; a < terms_.size() && !near_pairs; ++a) {
        const auto& p = terms_[a - 1].freq;
        const auto& q = terms_[a].freq;
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (p[k] == q[k]) continue;
            near_pairs = q[k] - p[k] <= kMergeTolerance;
            break;
        }
    }
    std::vector<WaveTerm> merged;
    if (!near_pairs) {
        for (auto& t : terms_) {
            if (!merged.empty() && merged.back().freq == t.freq) {
                merged.back().coeff += t.coeff;
            } else {
                if (!merged.empty() && merged.back().coeff == std::complex<double>(0.0, 0.0)) merged.pop_back();
                merged.push_back(std::move(t));
            }
        }
        if (!merged.empty() && merged.back().coeff == std::complex<double>(0.0, 0.0)) merged.pop_back();
        terms_ = std::move(merged);
        return;
    }
    std::vector<bool> used(terms_.size(), false);
    for (std::size_t a = 0; a < terms_.size(); ++a) {
        if (used[a]) continue;
        WaveTerm rep = terms_[a];
        // candidates share the first component within tolerance, so they sit in a window
        for (std::size_t b = a + 1; b < terms_.size(); ++b) {
            if (terms_[b].freq[0] - rep.freq[0] > kMergeTolerance) break;
            if (!used[b] && close_frequency(rep.freq, terms_[b].freq)) {
                rep.coeff += terms_[b].coeff;
                used[b] = true;
            }
        }
        if (rep.coeff != std::complex<double>(0.0, 0.0)) merged.push_back(std::move(rep));
    }
    terms_ = std::move(merged);
}

std::complex<double> WaveSum::evaluate(std::span<const double> x) const {
    if (x.size() != n_) throw DomainError("evaluation point has wrong dimension");
    std::complex<double> sum;
    for (const auto& t : terms_) {
        double phase = 0;
        for (std::size_t k = 0; k < n_; ++k) phase += t.freq[k] * x[k];
        sum += t.coeff * std::polar(1.0, phase);
    }
    return sum;
}

WaveSum& WaveSum::operator+=(const WaveSum& o) {
    if (o.n_ != n_) throw DomainError("dimension mismatch in wave sum addition");
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    canonicalize();
    return *this;
}

WaveSum WaveSum::scaled(std::complex<double> c) const {
    std::vector<WaveTerm> t = terms_;
    for (auto& w : t) w.coeff *= c;
    return WaveSum(n_, std::move(t));
}

WaveSum operator*(const WaveSum& a, const WaveSum& b) {
    if (a.n_ != b.n_) throw DomainError("dimension mismatch in wave sum product");
    std::vector<WaveTerm> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a.terms_) {
        for (const auto& y : b.terms_) {
            Frequency f(a.n_);
            for (std::size_t k = 0; k < a.n_; ++k) f[k] = x.freq[k] + y.freq[k];
            out.push_back({x.coeff * y.coeff, std::move(f)});
        }
    }
    return WaveSum(a.n_, std::move(out));
}

double max_relative_difference(const WaveSum& a, const WaveSum& b) {
    double scale = 0;
    for (const auto& t : b.terms()) scale = std::max(scale, std::abs(t.coeff));
    for (const auto& t : a.terms()) scale = std::max(scale, std::abs(t.coeff));
    if (scale == 0) return 0;
    WaveSum diff = a + b.scaled(-1.0);
    double worst = 0;
    for (const auto& t : diff.terms()) worst = std::max(worst, std::abs(t.coeff));
    return worst / scale;
}

std::array<double, 3> omega(std::span<const double> q, std::span<const double> r) {
    if (q.size() != 3 || r.size() != 3) throw DomainError("Omega is defined for n = 3 only");
    std::array<double, 3> out{};
    for (std::size_t j = 1; j <= 3; ++j) {
        const std::size_t a = sigma_power(j, 1, 3) - 1;
        const std::size_t b = sigma_power(j, 2, 3) - 1;
        out[j - 1] = q[a] * r[b] - q[b] * r[a];
    }
    return out;
}

double triple_product(std::span<const double> p, std::span<const double> q, std::span<const double> r) {
    const auto w = omega(q, r);
    return p[0] * w[0] + p[1] * w[1] + p[2] * w[2];
}

bool triple_product_identity_check(std::span<const double> p, std::span<const double> q,
                                   std::span<const double> r, double tol) {
    const double a = triple_product(p, q, r);
    const double b = triple_product(r, p, q);
    const double c = triple_product(q, r, p);
    return std::abs(a - b) <= tol && std::abs(a - c) <= tol;
}

std::complex<double> kernel_exponent(std::span<const double* const> freqs, std::span<const double> theta) {
    const std::size_t n = theta.size();
    if (freqs.size() != n) throw ArityError("kernel expects n frequency vectors");
    double sum = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (theta[k] == 0) continue;
        // forward: slot j reads axis k + j; reverse: slot 1 reads k, slot j >= 2 reads k + n - j (0-based j)
        double fwd = freqs[0][k];
        double rev = freqs[0][k];
        std::size_t f = k;
        std::size_t r = k;
        for (std::size_t j = 1; j < n; ++j) {
            f = f + 1 == n ? 0 : f + 1;
            r = r == 0 ? n - 1 : r - 1;
            fwd *= freqs[j][f];
            rev *= freqs[j][r];
        }
        sum += theta[k] * (fwd - rev);
    }
    return i_power(n + 1) * (0.5 * sum);
}

std::complex<double> kernel_exponent(std::span<const Frequency> freqs, const ThetaConfig& cfg) {
    if (freqs.size() != cfg.n()) throw ArityError("kernel expects n frequency vectors");
    std::vector<const double*> ptrs;
    for (const auto& f : freqs) {
        if (f.size() != cfg.n()) throw DomainError("frequency vector has wrong dimension");
        ptrs.push_back(f.data());
    }
    const auto theta = theta_as_double(cfg);
    return kernel_exponent(ptrs, theta);
}

WaveSum star_waves(std::span<const WaveSum> factors, const ThetaConfig& cfg) {
    const std::size_t n = cfg.n();
    if (factors.size() != n) throw ArityError("star product expects n wave sums");
    for (const auto& f : factors) {
        if (f.dimension() != n) throw DomainError("wave sum dimension does not match theta configuration");
        if (f.size() == 0) return WaveSum(n);
    }
    const auto theta = theta_as_double(cfg);
    std::vector<std::size_t> pick(n, 0);
    std::vector<const double*> ptrs(n);
    std::vector<WaveTerm> out;
    std::size_t total = 1;
    for (const auto& fct : factors) total *= fct.size();
    out.reserve(total);
    while (true) {
        std::complex<double> c = 1.0;
        Frequency f(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const WaveTerm& t = factors[j].terms()[pick[j]];
            c *= t.coeff;
            ptrs[j] = t.freq.data();
            for (std::size_t k = 0; k < n; ++k) f[k] += t.freq[k];
        }
        out.push_back({c * exp_of(kernel_exponent(ptrs, theta)), std::move(f)});
        std::size_t j = n;
        while (j > 0) {
            --j;
            if (++pick[j] < factors[j].size()) break;
            pick[j] = 0;
            if (j == 0) return WaveSum(n, std::move(out));
        }
    }
}

// ---- lattice ---------------------------------------------------------------

std::size_t GridSpec::total_points() const {
    std::size_t t = 1;
    for (std::size_t d = 0; d < n; ++d) t *= points_per_axis;
    return t;
}

long GridSpec::signed_index(std::size_t m) const {
    const long N = static_cast<long>(points_per_axis);
    const long mm = static_cast<long>(m);
    return mm < N - N / 2 ? mm : mm - N;
}

double GridSpec::wavenumber(std::size_t m) const {
    return 2 * std::numbers::pi * static_cast<double>(signed_index(m)) / period;
}

namespace {

void check_spec(const GridSpec& spec) {
    if (spec.n < 3) throw DomainError("grid dimension must be at least 3");
    if (spec.points_per_axis == 0) throw DomainError("grid needs at least one point per axis");
    if (!(spec.period > 0)) throw DomainError("grid period must be positive");
}

}  // namespace

Lattice sample_on_grid(const WaveSum& w, const GridSpec& spec) {
    check_spec(spec);
    if (w.dimension() != spec.n) throw DomainError("wave sum dimension does not match grid");
    Lattice out{spec, std::vector<std::complex<double>>(spec.total_points())};
    std::vector<double> x(spec.n);
    const double h = spec.period / static_cast<double>(spec.points_per_axis);
    for (std::size_t flat = 0; flat < out.samples.size(); ++flat) {
        std::size_t rest = flat;
        for (std::size_t d = spec.n; d > 0; --d) {
            x[d - 1] = h * static_cast<double>(rest % spec.points_per_axis);
            rest /= spec.points_per_axis;
        }
        out.samples[flat] = w.evaluate(x);
    }
    return out;
}

struct GridOracle::Plans {
    std::size_t size;
    fftw_complex* buffer;
    fftw_plan fwd;
    fftw_plan bwd;
};

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

GridOracle::GridOracle(GridSpec spec, double budget) : spec_(spec), budget_(budget), plans_(nullptr) {
    check_spec(spec_);
    const std::size_t total = spec_.total_points();
    std::vector<int> dims(spec_.n, static_cast<int>(spec_.points_per_axis));
    std::lock_guard lock(planner_mutex());
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
    if (!buf) throw std::bad_alloc();
    fftw_plan f = fftw_plan_dft(static_cast<int>(spec_.n), dims.data(), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_plan b = fftw_plan_dft(static_cast<int>(spec_.n), dims.data(), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    plans_ = new Plans{total, buf, f, b};
}

GridOracle::~GridOracle() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plans_->fwd);
    fftw_destroy_plan(plans_->bwd);
    fftw_free(plans_->buffer);
    delete plans_;
}

std::vector<std::complex<double>> GridOracle::forward(std::span<const std::complex<double>> samples) {
    if (samples.size() != plans_->size) throw DomainError("lattice has wrong number of samples");
    std::memcpy(plans_->buffer, samples.data(), sizeof(fftw_complex) * plans_->size);
    fftw_execute(plans_->fwd);
    std::vector<std::complex<double>> out(plans_->size);
    std::memcpy(static_cast<void*>(out.data()), plans_->buffer, sizeof(fftw_complex) * plans_->size);
    const double scale = 1.0 / static_cast<double>(plans_->size);
    for (auto& c : out) c *= scale;
    return out;
}

std::vector<std::complex<double>> GridOracle::backward(std::span<const std::complex<double>> spectrum) {
    if (spectrum.size() != plans_->size) throw DomainError("spectrum has wrong number of coefficients");
    std::memcpy(plans_->buffer, spectrum.data(), sizeof(fftw_complex) * plans_->size);
    fftw_execute(plans_->bwd);
    std::vector<std::complex<double>> out(plans_->size);
    std::memcpy(static_cast<void*>(out.data()), plans_->buffer, sizeof(fftw_complex) * plans_->size);
    return out;
}

Lattice GridOracle::star(std::span<const Lattice> factors, const ThetaConfig& cfg) {
    const std::size_t n = spec_.n;
    const std::size_t N = spec_.points_per_axis;
    if (cfg.n() != n) throw DomainError("theta configuration does not match grid dimension");
    if (factors.size() != n) throw ArityError("grid oracle expects n lattices");
    for (const auto& f : factors) {
        if (!(f.spec == spec_)) throw DomainError("lattice grid does not match oracle grid");
        if (f.samples.size() != spec_.total_points()) throw DomainError("lattice has wrong number of samples");
    }

    // occupied frequencies of each factor, n components per mode
    struct Modes {
        std::vector<std::complex<double>> coeff;
        std::vector<double> freq;
        std::vector<std::size_t> digits;
        std::size_t size() const { return coeff.size(); }
    };
    std::vector<Modes> modes(n);
    double work = 1;
    for (std::size_t j = 0; j < n; ++j) {
        const auto spectrum = forward(factors[j].samples);
        double peak2 = 0;
        for (const auto& c : spectrum) peak2 = std::max(peak2, std::norm(c));
        Modes& m = modes[j];
        for (std::size_t flat = 0; flat < spectrum.size(); ++flat) {
            // |c| <= 1e-13 |peak|
            if (peak2 == 0 || std::norm(spectrum[flat]) <= 1e-26 * peak2) continue;
            m.coeff.push_back(spectrum[flat]);
            const std::size_t base = m.freq.size();
            m.freq.resize(base + n);
            m.digits.resize(base + n);
            std::size_t rest = flat;
            for (std::size_t d = n; d > 0; --d) {
                m.digits[base + d - 1] = rest % N;
                m.freq[base + d - 1] = spec_.wavenumber(rest % N);
                rest /= N;
            }
        }
        work *= static_cast<double>(m.size());
    }
    if (work > budget_)
        throw BudgetError("grid oracle needs " + std::to_string(work) + " kernel evaluations, budget is " +
                          std::to_string(budget_));

    std::vector<std::complex<double>> out(spec_.total_points());
    if (work > 0) {
        const auto theta = theta_as_double(cfg);
        std::vector<std::size_t> pick(n, 0);
        std::vector<const double*> ptrs(n);
        bool done = false;
        while (!done) {
            std::complex<double> c = 1.0;
            std::size_t target = 0;
            for (std::size_t d = 0; d < n; ++d) {
                std::size_t digit = 0;
                for (std::size_t j = 0; j < n; ++j) digit += modes[j].digits[pick[j] * n + d];
                target = target * N + digit % N;
            }
            for (std::size_t j = 0; j < n; ++j) {
                c *= modes[j].coeff[pick[j]];
                ptrs[j] = modes[j].freq.data() + pick[j] * n;
            }
            out[target] += c * exp_of(kernel_exponent(ptrs, theta));
            std::size_t j = n;
            while (true) {
                --j;
                if (++pick[j] < modes[j].size()) break;
                pick[j] = 0;
                if (j == 0) {
                    done = true;
                    break;
                }
            }
        }
    }
    return Lattice{spec_, backward(out)};
}

Lattice grid_oracle_star(std::span<const Lattice> factors, const GridSpec& spec, const ThetaConfig& cfg,
                         double budget) {
    GridOracle oracle(spec, budget);
    return oracle.star(factors, cfg);
}

std::vector<std::complex<double>> lattice_spectrum(const Lattice& lattice) {
    GridOracle oracle(lattice.spec);
    return oracle.forward(lattice.samples);
}

double max_relative_error(const Lattice& a, const Lattice& b) {
    if (a.samples.size() != b.samples.size()) throw DomainError("lattice size mismatch");
    double scale = 0;
    double worst = 0;
    for (std::size_t k = 0; k < a.samples.size(); ++k) {
        scale = std::max(scale, std::abs(b.samples[k]));
        worst = std::max(worst, std::abs(a.samples[k] - b.samples[k]));
    }
    if (scale == 0) return worst;
    return worst / scale;
}

// ---- serialization ---------------------------------------------------------

namespace {

void put_le(std::ostream& out, double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    char bytes[8];
    for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xffu);
    out.write(bytes, 8);
}

double get_le(std::istream& in) {
    unsigned char bytes[8];
    if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw ParseError("truncated lattice payload", 2, 1);
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
    return std::bit_cast<double>(bits);
}

}  // namespace

void write_lattice(std::ostream& out, const Lattice& lattice) {
    nlohmann::ordered_json header;
    header["n"] = lattice.spec.n;
    header["N"] = lattice.spec.points_per_axis;
    header["L"] = lattice.spec.period;
    out << header.dump() << '\n';
    for (const auto& c : lattice.samples) {
        put_le(out, c.real());
        put_le(out, c.imag());
    }
}

Lattice read_lattice(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("missing lattice header", 1, 1);
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("bad lattice header: ") + e.what(), 1, e.byte);
    }
    Lattice lat;
    try {
        lat.spec.n = header.at("n").get<std::size_t>();
        lat.spec.points_per_axis = header.at("N").get<std::size_t>();
        lat.spec.period = header.at("L").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad lattice header: ") + e.what(), 1, 1);
    }
    check_spec(lat.spec);
    lat.samples.resize(lat.spec.total_points());
    for (auto& c : lat.samples) {
        const double re = get_le(in);
        const double im = get_le(in);
        c = {re, im};
    }
    return lat;
}

namespace {
std::string double_text(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}
}  // namespace

std::string to_string(const WaveSum& w) {
    if (w.size() == 0) return "0";
    std::string out;
    for (const auto& t : w.terms()) {
        if (!out.empty()) out += " + ";
        // + 0.0 turns -0 into 0
        out += "(" + double_text(t.coeff.real() + 0.0) + (t.coeff.imag() < 0 ? " - " : " + ") +
               double_text(std::abs(t.coeff.imag())) + "i)*wave(";
        for (std::size_t i = 0; i < t.freq.size(); ++i) out += (i ? "," : "") + double_text(t.freq[i] + 0.0);
        out += ")";
    }
    return out;
}

nlohmann::ordered_json to_json(const WaveSum& w) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& t : w.terms()) {
        nlohmann::ordered_json j;
        j["re"] = t.coeff.real();
        j["im"] = t.coeff.imag();
        j["freq"] = t.freq;
        arr.push_back(std::move(j));
    }
    return arr;
}

WaveSum wave_sum_from_json(const nlohmann::json& j, std::size_t n) {
    if (!j.is_array()) throw DomainError("wave sum JSON must be an array");
    std::vector<WaveTerm> terms;
    for (const auto& t : j)
        terms.push_back({{t.at("re").get<double>(), t.at("im").get<double>()}, t.at("freq").get<Frequency>()});
    return WaveSum(n, std::move(terms));
}

}  // namespace nstar
