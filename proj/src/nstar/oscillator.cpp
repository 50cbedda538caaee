#include "nstar/oscillator.hpp"

#include "nstar/errors.hpp"
#include "nstar/expansion.hpp"
#include "nstar/random.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace nstar {

void HamiltonianSpec::set_coupling(std::vector<std::size_t> indices, Rational value) {
    if (indices.size() < 2 || indices.size() % 2 != 0 || indices.size() > levi_civita_rank())
        throw DomainError("coupling tuple length must be even and between 2 and " +
                          std::to_string(levi_civita_rank()));
    for (std::size_t a = 0; a < indices.size(); ++a) {
        if (indices[a] < 1 || indices[a] > n) throw DomainError("coupling index out of range");
        if (a > 0 && indices[a] <= indices[a - 1]) throw DomainError("coupling indices must be strictly increasing");
    }
    couplings[std::move(indices)] = std::move(value);
}

void HamiltonianSpec::validate() const {
    if (n < 3) throw DomainError("Hamiltonian dimension must be at least 3");
    HamiltonianSpec probe{n, {}, {}};
    for (const auto& [idx, v] : couplings) probe.set_coupling(idx, v);
    for (const auto& [label, values] : diag) {
        if (label % 2 != 0) throw DomainError("diagonal coefficient labels must be even");
        if (values.size() != n) throw DomainError("diagonal coefficient family must have n entries");
    }
}

HamiltonianSpec HamiltonianSpec::from_json(const nlohmann::json& j) {
    HamiltonianSpec spec;
    spec.n = j.at("n").get<std::size_t>();
    if (j.contains("couplings")) {
        for (const auto& c : j.at("couplings"))
            spec.set_coupling(c.at("indices").get<std::vector<std::size_t>>(),
                              parse_rational(c.at("lambda").get<std::string>()));
    }
    if (j.contains("diag")) {
        for (const auto& [label, values] : j.at("diag").items()) {
            std::vector<Rational> v;
            for (const auto& x : values) v.push_back(parse_rational(x.get<std::string>()));
            spec.diag[static_cast<unsigned>(std::stoul(label))] = std::move(v);
        }
    }
    spec.validate();
    return spec;
}

nlohmann::ordered_json HamiltonianSpec::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    auto cs = nlohmann::ordered_json::array();
    for (const auto& [idx, v] : couplings) cs.push_back({{"indices", idx}, {"lambda", rational_to_string(v)}});
    j["couplings"] = cs;
    nlohmann::ordered_json d = nlohmann::ordered_json::object();
    for (const auto& [label, values] : diag) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& v : values) arr.push_back(rational_to_string(v));
        d[std::to_string(label)] = arr;
    }
    j["diag"] = d;
    return j;
}

Polynomial build_hamiltonian(const HamiltonianSpec& spec) {
    spec.validate();
    Polynomial h = radius_squared(spec.n);
    for (const auto& [idx, lambda] : spec.couplings) {
        MultiIndex e(spec.n, 0);
        for (auto i : idx) e[i - 1] += 1;
        h.add_term(e, Complex(lambda));
    }
    return h;
}

Polynomial build_diagonal_hamiltonian(const HamiltonianSpec& spec) {
    spec.validate();
    Polynomial h(spec.n);
    for (const auto& [label, values] : spec.diag) {
        for (std::size_t i = 0; i < spec.n; ++i) {
            MultiIndex e(spec.n, 0);
            e[i] = label + 2;
            h.add_term(e, Complex(values[i]));
        }
    }
    return h;
}

unsigned QuantumNumber::norm() const {
    unsigned s = 0;
    for (auto v : nbar) s += v;
    return s;
}

Rational energy(std::size_t k, const QuantumNumber& nbar, const ThetaConfig& cfg, const HamiltonianSpec& spec) {
    if (k < 1 || k > spec.n) throw DomainError("energy index k out of range");
    if (cfg.n() != spec.n) throw DomainError("theta configuration does not match Hamiltonian dimension");
    if (nbar.nbar.size() != spec.n) throw DomainError("quantum number must have n components");
    const Rational level(nbar.norm());

    Rational inner = make_rational(static_cast<long>(spec.n), 2);
    if (auto it = spec.diag.find(0); it != spec.diag.end()) inner += it->second[k - 1] * level;

    std::size_t series_terms = 0;
    for (const auto& [label, values] : spec.diag)
        if (label != 0) ++series_terms;
    Rational s(0);
    if (auto it = spec.diag.find(static_cast<unsigned>(k)); it != spec.diag.end())
        for (const auto& v : it->second) s += v;

    Rational s_power(1);
    Rational level_power = level;
    for (std::size_t p = 1; p <= series_terms; ++p) {
        s_power *= s;
        level_power *= level;
        inner += s_power * level_power;
    }
    return cfg.theta(k) * inner;
}

std::vector<Rational> hermite_coefficients(unsigned k) {
    std::vector<Rational> prev{Rational(1)};
    if (k == 0) return prev;
    std::vector<Rational> cur{Rational(0), Rational(2)};
    for (unsigned m = 1; m < k; ++m) {
        std::vector<Rational> next(cur.size() + 1, Rational(0));
        for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += 2 * cur[j];
        for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= Rational(2 * m) * prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

PolyGauss PolyGauss::derivative(std::size_t axis) const {
    Polynomial d = poly.derivative(axis);
    if (weight != 0)
        d -= (Polynomial::coordinate(poly.dimension(), axis) * poly).scaled(Complex(Rational(weight)));
    return {std::move(d), weight};
}

double PolyGauss::evaluate_abs(std::span<const double> x) const {
    std::complex<double> v;
    double r2 = 0;
    for (double c : x) r2 += c * c;
    for (const auto& [e, c] : poly.terms()) {
        double m = 1;
        for (std::size_t k = 0; k < e.size(); ++k) m *= std::pow(x[k], static_cast<int>(e[k]));
        v += std::complex<double>(c.re.get_d(), c.im.get_d()) * m;
    }
    return std::abs(v) * std::exp(-0.5 * weight * r2);
}

PolyGauss pointwise_product(std::span<const PolyGauss> factors) {
    PolyGauss out{factors.front().poly, factors.front().weight};
    for (std::size_t j = 1; j < factors.size(); ++j) {
        out.poly = out.poly * factors[j].poly;
        out.weight += factors[j].weight;
    }
    return out;
}

PolyGauss ground_state(unsigned k, std::size_t n) {
    const auto coeffs = hermite_coefficients(k);
    const Polynomial u = radius_squared(n).scaled(Complex(Rational(1, 2)));
    Polynomial h(n);
    Polynomial u_power = Polynomial::constant(n, Complex(1));
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        h += u_power.scaled(Complex(coeffs[j]));
        u_power = u_power * u;
    }
    return {std::move(h), 1};
}

namespace {

struct PolyGaussOps {
    PolyGauss derivative(const PolyGauss& f, std::size_t axis) const { return f.derivative(axis); }
    bool is_zero(const PolyGauss& f) const { return f.is_zero(); }
    PolyGauss product(std::span<const PolyGauss> slots) const { return pointwise_product(slots); }
    PolyGauss scaled(const PolyGauss& f, const Complex& c) const { return {f.poly.scaled(c), f.weight}; }
    void accumulate(PolyGauss& into, const PolyGauss& term) const {
        into.poly += term.poly;
        into.weight = term.weight;
    }
    PolyGauss zero_like(const PolyGauss& f) const { return {Polynomial(f.poly.dimension()), 0}; }
};

double max_abs_coefficient(const Polynomial& p) {
    double m = 0;
    for (const auto& [e, c] : p.terms()) m = std::max(m, std::hypot(c.re.get_d(), c.im.get_d()));
    return m;
}

}  // namespace

TruncatedStar star_polygauss_truncated(std::span<const PolyGauss> factors, const ThetaConfig& cfg, unsigned order) {
    if (factors.size() != cfg.n()) throw ArityError("star product expects n factors");
    unsigned total_weight = 0;
    for (const auto& f : factors) {
        if (f.poly.dimension() != cfg.n()) throw DomainError("factor dimension does not match theta configuration");
        total_weight += f.weight;
    }
    TruncatedStar out;
    out.sum = {Polynomial(cfg.n()), total_weight};
    const auto terms = p_operator_terms(cfg);
    bool any_zero = std::any_of(factors.begin(), factors.end(), [](const PolyGauss& f) { return f.is_zero(); });
    if (any_zero) {
        out.increments.assign(order + 1, PolyGauss{Polynomial(cfg.n()), total_weight});
        return out;
    }
    detail::ExponentialExpansion<PolyGauss, PolyGaussOps> expansion(terms, order, PolyGaussOps{});
    out.increments = expansion.run(factors);
    for (auto& inc : out.increments) {
        inc.weight = total_weight;
        out.sum.poly += inc.poly;
    }
    out.last_increment_magnitude = max_abs_coefficient(out.increments.back().poly);
    return out;
}

namespace {

Rational squared_norm(std::span<const Rational> x) {
    Rational r(0);
    for (const auto& c : x) r += c * c;
    return r;
}

double residual_value(const Rational& modulus2, unsigned weight, const Rational& r2, double extra_scale) {
    return std::sqrt(modulus2.get_d()) * std::exp(-0.5 * weight * r2.get_d()) * extra_scale;
}

std::string trend(const std::vector<double>& v) {
    bool inc = true;
    bool dec = true;
    bool flat = true;
    for (std::size_t a = 1; a < v.size(); ++a) {
        if (v[a] < v[a - 1]) inc = false;
        if (v[a] > v[a - 1]) dec = false;
        if (v[a] != v[a - 1]) flat = false;
    }
    if (flat) return "constant";
    if (inc) return "non-decreasing";
    if (dec) return "non-increasing";
    return "non-monotonic";
}

}  // namespace

ResidualReport residual_report(const HamiltonianSpec& spec, const ThetaConfig& cfg, unsigned k, unsigned order,
                               std::span<const std::vector<Rational>> sample_points, std::size_t coord_i,
                               std::size_t coord_j) {
    const std::size_t n = spec.n;
    if (cfg.n() != n) throw DomainError("theta configuration does not match Hamiltonian dimension");
    if (coord_i == coord_j || coord_i < 1 || coord_j < 1 || coord_i > n || coord_j > n)
        throw DomainError("complex coordinate needs two distinct axes in 1..n");
    for (const auto& x : sample_points) {
        if (x.size() != n) throw DomainError("sample point has wrong dimension");
        if (squared_norm(x) > 16) throw DomainError("sample points must satisfy |x| <= 4");
    }

    const PolyGauss psi = ground_state(k, n);
    const Polynomial a_scaled =
        Polynomial::coordinate(n, coord_i) + Polynomial::coordinate(n, coord_j).scaled(Complex::i());
    const Polynomial h = build_hamiltonian(spec);

    auto with_first = [&](Polynomial first) {
        std::vector<PolyGauss> f(n, psi);
        f[0] = PolyGauss{std::move(first), 0};
        return f;
    };
    const auto ground = star_polygauss_truncated(with_first(a_scaled), cfg, order);
    const auto eig_h = star_polygauss_truncated(with_first(h), cfg, order);
    const auto eig_1 = star_polygauss_truncated(with_first(Polynomial::constant(n, Complex(1))), cfg, order);

    ResidualReport rep;
    rep.n = n;
    rep.k = k;
    rep.coord_i = coord_i;
    rep.coord_j = coord_j;
    rep.energy = energy(1, QuantumNumber{std::vector<unsigned>(n, 0)}, cfg, spec);
    rep.max_order = order;
    rep.points.assign(sample_points.begin(), sample_points.end());
    rep.ground_trend.clear();

    Polynomial g_partial(n);
    Polynomial e_partial(n);
    const unsigned weight = ground.sum.weight;
    std::vector<double> g_max;
    std::vector<double> e_max;
    for (unsigned o = 0; o <= order; ++o) {
        g_partial += ground.increments[o].poly;
        e_partial += eig_h.increments[o].poly - eig_1.increments[o].poly.scaled(Complex(rep.energy));
        ResidualOrderSummary s{o, 0.0, 0.0};
        for (std::size_t p = 0; p < sample_points.size(); ++p) {
            const auto& x = sample_points[p];
            const Rational r2 = squared_norm(x);
            ResidualRow row{o, p, norm2(g_partial.evaluate(x)), 0.0, norm2(e_partial.evaluate(x)), 0.0};
            row.ground_residual = residual_value(row.ground_poly_modulus2, weight, r2, 1.0 / std::numbers::sqrt2);
            row.eigen_residual = residual_value(row.eigen_poly_modulus2, weight, r2, 1.0);
            s.max_ground_residual = std::max(s.max_ground_residual, row.ground_residual);
            s.max_eigen_residual = std::max(s.max_eigen_residual, row.eigen_residual);
            rep.rows.push_back(std::move(row));
        }
        g_max.push_back(s.max_ground_residual);
        e_max.push_back(s.max_eigen_residual);
        rep.summary.push_back(s);
    }
    rep.ground_trend = trend(g_max);
    rep.eigen_trend = trend(e_max);
    return rep;
}

nlohmann::ordered_json to_json(const ResidualReport& r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["k"] = r.k;
    j["complex_coordinate"] = {r.coord_i, r.coord_j};
    j["energy"] = rational_to_string(r.energy);
    j["max_order"] = r.max_order;
    j["normalization"] = "C = 1, C' = C^n = 1";
    auto pts = nlohmann::ordered_json::array();
    for (const auto& p : r.points) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& c : p) arr.push_back(rational_to_string(c));
        pts.push_back(arr);
    }
    j["points"] = pts;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json o;
        o["order"] = row.order;
        o["point"] = row.point;
        o["ground_poly_modulus2"] = rational_to_string(row.ground_poly_modulus2);
        o["ground_residual"] = row.ground_residual;
        o["eigen_poly_modulus2"] = rational_to_string(row.eigen_poly_modulus2);
        o["eigen_residual"] = row.eigen_residual;
        rows.push_back(std::move(o));
    }
    j["rows"] = rows;
    auto summary = nlohmann::ordered_json::array();
    for (const auto& s : r.summary)
        summary.push_back(
            {{"order", s.order}, {"max_ground_residual", s.max_ground_residual}, {"max_eigen_residual", s.max_eigen_residual}});
    j["summary"] = summary;
    j["ground_trend"] = r.ground_trend;
    j["eigen_trend"] = r.eigen_trend;
    return j;
}

std::string to_csv(const ResidualReport& r) {
    std::ostringstream out;
    out.precision(17);
    out << "order,point,ground_poly_modulus2,ground_residual,eigen_poly_modulus2,eigen_residual\n";
    for (const auto& row : r.rows) {
        out << row.order << ',' << row.point << ',' << rational_to_string(row.ground_poly_modulus2) << ','
            << row.ground_residual << ',' << rational_to_string(row.eigen_poly_modulus2) << ',' << row.eigen_residual
            << '\n';
    }
    return out.str();
}

std::string to_text(const ResidualReport& r) {
    std::ostringstream out;
    out.precision(10);
    out << "n = " << r.n << ", k = " << r.k << ", a_" << r.coord_i << r.coord_j << ", E_{1,0} = "
        << rational_to_string(r.energy) << ", " << r.points.size() << " points\n";
    out << "order  max_ground_residual  max_eigen_residual\n";
    for (const auto& s : r.summary)
        out << s.order << "  " << s.max_ground_residual << "  " << s.max_eigen_residual << '\n';
    out << "ground trend: " << r.ground_trend << "\neigen trend: " << r.eigen_trend << '\n';
    return out.str();
}

std::vector<std::vector<Rational>> default_sample_points(std::size_t n, std::size_t count, std::uint64_t seed) {
    Rng rng(derive_seed(seed, "residual-points"));
    std::vector<std::vector<Rational>> pts;
    while (pts.size() < count) {
        std::vector<Rational> x;
        for (std::size_t d = 0; d < n; ++d) x.push_back(make_rational(rng.uniform(-8, 8), 4));
        if (squared_norm(x) <= 16) pts.push_back(std::move(x));
    }
    return pts;
}

}  // namespace nstar
