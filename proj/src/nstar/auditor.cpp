#include "nstar/auditor.hpp"

#include "nstar/closed_forms.hpp"
#include "nstar/errors.hpp"
#include "nstar/random.hpp"
#include "nstar/root2.hpp"
#include "nstar/star.hpp"
#include "nstar/star_oracle.hpp"
#include "nstar/wave.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <sstream>

namespace nstar {

namespace {

using ordered_json = nlohmann::ordered_json;
using Sides = std::pair<Root2Polynomial, Root2Polynomial>;

constexpr unsigned kOracleTrials = 5;
constexpr unsigned kShrinkBudget = 400;

// ---- corpus sampling --------------------------------------------------------

Rational sample_theta_component(Rng& rng) {
    static const std::array<std::pair<long, long>, 7> values{
        {{0, 1}, {1, 2}, {-1, 2}, {1, 1}, {-1, 1}, {2, 1}, {-2, 1}}};
    const auto& [p, q] = values[static_cast<std::size_t>(rng.uniform(0, values.size() - 1))];
    return make_rational(p, q);
}

ThetaConfig sample_theta(Rng& rng, std::size_t n) {
    std::vector<Rational> th(n);
    for (auto& t : th) t = sample_theta_component(rng);
    return ThetaConfig(n, std::move(th));
}

Complex sample_coefficient(Rng& rng, long bound, bool real) {
    for (;;) {
        const long re = static_cast<long>(rng.uniform(-bound, bound));
        const long im = real ? 0 : static_cast<long>(rng.uniform(-bound, bound));
        if (re != 0 || im != 0) return Complex(Rational(re), Rational(im));
    }
}

MultiIndex sample_exponents(Rng& rng, std::size_t n, unsigned max_degree) {
    MultiIndex e(n, 0);
    const auto d = static_cast<unsigned>(rng.uniform(0, max_degree));
    for (unsigned s = 0; s < d; ++s) ++e[static_cast<std::size_t>(rng.uniform(0, n - 1))];
    return e;
}

// One third monomials with unit coefficient, the rest random polynomials of
// up to max_terms terms.
Polynomial sample_poly(Rng& rng, std::size_t n, const Corpus& c, bool real = false) {
    if (rng.uniform(0, 2) == 0) return Polynomial::monomial(n, sample_exponents(rng, n, c.max_degree));
    Polynomial p(n);
    const auto terms = static_cast<unsigned>(rng.uniform(1, c.max_terms));
    for (unsigned t = 0; t < terms; ++t)
        p.add_term(sample_exponents(rng, n, c.max_degree), sample_coefficient(rng, c.coeff_bound, real));
    return p;
}

std::size_t sample_dimension(Rng& rng, const Corpus& c) {
    return c.dimensions[static_cast<std::size_t>(rng.uniform(0, c.dimensions.size() - 1))];
}

std::size_t sample_axis(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng.uniform(1, n)); }

// ---- trials -----------------------------------------------------------------

struct Trial {
    ThetaConfig cfg = ThetaConfig::ones(3);
    std::vector<std::string> roles;
    std::vector<Polynomial> inputs;
    std::vector<std::pair<std::string, std::size_t>> params;

    std::size_t n() const { return cfg.n(); }
    const Polynomial& in(std::size_t i) const { return inputs[i]; }
    std::size_t param(std::string_view name) const {
        for (const auto& [k, v] : params)
            if (k == name) return v;
        throw DomainError("missing trial parameter");
    }
    void add(std::string role, Polynomial p) {
        roles.push_back(std::move(role));
        inputs.push_back(std::move(p));
    }
};

Trial make_trial(ThetaConfig cfg) {
    Trial t;
    t.cfg = std::move(cfg);
    return t;
}

// Star products routed through whichever engine is being checked.
struct Star {
    const StarEngine& engine;
    const ThetaConfig& cfg;

    Polynomial operator()(const std::vector<Polynomial>& fs) const { return engine(fs, cfg); }
    Polynomial operator()(const Polynomial& a, const Polynomial& b, const Polynomial& c) const {
        return (*this)(std::vector<Polynomial>{a, b, c});
    }
    /// {f, h}_{*, g} at n = 3.
    Polynomial bracket(const Polynomial& f, const Polynomial& h, const Polynomial& g) const {
        return (*this)(f, g, h) - (*this)(h, g, f);
    }
    Root2Polynomial operator()(const std::vector<Root2Polynomial>& fs) const { return star_n(fs, cfg, engine); }
};

Root2Polynomial r2(Polynomial p) { return Root2Polynomial(std::move(p)); }

enum class Mode { Equality, Inequality, Numeric };

struct ClaimDef {
    ClaimId id;
    const char* name;
    Mode mode;
    bool guaranteed;
    const char* corpus_note;
    std::function<Trial(Rng&, const Corpus&, unsigned)> sample;
    std::function<Sides(const Trial&, const StarEngine&)> eval;
};

// n-slot trial with `count` sampled inputs named slot1..slotN.
Trial sample_slots(Rng& rng, const Corpus& c, std::size_t n, std::size_t count, bool real = false) {
    Trial t = make_trial(sample_theta(rng, n));
    for (std::size_t s = 1; s <= count; ++s) t.add("slot" + std::to_string(s), sample_poly(rng, n, c, real));
    return t;
}

Trial sample_named(Rng& rng, const Corpus& c, std::size_t n, std::initializer_list<const char*> names,
                   bool real = false) {
    Trial t = make_trial(sample_theta(rng, n));
    for (const char* r : names) t.add(r, sample_poly(rng, n, c, real));
    return t;
}

ClaimDef distributivity(ClaimId id, const char* name, std::size_t slot) {
    return {id, name, Mode::Equality, true, "additivity in one slot",
            [slot](Rng& rng, const Corpus& c, unsigned) {
                const std::size_t n = sample_dimension(rng, c);
                Trial t = sample_slots(rng, c, n, n);
                t.add("extra", sample_poly(rng, n, c));
                t.params.emplace_back("slot", slot);
                return t;
            },
            [](const Trial& t, const StarEngine& e) {
                Star s{e, t.cfg};
                const std::size_t slot = t.param("slot") - 1;
                std::vector<Polynomial> a(t.inputs.begin(), t.inputs.begin() + static_cast<long>(t.n()));
                std::vector<Polynomial> b = a;
                std::vector<Polynomial> sum = a;
                b[slot] = t.inputs.back();
                sum[slot] = a[slot] + b[slot];
                return Sides{r2(s(sum)), r2(s(a) + s(b))};
            }};
}

ClaimDef cf_coord(ClaimId id, const char* name, int which) {
    return {id, name, Mode::Equality, true, "n=3, one coordinate factor",
            [](Rng& rng, const Corpus& c, unsigned) {
                Trial t = sample_named(rng, c, 3, {"f", "g"});
                t.params.emplace_back("k", sample_axis(rng, 3));
                return t;
            },
            [which](const Trial& t, const StarEngine& e) {
                Star s{e, t.cfg};
                const std::size_t k = t.param("k");
                const Polynomial xk = Polynomial::coordinate(3, k);
                const Polynomial &f = t.in(0), &g = t.in(1);
                switch (which) {
                    case 0: return Sides{r2(cf_coord_first(k, f, g, t.cfg)), r2(s(xk, f, g))};
                    case 1: return Sides{r2(cf_coord_middle(k, g, f, t.cfg)), r2(s(g, xk, f))};
                    default: return Sides{r2(cf_coord_last(k, f, g, t.cfg)), r2(s(f, g, xk))};
                }
            }};
}

ClaimDef cf_two(ClaimId id, const char* name, TwoCoordVariant v) {
    return {id, name, Mode::Equality, true, "n=3, two coordinate factors",
            [](Rng& rng, const Corpus& c, unsigned) {
                Trial t = sample_named(rng, c, 3, {"f"});
                t.params.emplace_back("k", sample_axis(rng, 3));
                return t;
            },
            [v](const Trial& t, const StarEngine& e) {
                const std::size_t k = t.param("k");
                return Sides{r2(cf_two_coords(k, v, t.in(0), t.cfg)),
                             r2(two_coords_definition(k, v, t.in(0), t.cfg, e))};
            }};
}

Trial sample_complex_pair(Rng& rng, const Corpus& c, std::initializer_list<const char*> names, bool real) {
    Trial t = sample_named(rng, c, 3, names, real);
    const std::size_t i = sample_axis(rng, 3);
    std::size_t j = sample_axis(rng, 2);
    if (j >= i) ++j;
    t.params.emplace_back("i", i);
    t.params.emplace_back("j", j);
    return t;
}

ClaimDef cf_complex_claim(ClaimId id, const char* name, ComplexForm form) {
    return {id, name, Mode::Equality, false, "n=3, one complex coordinate a_ij or abar_ij",
            [](Rng& rng, const Corpus& c, unsigned) { return sample_complex_pair(rng, c, {"f", "g"}, false); },
            [form](const Trial& t, const StarEngine& e) {
                const std::size_t i = t.param("i"), j = t.param("j");
                return Sides{cf_complex(form, i, j, t.in(0), t.in(1), t.cfg),
                             complex_form_definition(form, i, j, t.in(0), t.in(1), t.cfg, e)};
            }};
}

// conj(x_k *^{x_q} f) = x_k *^f x_q with the conjugate taken as exp(-P).
ClaimDef conj_xx(ClaimId id, const char* name, std::size_t step) {
    return {id, name, Mode::Equality, true, "n=3, conjugate product via exp(-P)",
            [](Rng& rng, const Corpus& c, unsigned) {
                Trial t = sample_named(rng, c, 3, {"f"});
                t.params.emplace_back("k", sample_axis(rng, 3));
                return t;
            },
            [step](const Trial& t, const StarEngine& e) {
                const std::size_t k = t.param("k");
                const Polynomial xk = Polynomial::coordinate(3, k);
                const Polynomial xq = Polynomial::coordinate(3, sigma_power(k, step, 3));
                const ThetaConfig neg = t.cfg.negated();
                Star conj_star{e, neg};
                Star s{e, t.cfg};
                return Sides{r2(conj_star(xk, xq, t.in(0))), r2(s(xk, t.in(0), xq))};
            }};
}

ClaimDef noncomm(ClaimId id, const char* name, bool coordinate_in_middle) {
    return {id, name, Mode::Inequality, false, "n=3, one coordinate factor",
            [](Rng& rng, const Corpus& c, unsigned) {
                Trial t = sample_named(rng, c, 3, {"f", "g"});
                t.params.emplace_back("k", sample_axis(rng, 3));
                return t;
            },
            [coordinate_in_middle](const Trial& t, const StarEngine& e) {
                Star s{e, t.cfg};
                const Polynomial xk = Polynomial::coordinate(3, t.param("k"));
                const Polynomial &f = t.in(0), &g = t.in(1);
                if (coordinate_in_middle) return Sides{r2(s(g, xk, f)), r2(s(f, xk, g))};
                return Sides{r2(s(xk, g, f)), r2(s(f, g, xk))};
            }};
}

// Complex conjugate of a star product with a_ij versus the product with abar_ij.
ClaimDef complex_inequality(ClaimId id, const char* name, int which) {
    return {id, name, Mode::Inequality, false, "n=3, real f and g, full complex conjugation",
            [](Rng& rng, const Corpus& c, unsigned) { return sample_complex_pair(rng, c, {"f", "g"}, true); },
            [which](const Trial& t, const StarEngine& e) {
                Star s{e, t.cfg};
                const auto [a, abar] = complex_coords(3, t.param("i"), t.param("j"));
                const Root2Polynomial f = r2(t.in(0)), g = r2(t.in(1));
                switch (which) {
                    case 1: return Sides{s({a, f, g}).conj(), s({abar, f, g})};
                    case 2: return Sides{s({g, f, a}).conj(), s({g, f, abar})};
                    case 3: return Sides{s({a, f, g}), s({g, f, a})};
                    default: return Sides{s({f, a, g}).conj(), s({f, abar, g})};
                }
            }};
}

// n-ary: a_pq in slot 1, slot n, or an inner slot m.
ClaimDef conj_inequality(ClaimId id, const char* name, int which) {
    return {id, name, Mode::Inequality, false, "real f_i, full complex conjugation",
            [which](Rng& rng, const Corpus& c, unsigned) {
                const std::size_t n = sample_dimension(rng, c);
                Trial t = sample_slots(rng, c, n, n - 1, true);
                const std::size_t p = sample_axis(rng, n);
                std::size_t q = sample_axis(rng, n - 1);
                if (q >= p) ++q;
                t.params.emplace_back("p", p);
                t.params.emplace_back("q", q);
                std::size_t m = which == 1 ? 1 : n;
                if (which == 3) m = static_cast<std::size_t>(rng.uniform(2, static_cast<long long>(n) - 1));
                t.params.emplace_back("m", m);
                return t;
            },
            [](const Trial& t, const StarEngine& e) {
                Star s{e, t.cfg};
                const auto [a, abar] = complex_coords(t.n(), t.param("p"), t.param("q"));
                const std::size_t m = t.param("m");
                std::vector<Root2Polynomial> with_a, with_abar;
                std::size_t next = 0;
                for (std::size_t slot = 1; slot <= t.n(); ++slot) {
                    if (slot == m) {
                        with_a.push_back(a);
                        with_abar.push_back(abar);
                    } else {
                        with_a.push_back(r2(t.in(next)));
                        with_abar.push_back(r2(t.in(next)));
                        ++next;
                    }
                }
                return Sides{s(with_a).conj(), s(with_abar)};
            }};
}

Trial associativity_candidate() {
    Trial t = make_trial(ThetaConfig(3, {Rational(1), Rational(0), Rational(0)}));
    t.add("f1", Polynomial::coordinate(3, 1));
    t.add("g1", Polynomial::coordinate(3, 2));
    t.add("h1", Polynomial::coordinate(3, 3));
    t.add("g2", Polynomial::coordinate(3, 3));
    t.add("h2", Polynomial::coordinate(3, 2));
    return t;
}

std::vector<ClaimDef> build_claims() {
    std::vector<ClaimDef> d;
    d.push_back(distributivity(ClaimId::Distributivity1, "distributivity-1", 1));
    d.push_back(distributivity(ClaimId::Distributivity2, "distributivity-2", 2));
    d.push_back(distributivity(ClaimId::Distributivity3, "distributivity-3", 3));
    d.push_back({ClaimId::Associativity, "associativity", Mode::Equality, false,
                 "n=3; trial 0 is the x1,x2,x3,x3,x2 candidate at theta=(1,0,0)",
                 [](Rng& rng, const Corpus& c, unsigned trial) {
                     if (trial == 0) return associativity_candidate();
                     return sample_named(rng, c, 3, {"f1", "g1", "h1", "g2", "h2"});
                 },
                 [](const Trial& t, const StarEngine& e) {
                     Star s{e, t.cfg};
                     return Sides{r2(s(s(t.in(0), t.in(1), t.in(2)), t.in(3), t.in(4))),
                                  r2(s(t.in(0), t.in(1), s(t.in(2), t.in(3), t.in(4))))};
                 }});
    d.push_back({ClaimId::SkewSymmetry, "skew-symmetry", Mode::Equality, true, "bracket with n-2 inner factors",
                 [](Rng& rng, const Corpus& c, unsigned) {
                     const std::size_t n = sample_dimension(rng, c);
                     Trial t = sample_named(rng, c, n, {"f", "h"});
                     for (std::size_t s = 1; s + 2 <= n; ++s) t.add("g" + std::to_string(s), sample_poly(rng, n, c));
                     return t;
                 },
                 [](const Trial& t, const StarEngine& e) {
                     Star s{e, t.cfg};
                     const std::vector<Polynomial> mid(t.inputs.begin() + 2, t.inputs.end());
                     auto bracket = [&](const Polynomial& f, const Polynomial& h) {
                         std::vector<Polynomial> a{f}, b{h};
                         for (const auto& g : mid) {
                             a.push_back(g);
                             b.push_back(g);
                         }
                         a.push_back(h);
                         b.push_back(f);
                         return s(a) - s(b);
                     };
                     return Sides{r2(bracket(t.in(0), t.in(1))), r2(-bracket(t.in(1), t.in(0)))};
                 }});
    auto jacobi_sample = [](Rng& rng, const Corpus& c, unsigned) {
        return sample_named(rng, c, 3, {"l", "f", "h", "g1", "g2"});
    };
    d.push_back({ClaimId::JacobiSixTerm, "jacobi-six-term", Mode::Equality, false, "n=3, six nested brackets",
                 jacobi_sample, [](const Trial& t, const StarEngine& e) {
                     Star s{e, t.cfg};
                     const Polynomial &l = t.in(0), &f = t.in(1), &h = t.in(2), &g1 = t.in(3), &g2 = t.in(4);
                     auto br = [&](const Polynomial& a, const Polynomial& b, const Polynomial& g) {
                         return s.bracket(a, b, g);
                     };
                     const Polynomial sum = br(l, br(f, h, g1), g2) + br(l, br(f, h, g2), g1) +
                                            br(h, br(l, f, g1), g2) + br(h, br(l, f, g2), g1) +
                                            br(f, br(h, l, g1), g2) + br(f, br(h, l, g2), g1);
                     return Sides{r2(sum), r2(Polynomial(3))};
                 }});
    d.push_back({ClaimId::JacobiExpansion, "jacobi-expansion", Mode::Equality, false,
                 "n=3, nested bracket against four iterated products", jacobi_sample,
                 [](const Trial& t, const StarEngine& e) {
                     Star s{e, t.cfg};
                     const Polynomial &l = t.in(0), &f = t.in(1), &h = t.in(2), &g1 = t.in(3), &g2 = t.in(4);
                     const Polynomial lhs = s.bracket(l, s.bracket(f, h, g1), g2);
                     const Polynomial rhs = s(s(l, g2, f), g1, h) - s(s(l, g2, h), g1, f) -
                                            s(s(f, g1, h), g2, l) + s(s(h, g1, f), g2, l);
                     return Sides{r2(lhs), r2(rhs)};
                 }});
    d.push_back(cf_coord(ClaimId::CfCoordFirst, "cf-coord-first", 0));
    d.push_back(cf_coord(ClaimId::CfCoordMiddle, "cf-coord-middle", 1));
    d.push_back(cf_coord(ClaimId::CfCoordLast, "cf-coord-last", 2));
    d.push_back(cf_two(ClaimId::CfTwoCoords1, "cf-two-coords-1", TwoCoordVariant::NextMiddle));
    d.push_back(cf_two(ClaimId::CfTwoCoords2, "cf-two-coords-2", TwoCoordVariant::NextLast));
    d.push_back(cf_two(ClaimId::CfTwoCoords3, "cf-two-coords-3", TwoCoordVariant::NextNextMiddle));
    d.push_back(cf_two(ClaimId::CfTwoCoords4, "cf-two-coords-4", TwoCoordVariant::NextNextLast));
    d.push_back(cf_complex_claim(ClaimId::CfComplex1, "cf-complex-1", ComplexForm::AFirst));
    d.push_back(cf_complex_claim(ClaimId::CfComplex2, "cf-complex-2", ComplexForm::AbarFirst));
    d.push_back(cf_complex_claim(ClaimId::CfComplex3, "cf-complex-3", ComplexForm::ALast));
    d.push_back(cf_complex_claim(ClaimId::CfComplex4, "cf-complex-4", ComplexForm::AbarLast));
    d.push_back(cf_complex_claim(ClaimId::CfComplex4Symmetric, "cf-complex-4s", ComplexForm::AbarLastSymmetric));
    d.push_back(cf_complex_claim(ClaimId::CfComplex5, "cf-complex-5", ComplexForm::AMiddle));
    d.push_back(cf_complex_claim(ClaimId::CfComplex6, "cf-complex-6", ComplexForm::AbarMiddle));
    d.push_back({ClaimId::CfNarySlot, "cf-nary-slot", Mode::Equality, false, "coordinate x_p in slot m",
                 [](Rng& rng, const Corpus& c, unsigned) {
                     const std::size_t n = sample_dimension(rng, c);
                     Trial t = make_trial(sample_theta(rng, n));
                     const std::size_t m = sample_axis(rng, n);
                     t.params.emplace_back("m", m);
                     t.params.emplace_back("p", sample_axis(rng, n));
                     for (std::size_t s = 1; s < m; ++s) t.add("f" + std::to_string(s), sample_poly(rng, n, c));
                     for (std::size_t s = m + 1; s <= n; ++s) t.add("g" + std::to_string(s), sample_poly(rng, n, c));
                     return t;
                 },
                 [](const Trial& t, const StarEngine& e) {
                     const SlotSpec spec{t.n(), t.param("m"), t.param("p")};
                     const auto split = static_cast<long>(spec.m - 1);
                     const std::vector<Polynomial> fs(t.inputs.begin(), t.inputs.begin() + split);
                     const std::vector<Polynomial> gs(t.inputs.begin() + split, t.inputs.end());
                     return Sides{r2(cf_nary_slot(spec, fs, gs, t.cfg)),
                                  r2(nary_slot_definition(spec, fs, gs, t.cfg, e))};
                 }});
    d.push_back(conj_xx(ClaimId::ConjXxF1, "conj-xx-f-1", 1));
    d.push_back(conj_xx(ClaimId::ConjXxF2, "conj-xx-f-2", 2));
    d.push_back(noncomm(ClaimId::NoncommWitness1, "noncomm-witness-1", false));
    d.push_back(noncomm(ClaimId::NoncommWitness2, "noncomm-witness-2", false));
    d.push_back(noncomm(ClaimId::NoncommWitness3, "noncomm-witness-3", true));
    d.push_back({ClaimId::OmegaAntisym, "omega-antisym", Mode::Numeric, true, "integer vectors in [-9,9]^3", {}, {}});
    d.push_back({ClaimId::OmegaCyclic, "omega-cyclic", Mode::Numeric, true,
                 "integer vectors in [-9,9]^3, determinant oracle", {}, {}});
    d.push_back(conj_inequality(ClaimId::ConjInequality1, "conj-inequality-1", 1));
    d.push_back(conj_inequality(ClaimId::ConjInequality2, "conj-inequality-2", 2));
    d.push_back(conj_inequality(ClaimId::ConjInequality3, "conj-inequality-3", 3));
    d.push_back(complex_inequality(ClaimId::ComplexInequality1, "complex-inequality-1", 1));
    d.push_back(complex_inequality(ClaimId::ComplexInequality2, "complex-inequality-2", 2));
    d.push_back(complex_inequality(ClaimId::ComplexInequality3, "complex-inequality-3", 3));
    d.push_back(complex_inequality(ClaimId::ComplexInequality4, "complex-inequality-4", 4));
    d.push_back({ClaimId::Homogeneity, "homogeneity", Mode::Equality, true, "scalar factor in one slot",
                 [](Rng& rng, const Corpus& c, unsigned) {
                     const std::size_t n = sample_dimension(rng, c);
                     Trial t = sample_slots(rng, c, n, n);
                     t.add("scalar", Polynomial::constant(n, sample_coefficient(rng, c.coeff_bound, false)));
                     t.params.emplace_back("slot", sample_axis(rng, n));
                     return t;
                 },
                 [](const Trial& t, const StarEngine& e) {
                     Star s{e, t.cfg};
                     std::vector<Polynomial> a(t.inputs.begin(), t.inputs.end() - 1);
                     std::vector<Polynomial> scaled = a;
                     const std::size_t slot = t.param("slot") - 1;
                     scaled[slot] = t.inputs.back() * a[slot];
                     return Sides{r2(s(scaled)), r2(t.inputs.back() * s(a))};
                 }});
    d.push_back({ClaimId::ConjugationLaw, "conjugation-law", Mode::Equality, true,
                 "exp(-P) applied term by term against the engine at -theta",
                 [](Rng& rng, const Corpus& c, unsigned) {
                     const std::size_t n = sample_dimension(rng, c);
                     return sample_slots(rng, c, n, n);
                 },
                 [](const Trial& t, const StarEngine& e) {
                     const ThetaConfig neg = t.cfg.negated();
                     return Sides{r2(oracle_star_n(t.inputs, t.cfg, -1)), r2(e(t.inputs, neg))};
                 }});
    d.push_back({ClaimId::ThetaZero, "theta-zero", Mode::Equality, true, "theta = 0 against the pointwise product",
                 [](Rng& rng, const Corpus& c, unsigned) {
                     const std::size_t n = sample_dimension(rng, c);
                     Trial t = sample_slots(rng, c, n, n);
                     t.cfg = ThetaConfig(n, std::vector<Rational>(n));
                     return t;
                 },
                 [](const Trial& t, const StarEngine& e) {
                     Polynomial prod = Polynomial::constant(t.n(), Complex(1));
                     for (const auto& f : t.inputs) prod = prod * f;
                     return Sides{r2(e(t.inputs, t.cfg)), r2(prod)};
                 }});
    d.push_back({ClaimId::RealConjugation, "real-conjugation", Mode::Equality, true,
                 "real inputs, complex conjugate against -theta",
                 [](Rng& rng, const Corpus& c, unsigned) {
                     const std::size_t n = sample_dimension(rng, c);
                     return sample_slots(rng, c, n, n, true);
                 },
                 [](const Trial& t, const StarEngine& e) {
                     const ThetaConfig neg = t.cfg.negated();
                     return Sides{r2(e(t.inputs, t.cfg).conj()), r2(e(t.inputs, neg))};
                 }});
    d.push_back({ClaimId::OracleEquivalence, "oracle-equivalence", Mode::Equality, true,
                 "engine against the term-by-term oracle",
                 [](Rng& rng, const Corpus& c, unsigned) {
                     const std::size_t n = sample_dimension(rng, c);
                     return sample_slots(rng, c, n, n);
                 },
                 [](const Trial& t, const StarEngine& e) {
                     return Sides{r2(e(t.inputs, t.cfg)), r2(oracle_star_n(t.inputs, t.cfg))};
                 }});
    d.push_back({ClaimId::KernelGrid, "kernel-grid", Mode::Numeric, true,
                 "n=3, plane-wave triples on an 8^3 lattice, theta in {0,+-1/64,+-1/32,+-1/16}", {}, {}});
    return d;
}

const std::vector<ClaimDef>& claims() {
    static const std::vector<ClaimDef> defs = [] {
        auto d = build_claims();
        std::sort(d.begin(), d.end(), [](const ClaimDef& a, const ClaimDef& b) { return a.id < b.id; });
        return d;
    }();
    return defs;
}

const ClaimDef& def(ClaimId id) {
    for (const auto& d : claims())
        if (d.id == id) return d;
    throw DomainError("unknown claim id");
}

const StarEngine& engine() {
    static const StarEngine e = default_star_engine();
    return e;
}

const StarEngine& oracle_engine() {
    static const StarEngine e = [](std::span<const Polynomial> fs, const ThetaConfig& cfg) {
        return oracle_star_n(fs, cfg);
    };
    return e;
}

// ---- reporting ----------------------------------------------------------------

ordered_json theta_json(const ThetaConfig& cfg) {
    ordered_json a = ordered_json::array();
    for (const auto& t : cfg.theta()) a.push_back(rational_to_string(t));
    return a;
}

ordered_json side_json(const Root2Polynomial& p) {
    ordered_json j;
    j["text"] = to_string(p);
    j["poly"] = to_json(p);
    return j;
}

ordered_json trial_json(const Trial& t, const Sides& sides) {
    ordered_json j;
    j["n"] = t.n();
    j["theta"] = theta_json(t.cfg);
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : t.params) params[k] = v;
    j["params"] = params;
    ordered_json inputs = ordered_json::array();
    for (std::size_t i = 0; i < t.inputs.size(); ++i) {
        ordered_json in;
        in["role"] = t.roles[i];
        in["text"] = to_string(t.inputs[i]);
        in["poly"] = to_json(t.inputs[i]);
        inputs.push_back(in);
    }
    j["inputs"] = inputs;
    j["lhs"] = side_json(sides.first);
    j["rhs"] = side_json(sides.second);
    j["rhs_minus_lhs"] = to_string(sides.second - sides.first);
    return j;
}

bool differ(const Sides& s) { return s.first != s.second; }

// Greedy shrinking while `keep` holds: zero theta components, drop the
// top-degree terms of an input, drop single terms.
Trial shrink(Trial t, const std::function<bool(const Trial&)>& keep) {
    unsigned budget = kShrinkBudget;
    auto attempt = [&](Trial cand) {
        if (budget == 0) return false;
        --budget;
        if (!keep(cand)) return false;
        t = std::move(cand);
        return true;
    };
    bool changed = true;
    while (changed && budget > 0) {
        changed = false;
        for (std::size_t k = 1; k <= t.n(); ++k) {
            if (sgn(t.cfg.theta(k)) == 0) continue;
            std::vector<Rational> th = t.cfg.theta();
            th[k - 1] = 0;
            Trial c = t;
            c.cfg = ThetaConfig(t.n(), std::move(th));
            changed |= attempt(std::move(c));
        }
        for (std::size_t i = 0; i < t.inputs.size(); ++i) {
            const int deg = t.inputs[i].degree();
            if (deg >= 1 && t.inputs[i].size() > 1) {
                Trial c = t;
                c.inputs[i] = t.inputs[i].filtered(
                    [deg](const MultiIndex& e, const Complex&) { return static_cast<int>(total_degree(e)) < deg; });
                if (!c.inputs[i].is_zero()) changed |= attempt(std::move(c));
            }
            if (t.inputs[i].size() <= 1) continue;
            const auto terms = t.inputs[i].terms();
            for (const auto& [e, coef] : terms) {
                Trial c = t;
                c.inputs[i] = t.inputs[i].filtered([&e = e](const MultiIndex& x, const Complex&) { return x != e; });
                if (attempt(std::move(c))) {
                    changed = true;
                    break;
                }
            }
        }
    }
    return t;
}

std::string describe(const Corpus& c, const ClaimDef& d) {
    std::ostringstream out;
    if (d.mode == Mode::Numeric) {
        out << d.corpus_note;
        return out.str();
    }
    out << "degree <= " << c.max_degree << ", <= " << c.max_terms << " terms, coefficients in {-" << c.coeff_bound
        << ".." << c.coeff_bound << "}+{-" << c.coeff_bound << ".." << c.coeff_bound
        << "}i, theta in {0,+-1/2,+-1,+-2}, n in {";
    for (std::size_t i = 0; i < c.dimensions.size(); ++i) out << (i ? "," : "") << c.dimensions[i];
    out << "}; " << d.corpus_note;
    return out.str();
}

void audit_equality(const ClaimDef& d, const Corpus& corpus, Rng& rng, ClaimReport& r) {
    for (unsigned trial = 0; trial < corpus.trials; ++trial) {
        const Trial t = d.sample(rng, corpus, trial);
        ++r.trials;
        const Sides sides = d.eval(t, engine());
        bool engine_oracle_disagree = false;
        if (!differ(sides) && trial < kOracleTrials) {
            ++r.oracle_trials;
            const Sides o = d.eval(t, oracle_engine());
            engine_oracle_disagree = o != sides;
        }
        if (!differ(sides) && !engine_oracle_disagree) continue;
        const Trial small =
            engine_oracle_disagree ? t : shrink(t, [&d](const Trial& c) { return differ(d.eval(c, engine())); });
        const Sides found = d.eval(small, engine());
        const Sides confirm = d.eval(small, oracle_engine());
        r.verdict = Verdict::Fails;
        r.counterexample = trial_json(small, found);
        (*r.counterexample)["trial"] = trial;
        (*r.counterexample)["oracle_confirmed"] = differ(confirm) && confirm == found;
        if (engine_oracle_disagree) (*r.counterexample)["oracle"] = trial_json(small, confirm);
        return;
    }
}

Trial constant_inputs(Trial t) {
    long c = 2;
    for (auto& in : t.inputs) in = Polynomial::constant(t.n(), Complex(Rational(c++)));
    return t;
}

void audit_inequality(const ClaimDef& d, const Corpus& corpus, Rng& rng, ClaimReport& r) {
    std::optional<Trial> first;
    std::optional<Trial> last_equal;
    for (unsigned trial = 0; trial < corpus.trials; ++trial) {
        const Trial t = d.sample(rng, corpus, trial);
        if (!first) first = t;
        ++r.trials;
        if (!differ(d.eval(t, engine()))) {
            last_equal = t;
            continue;
        }
        const Trial small = shrink(t, [&d](const Trial& c) { return differ(d.eval(c, engine())); });
        const Sides found = d.eval(small, engine());
        const Sides confirm = d.eval(small, oracle_engine());
        ++r.oracle_trials;
        r.witness = trial_json(small, found);
        (*r.witness)["trial"] = trial;
        (*r.witness)["oracle_confirmed"] = differ(confirm) && confirm == found;
        break;
    }
    const Trial degenerate = constant_inputs(*first);
    const Sides deg = d.eval(degenerate, engine());
    const Sides deg_oracle = d.eval(degenerate, oracle_engine());
    ++r.oracle_trials;
    r.degenerate = trial_json(degenerate, deg);
    (*r.degenerate)["oracle_confirmed"] = !differ(deg_oracle) && deg_oracle == deg;

    const bool witness_ok = r.witness && (*r.witness)["oracle_confirmed"].get<bool>();
    const bool degenerate_ok = !differ(deg) && (*r.degenerate)["oracle_confirmed"].get<bool>();
    if (witness_ok && degenerate_ok) return;
    r.verdict = Verdict::Fails;
    if (!r.witness && last_equal) {
        r.counterexample = trial_json(*last_equal, d.eval(*last_equal, engine()));
        (*r.counterexample)["oracle_confirmed"] = !differ(d.eval(*last_equal, oracle_engine()));
    } else {
        r.counterexample = *r.degenerate;
    }
}

ordered_json vec_json(std::span<const double> v) { return ordered_json(std::vector<double>(v.begin(), v.end())); }

std::array<double, 3> sample_int_vector(Rng& rng) {
    return {static_cast<double>(rng.uniform(-9, 9)), static_cast<double>(rng.uniform(-9, 9)),
            static_cast<double>(rng.uniform(-9, 9))};
}

long long det3(const std::array<double, 3>& p, const std::array<double, 3>& q, const std::array<double, 3>& r) {
    auto v = [](double x) { return static_cast<long long>(x); };
    return v(p[0]) * (v(q[1]) * v(r[2]) - v(q[2]) * v(r[1])) - v(p[1]) * (v(q[0]) * v(r[2]) - v(q[2]) * v(r[0])) +
           v(p[2]) * (v(q[0]) * v(r[1]) - v(q[1]) * v(r[0]));
}

void audit_omega(ClaimId id, const Corpus& corpus, Rng& rng, ClaimReport& r) {
    for (unsigned trial = 0; trial < corpus.trials; ++trial) {
        const auto p = sample_int_vector(rng), q = sample_int_vector(rng), s = sample_int_vector(rng);
        ++r.trials;
        bool ok = true;
        ordered_json ce;
        if (id == ClaimId::OmegaAntisym) {
            const auto a = omega(q, s), b = omega(s, q);
            ok = a[0] == -b[0] && a[1] == -b[1] && a[2] == -b[2];
            ce["q"] = vec_json(q);
            ce["r"] = vec_json(s);
            ce["omega_qr"] = vec_json(a);
            ce["omega_rq"] = vec_json(b);
        } else {
            const double t1 = triple_product(p, q, s), t2 = triple_product(s, p, q), t3 = triple_product(q, s, p);
            const auto det = static_cast<double>(det3(p, q, s));
            ok = t1 == t2 && t2 == t3 && t1 == det;
            ce["p"] = vec_json(p);
            ce["q"] = vec_json(q);
            ce["r"] = vec_json(s);
            ce["p_omega_qr"] = t1;
            ce["r_omega_pq"] = t2;
            ce["q_omega_rp"] = t3;
            ce["determinant"] = det;
        }
        if (!ok) {
            r.verdict = Verdict::Fails;
            ce["trial"] = trial;
            r.counterexample = ce;
            return;
        }
    }
}

void audit_kernel_grid(const Corpus& corpus, Rng& rng, ClaimReport& r) {
    const GridSpec spec{3, 8, 2 * 3.141592653589793};
    GridOracle oracle(spec);
    static const std::array<std::pair<long, long>, 7> thetas{
        {{0, 1}, {1, 64}, {-1, 64}, {1, 32}, {-1, 32}, {1, 16}, {-1, 16}}};
    double worst = 0;
    for (unsigned trial = 0; trial < corpus.trials; ++trial) {
        std::vector<Rational> th;
        for (int k = 0; k < 3; ++k) {
            const auto& [a, b] = thetas[static_cast<std::size_t>(rng.uniform(0, 6))];
            th.push_back(make_rational(a, b));
        }
        const ThetaConfig cfg(3, th);
        std::vector<WaveSum> waves;
        std::vector<Lattice> lattices;
        for (int j = 0; j < 3; ++j) {
            Frequency f{static_cast<double>(rng.uniform(-4, 3)), static_cast<double>(rng.uniform(-4, 3)),
                        static_cast<double>(rng.uniform(-4, 3))};
            waves.push_back(WaveSum::plane_wave(f));
            lattices.push_back(sample_on_grid(waves.back(), spec));
        }
        ++r.trials;
        const Lattice expected = sample_on_grid(star_waves(waves, cfg), spec);
        const double err = max_relative_error(oracle.star(lattices, cfg), expected);
        worst = std::max(worst, err);
        if (!(err <= corpus.tolerance)) {
            r.verdict = Verdict::Fails;
            ordered_json ce;
            ce["trial"] = trial;
            ce["theta"] = theta_json(cfg);
            ordered_json fr = ordered_json::array();
            for (const auto& w : waves) fr.push_back(w.terms().front().freq);
            ce["frequencies"] = fr;
            ce["relative_error"] = err;
            r.counterexample = ce;
            break;
        }
    }
    r.max_error = worst;
    if (r.verdict != Verdict::Fails) r.verdict = Verdict::HoldsWithinTol;
}

}  // namespace

std::span<const ClaimId> all_claims() {
    static const std::vector<ClaimId> ids = [] {
        std::vector<ClaimId> v;
        for (const auto& d : claims()) v.push_back(d.id);
        return v;
    }();
    return ids;
}

std::string_view claim_name(ClaimId id) { return def(id).name; }

ClaimId claim_from_name(std::string_view name) {
    for (const auto& d : claims())
        if (name == d.name) return d.id;
    throw DomainError("unknown claim id '" + std::string(name) + "'");
}

bool is_guaranteed(ClaimId id) { return def(id).guaranteed; }

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::HoldsExact: return "holds-exact";
        case Verdict::HoldsWithinTol: return "holds-within-tol";
        case Verdict::Fails: return "fails";
    }
    return "fails";
}

ClaimReport audit_claim(ClaimId claim, const Corpus& corpus, std::uint64_t seed) {
    const ClaimDef& d = def(claim);
    if (corpus.trials == 0) throw DomainError("trials must be at least 1");
    ClaimReport r;
    r.claim = claim;
    r.guaranteed = d.guaranteed;
    r.seed = seed;
    r.corpus = describe(corpus, d);
    Rng rng(seed);
    switch (d.mode) {
        case Mode::Equality: audit_equality(d, corpus, rng, r); break;
        case Mode::Inequality: audit_inequality(d, corpus, rng, r); break;
        case Mode::Numeric:
            if (claim == ClaimId::KernelGrid) {
                audit_kernel_grid(corpus, rng, r);
            } else {
                audit_omega(claim, corpus, rng, r);
            }
            break;
    }
    return r;
}

std::pair<ClaimReport, ClaimReport> audit_jacobi(const Corpus& corpus, std::uint64_t seed) {
    return {audit_claim(ClaimId::JacobiSixTerm, corpus, seed), audit_claim(ClaimId::JacobiExpansion, corpus, seed)};
}

std::vector<ClaimReport> run_claims(std::span<const ClaimId> ids, std::uint64_t seed, unsigned trials,
                                    double tolerance) {
    Corpus corpus;
    corpus.trials = trials;
    corpus.tolerance = tolerance;
    std::vector<ClaimId> sorted(ids.begin(), ids.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<ClaimReport> out;
    for (ClaimId id : sorted) out.push_back(audit_claim(id, corpus, derive_seed(seed, claim_name(id))));
    return out;
}

std::vector<ClaimReport> run_suite(std::uint64_t seed, unsigned trials, double tolerance) {
    return run_claims(all_claims(), seed, trials, tolerance);
}

bool guaranteed_ok(std::span<const ClaimReport> reports) {
    return std::none_of(reports.begin(), reports.end(),
                        [](const ClaimReport& r) { return r.guaranteed && r.verdict == Verdict::Fails; });
}

ordered_json to_json(const ClaimReport& r) {
    ordered_json j;
    j["claim"] = claim_name(r.claim);
    j["verdict"] = verdict_name(r.verdict);
    j["guaranteed"] = r.guaranteed;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["corpus"] = r.corpus;
    j["oracle_trials"] = r.oracle_trials;
    if (r.max_error) j["max_error"] = *r.max_error;
    j["counterexample"] = r.counterexample ? *r.counterexample : ordered_json(nullptr);
    if (r.witness) j["witness"] = *r.witness;
    if (r.degenerate) j["degenerate"] = *r.degenerate;
    return j;
}

ordered_json to_json(std::span<const ClaimReport> reports) {
    ordered_json a = ordered_json::array();
    for (const auto& r : reports) a.push_back(to_json(r));
    return a;
}

std::string to_text(std::span<const ClaimReport> reports) {
    std::ostringstream out;
    for (const auto& r : reports) {
        out << claim_name(r.claim) << ": " << verdict_name(r.verdict) << (r.guaranteed ? " [guaranteed]" : "")
            << " (" << r.trials << (r.trials == 1 ? " trial)" : " trials)");
        if (r.counterexample && r.counterexample->contains("rhs_minus_lhs")) {
            out << "\n    counterexample: rhs - lhs = " << (*r.counterexample)["rhs_minus_lhs"].get<std::string>();
            out << (r.counterexample->value("oracle_confirmed", false) ? " (oracle confirmed)" : " (oracle disagrees)");
        }
        if (r.witness) out << "\n    witness: rhs - lhs = " << (*r.witness)["rhs_minus_lhs"].get<std::string>();
        out << '\n';
    }
    return out.str();
}

}  // namespace nstar
