#include "nstar/closed_forms.hpp"

#include "nstar/errors.hpp"

namespace nstar {

namespace {

void require_ternary(const ThetaConfig& cfg) {
    if (cfg.n() != 3) throw DomainError("this closed form is stated for n = 3 only");
}

void require_axis(std::size_t k, std::size_t n) {
    if (k < 1 || k > n) throw DomainError("axis " + std::to_string(k) + " out of range");
}

std::size_t s1(std::size_t k) { return sigma_power(k, 1, 3); }
std::size_t s2(std::size_t k) { return sigma_power(k, 2, 3); }

Polynomial d(const Polynomial& f, std::size_t axis) { return f.derivative(axis); }

Complex i_theta(const ThetaConfig& cfg, std::size_t k, long den) {
    return {Rational(0), cfg.theta(k) / den};
}

Complex re_theta(const ThetaConfig& cfg, std::size_t k, long den) { return {cfg.theta(k) / den, Rational(0)}; }

}  // namespace

Polynomial cf_coord_first(std::size_t k, const Polynomial& f, const Polynomial& g, const ThetaConfig& cfg) {
    require_ternary(cfg);
    require_axis(k, 3);
    const Polynomial xk = Polynomial::coordinate(3, k);
    Polynomial out = xk * f * g;
    out += (d(f, s1(k)) * d(g, s2(k)) - d(f, s2(k)) * d(g, s1(k))).scaled(i_theta(cfg, k, 2));
    return out;
}

Polynomial cf_coord_middle(std::size_t k, const Polynomial& g, const Polynomial& f, const ThetaConfig& cfg) {
    require_ternary(cfg);
    require_axis(k, 3);
    const Polynomial xk = Polynomial::coordinate(3, k);
    Polynomial out = xk * f * g;
    out -= (d(g, s1(k)) * d(f, s2(k))).scaled(i_theta(cfg, s1(k), 2));
    out += (d(g, s2(k)) * d(f, s1(k))).scaled(i_theta(cfg, s2(k), 2));
    return out;
}

Polynomial cf_coord_last(std::size_t k, const Polynomial& f, const Polynomial& g, const ThetaConfig& cfg) {
    require_ternary(cfg);
    require_axis(k, 3);
    const Polynomial xk = Polynomial::coordinate(3, k);
    Polynomial out = xk * f * g;
    out += (d(f, s1(k)) * d(g, s2(k))).scaled(i_theta(cfg, s1(k), 2));
    out -= (d(f, s2(k)) * d(g, s1(k))).scaled(i_theta(cfg, s2(k), 2));
    return out;
}

Polynomial cf_two_coords(std::size_t k, TwoCoordVariant variant, const Polynomial& f, const ThetaConfig& cfg) {
    require_ternary(cfg);
    require_axis(k, 3);
    const Polynomial xk = Polynomial::coordinate(3, k);
    const Complex half = i_theta(cfg, k, 2);
    switch (variant) {
        case TwoCoordVariant::NextMiddle:
            return xk * Polynomial::coordinate(3, s1(k)) * f + d(f, s2(k)).scaled(half);
        case TwoCoordVariant::NextLast:
            return xk * Polynomial::coordinate(3, s1(k)) * f - d(f, s2(k)).scaled(half);
        case TwoCoordVariant::NextNextMiddle:
            return xk * Polynomial::coordinate(3, s2(k)) * f - d(f, s1(k)).scaled(half);
        case TwoCoordVariant::NextNextLast:
            return xk * Polynomial::coordinate(3, s2(k)) * f + d(f, s1(k)).scaled(half);
    }
    throw DomainError("invalid two-coordinate variant");
}

Polynomial two_coords_definition(std::size_t k, TwoCoordVariant variant, const Polynomial& f,
                                 const ThetaConfig& cfg, const StarEngine& engine) {
    require_ternary(cfg);
    require_axis(k, 3);
    const Polynomial xk = Polynomial::coordinate(3, k);
    const Polynomial next = Polynomial::coordinate(3, s1(k));
    const Polynomial next2 = Polynomial::coordinate(3, s2(k));
    auto run = [&](const Polynomial& a, const Polynomial& b, const Polynomial& c) {
        const Polynomial factors[] = {a, b, c};
        return engine(factors, cfg);
    };
    switch (variant) {
        case TwoCoordVariant::NextMiddle: return run(xk, next, f);
        case TwoCoordVariant::NextLast: return run(xk, f, next);
        case TwoCoordVariant::NextNextMiddle: return run(xk, next2, f);
        case TwoCoordVariant::NextNextLast: return run(xk, f, next2);
    }
    throw DomainError("invalid two-coordinate variant");
}

std::string_view complex_form_name(ComplexForm form) {
    switch (form) {
        case ComplexForm::AFirst: return "a*fg";
        case ComplexForm::AbarFirst: return "abar*fg";
        case ComplexForm::ALast: return "g*f a";
        case ComplexForm::AbarLast: return "g*f abar";
        case ComplexForm::AbarLastSymmetric: return "g*f abar (symmetric)";
        case ComplexForm::AMiddle: return "f*a g";
        case ComplexForm::AbarMiddle: return "f*abar g";
    }
    return "?";
}

Root2Polynomial cf_complex(ComplexForm form, std::size_t i, std::size_t j, const Polynomial& f,
                           const Polynomial& g, const ThetaConfig& cfg) {
    require_ternary(cfg);
    require_axis(i, 3);
    require_axis(j, 3);
    const auto [a, abar] = complex_coords(3, i, j);  // throws for i == j
    const bool barred = form == ComplexForm::AbarFirst || form == ComplexForm::AbarLast ||
                        form == ComplexForm::AbarLastSymmetric || form == ComplexForm::AbarMiddle;
    const Root2Polynomial coord = barred ? abar : a;
    Polynomial corr(3);
    switch (form) {
        case ComplexForm::AFirst:
        case ComplexForm::AbarFirst: {
            const Polynomial ci = d(f, s1(i)) * d(g, s2(i)) - d(f, s2(i)) * d(g, s1(i));
            const Polynomial cj = d(f, s1(j)) * d(g, s2(j)) - d(f, s2(j)) * d(g, s1(j));
            corr += ci.scaled(i_theta(cfg, i, 4));
            if (barred)
                corr += cj.scaled(re_theta(cfg, j, 4));
            else
                corr -= cj.scaled(re_theta(cfg, j, 4));
            break;
        }
        case ComplexForm::ALast:
            corr += (d(g, s1(i)) * d(f, s2(i))).scaled(i_theta(cfg, s1(i), 4));
            corr -= (d(g, s2(i)) * d(f, s1(i))).scaled(i_theta(cfg, s2(i), 4));
            corr -= (d(g, s1(j)) * d(f, s2(j))).scaled(re_theta(cfg, s1(j), 4));
            corr += (d(g, s2(j)) * d(f, s1(j))).scaled(re_theta(cfg, s2(j), 4));
            break;
        case ComplexForm::AbarLast:
        case ComplexForm::AbarLastSymmetric: {
            const Polynomial& lead = form == ComplexForm::AbarLast ? f : g;
            corr += (d(lead, s1(i)) * d(f, s2(i))).scaled(i_theta(cfg, s1(i), 4));
            corr -= (d(g, s2(i)) * d(f, s1(i))).scaled(i_theta(cfg, s2(i), 4));
            corr += (d(g, s1(j)) * d(f, s2(j))).scaled(re_theta(cfg, s1(j), 4));
            corr -= (d(g, s2(j)) * d(f, s1(j))).scaled(re_theta(cfg, s2(j), 4));
            break;
        }
        case ComplexForm::AMiddle:
        case ComplexForm::AbarMiddle: {
            corr -= (d(f, s1(i)) * d(g, s2(i))).scaled(i_theta(cfg, s1(i), 4));
            corr += (d(f, s2(i)) * d(g, s1(i))).scaled(i_theta(cfg, s2(i), 4));
            Polynomial cj = (d(f, s1(j)) * d(g, s2(j))).scaled(re_theta(cfg, s1(j), 4)) -
                            (d(f, s2(j)) * d(g, s1(j))).scaled(re_theta(cfg, s2(j), 4));
            if (barred)
                corr -= cj;
            else
                corr += cj;
            break;
        }
    }
    return coord * Root2Polynomial(f * g) + Root2Polynomial(std::move(corr));
}

Root2Polynomial complex_form_definition(ComplexForm form, std::size_t i, std::size_t j, const Polynomial& f,
                                        const Polynomial& g, const ThetaConfig& cfg, const StarEngine& engine) {
    require_ternary(cfg);
    const auto [a, abar] = complex_coords(3, i, j);
    const Root2Polynomial F(f);
    const Root2Polynomial G(g);
    auto run = [&](const Root2Polynomial& x, const Root2Polynomial& y, const Root2Polynomial& z) {
        const Root2Polynomial factors[] = {x, y, z};
        return star_n(factors, cfg, engine);
    };
    switch (form) {
        case ComplexForm::AFirst: return run(a, F, G);
        case ComplexForm::AbarFirst: return run(abar, F, G);
        case ComplexForm::ALast: return run(G, F, a);
        case ComplexForm::AbarLast:
        case ComplexForm::AbarLastSymmetric: return run(G, F, abar);
        case ComplexForm::AMiddle: return run(F, a, G);
        case ComplexForm::AbarMiddle: return run(F, abar, G);
    }
    throw DomainError("invalid complex form");
}

namespace {

void check_slot_spec(const SlotSpec& spec, std::size_t nfs, std::size_t ngs, const ThetaConfig& cfg) {
    if (spec.n != cfg.n()) throw DomainError("slot spec dimension does not match theta configuration");
    if (spec.m < 1 || spec.m > spec.n) throw DomainError("slot position out of range");
    if (spec.p < 1 || spec.p > spec.n) throw DomainError("coordinate axis out of range");
    if (nfs != spec.m - 1 || ngs != spec.n - spec.m)
        throw ArityError("slot factor counts must be m-1 and n-m");
}

}  // namespace

Polynomial cf_nary_slot(const SlotSpec& spec, std::span<const Polynomial> fs, std::span<const Polynomial> gs,
                        const ThetaConfig& cfg) {
    check_slot_spec(spec, fs.size(), gs.size(), cfg);
    const std::size_t n = spec.n;
    const long long m = static_cast<long long>(spec.m);
    const long long p = static_cast<long long>(spec.p);
    const long long nn = static_cast<long long>(n);

    Polynomial plain = Polynomial::coordinate(n, spec.p);
    for (const auto& f : fs) plain = plain * f;
    for (const auto& g : gs) plain = plain * g;

    // forward: d_{s^{i-1}(i)} on every non-coordinate slot i; reverse: d_{s^{n-i+1}(i)}
    Polynomial fwd = Polynomial::constant(n, Complex(1));
    Polynomial rev = Polynomial::constant(n, Complex(1));
    auto slot_factor = [&](std::size_t i) -> const Polynomial& {
        return i < spec.m ? fs[i - 1] : gs[i - spec.m - 1];
    };
    for (std::size_t i = 1; i <= n; ++i) {
        if (i == spec.m) continue;
        const long long ii = static_cast<long long>(i);
        fwd = fwd * slot_factor(i).derivative(wrap_index(ii + (ii - 1), n));
        rev = rev * slot_factor(i).derivative(wrap_index(ii + (nn - ii + 1), n));
    }
    const std::size_t theta_fwd = wrap_index(p - m + 1, n);
    const std::size_t theta_rev = wrap_index(p + m - nn - 1, n);
    return plain + fwd.scaled(i_theta(cfg, theta_fwd, 2)) - rev.scaled(i_theta(cfg, theta_rev, 2));
}

Polynomial nary_slot_definition(const SlotSpec& spec, std::span<const Polynomial> fs,
                                std::span<const Polynomial> gs, const ThetaConfig& cfg, const StarEngine& engine) {
    check_slot_spec(spec, fs.size(), gs.size(), cfg);
    std::vector<Polynomial> factors(fs.begin(), fs.end());
    factors.push_back(Polynomial::coordinate(spec.n, spec.p));
    factors.insert(factors.end(), gs.begin(), gs.end());
    return engine(factors, cfg);
}

}  // namespace nstar
