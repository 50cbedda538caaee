#pragma once

// Closed-form star products with coordinate functions, written out term by
// term exactly as stated (no call into the expansion engine). They serve as
// oracles against star_n; forms that disagree with the definition are kept as
// stated and reported by the auditor.

#include "nstar/polynomial.hpp"
#include "nstar/root2.hpp"
#include "nstar/star.hpp"

#include <span>
#include <string_view>

namespace nstar {

// 3-ary, one coordinate factor x_k.

/// x_k *^f g = x_k f g + (i theta_k/2)(d_{s k} f d_{s^2 k} g - d_{s^2 k} f d_{s k} g)
Polynomial cf_coord_first(std::size_t k, const Polynomial& f, const Polynomial& g, const ThetaConfig& cfg);
/// g *^{x_k} f
Polynomial cf_coord_middle(std::size_t k, const Polynomial& g, const Polynomial& f, const ThetaConfig& cfg);
/// f *^g x_k
Polynomial cf_coord_last(std::size_t k, const Polynomial& f, const Polynomial& g, const ThetaConfig& cfg);

// 3-ary, two coordinate factors.
enum class TwoCoordVariant {
    NextMiddle,      // x_k *^{x_{s k}} f
    NextLast,        // x_k *^f x_{s k}
    NextNextMiddle,  // x_k *^{x_{s^2 k}} f
    NextNextLast,    // x_k *^f x_{s^2 k}
};

Polynomial cf_two_coords(std::size_t k, TwoCoordVariant variant, const Polynomial& f, const ThetaConfig& cfg);

/// The star_n arrangement each two-coordinate closed form describes.
Polynomial two_coords_definition(std::size_t k, TwoCoordVariant variant, const Polynomial& f,
                                 const ThetaConfig& cfg, const StarEngine& engine);

// 3-ary, one complex coordinate a_ij or abar_ij.
enum class ComplexForm {
    AFirst,             // a_ij *^f g
    AbarFirst,          // abar_ij *^f g
    ALast,              // g *^f a_ij
    AbarLast,           // g *^f abar_ij, as stated (first correction reads d f d f)
    AbarLastSymmetric,  // g *^f abar_ij with that correction read as d g d f
    AMiddle,            // f *^{a_ij} g
    AbarMiddle,         // f *^{abar_ij} g
};

std::string_view complex_form_name(ComplexForm form);

/// Closed form as stated, exact over Q(i, sqrt2).
Root2Polynomial cf_complex(ComplexForm form, std::size_t i, std::size_t j, const Polynomial& f,
                           const Polynomial& g, const ThetaConfig& cfg);

/// star_n applied to the arrangement the form describes.
Root2Polynomial complex_form_definition(ComplexForm form, std::size_t i, std::size_t j, const Polynomial& f,
                                        const Polynomial& g, const ThetaConfig& cfg, const StarEngine& engine);

// n-ary, coordinate x_p in slot m.
struct SlotSpec {
    std::size_t n;
    std::size_t m;  // slot of the coordinate factor, 1..n
    std::size_t p;  // coordinate axis, 1..n
};

/// fs fills slots 1..m-1, gs fills slots m+1..n. theta and derivative indices
/// are wrapped into 1..n.
Polynomial cf_nary_slot(const SlotSpec& spec, std::span<const Polynomial> fs, std::span<const Polynomial> gs,
                        const ThetaConfig& cfg);

/// star{fs..., x_p, gs...} via the engine.
Polynomial nary_slot_definition(const SlotSpec& spec, std::span<const Polynomial> fs,
                                std::span<const Polynomial> gs, const ThetaConfig& cfg, const StarEngine& engine);

}  // namespace nstar
