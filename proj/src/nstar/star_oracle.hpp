#pragma once

// Reference evaluation of m[exp(+/-P)(f_1 (x) ... (x) f_n)] that shares no code
// with the multinomial engine: P is rebuilt here from its defining formula and
// applied to an explicit tensor (a list of weighted slot tuples) one power at a
// time, dividing by m! at the end. The loop stops when every tuple has a
// vanishing slot, so it never relies on a precomputed degree bound.

#include "nstar/polynomial.hpp"
#include "nstar/star.hpp"

#include <span>

namespace nstar {

struct OracleStats {
    unsigned powers_applied = 0;  // last m for which P^m (x) was nonzero
};

/// sign = +1 evaluates exp(P), sign = -1 evaluates exp(-P).
Polynomial oracle_star_n(std::span<const Polynomial> factors, const ThetaConfig& cfg, int sign = +1,
                         OracleStats* stats = nullptr);

}  // namespace nstar
