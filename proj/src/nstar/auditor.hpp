#pragma once

// Seeded identity audit. Every identity is evaluated on both sides in exact
// arithmetic over a sampled corpus; failures are shrunk and re-evaluated with
// the term-by-term oracle (oracle_star_n), never with the engine that found
// them.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nstar {

enum class ClaimId {
    Distributivity1,
    Distributivity2,
    Distributivity3,
    Associativity,
    SkewSymmetry,
    JacobiSixTerm,
    JacobiExpansion,
    CfCoordFirst,
    CfCoordMiddle,
    CfCoordLast,
    CfTwoCoords1,
    CfTwoCoords2,
    CfTwoCoords3,
    CfTwoCoords4,
    CfComplex1,
    CfComplex2,
    CfComplex3,
    CfComplex4,
    CfComplex4Symmetric,
    CfComplex5,
    CfComplex6,
    CfNarySlot,
    ConjXxF1,
    ConjXxF2,
    NoncommWitness1,
    NoncommWitness2,
    NoncommWitness3,
    OmegaAntisym,
    OmegaCyclic,
    ConjInequality1,
    ConjInequality2,
    ConjInequality3,
    ComplexInequality1,
    ComplexInequality2,
    ComplexInequality3,
    ComplexInequality4,
    Homogeneity,
    ConjugationLaw,
    ThetaZero,
    RealConjugation,
    OracleEquivalence,
    KernelGrid,
};

std::span<const ClaimId> all_claims();
std::string_view claim_name(ClaimId id);
/// Throws DomainError for an unknown name.
ClaimId claim_from_name(std::string_view name);
/// Theorems of the definition: a failure is a defect, not a finding.
bool is_guaranteed(ClaimId id);

enum class Verdict { HoldsExact, HoldsWithinTol, Fails };
std::string_view verdict_name(Verdict v);

struct Corpus {
    unsigned max_degree = 4;
    unsigned max_terms = 3;
    long coeff_bound = 3;
    std::vector<std::size_t> dimensions{3, 4};
    unsigned trials = 100;
    double tolerance = 1e-9;  // wave-engine claims only
};

struct ClaimReport {
    ClaimId claim{};
    Verdict verdict = Verdict::HoldsExact;
    bool guaranteed = false;
    unsigned trials = 0;
    std::uint64_t seed = 0;
    std::string corpus;
    /// Trials whose sides were also evaluated with the term-by-term oracle.
    unsigned oracle_trials = 0;
    /// Failing input (shrunk) with both sides; present iff verdict == Fails.
    std::optional<nlohmann::ordered_json> counterexample;
    /// Inequality claims: an input where the sides differ, and a constant
    /// input where they coincide.
    std::optional<nlohmann::ordered_json> witness;
    std::optional<nlohmann::ordered_json> degenerate;
    /// Numeric claims: largest observed deviation.
    std::optional<double> max_error;
};

ClaimReport audit_claim(ClaimId claim, const Corpus& corpus, std::uint64_t seed);

/// (six-term form, expansion relation).
std::pair<ClaimReport, ClaimReport> audit_jacobi(const Corpus& corpus, std::uint64_t seed);

/// Every claim with per-claim seed derive_seed(seed, claim_name), sorted by ClaimId.
std::vector<ClaimReport> run_suite(std::uint64_t seed, unsigned trials, double tolerance);

/// Only the listed claims, same seeding as run_suite.
std::vector<ClaimReport> run_claims(std::span<const ClaimId> claims, std::uint64_t seed, unsigned trials,
                                    double tolerance);

bool guaranteed_ok(std::span<const ClaimReport> reports);

nlohmann::ordered_json to_json(const ClaimReport& r);
nlohmann::ordered_json to_json(std::span<const ClaimReport> reports);
std::string to_text(std::span<const ClaimReport> reports);

}  // namespace nstar
