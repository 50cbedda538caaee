#include "nstar/auditor.hpp"
#include "nstar/errors.hpp"

#include <gtest/gtest.h>

using namespace nstar;

namespace {

Corpus small(unsigned trials) {
    Corpus c;
    c.trials = trials;
    return c;
}

}  // namespace

TEST(Claims, NamesRoundTrip) {
    for (ClaimId id : all_claims()) EXPECT_EQ(claim_from_name(claim_name(id)), id);
    EXPECT_EQ(claim_name(ClaimId::CfComplex4Symmetric), "cf-complex-4s");
    EXPECT_EQ(claim_name(ClaimId::JacobiSixTerm), "jacobi-six-term");
    EXPECT_THROW(claim_from_name("no-such-claim"), DomainError);
    EXPECT_TRUE(is_guaranteed(ClaimId::SkewSymmetry));
    EXPECT_FALSE(is_guaranteed(ClaimId::Associativity));
}

TEST(Audit, AssociativityCounterexampleIsOracleConfirmed) {
    const ClaimReport r = audit_claim(ClaimId::Associativity, small(10), 1);
    ASSERT_EQ(r.verdict, Verdict::Fails);
    ASSERT_TRUE(r.counterexample.has_value());
    const auto& ce = *r.counterexample;
    EXPECT_TRUE(ce.at("oracle_confirmed").get<bool>());
    EXPECT_EQ(ce.at("trial").get<unsigned>(), 0u);
    EXPECT_EQ(ce.at("rhs_minus_lhs").get<std::string>(), "i*x2*x3");
}

TEST(Audit, GuaranteedClaimsHold) {
    for (ClaimId id : all_claims()) {
        if (!is_guaranteed(id)) continue;
        const ClaimReport r = audit_claim(id, small(15), 3);
        EXPECT_NE(r.verdict, Verdict::Fails) << claim_name(id) << ": " << to_json(r).dump();
        EXPECT_TRUE(r.guaranteed);
    }
}

TEST(Audit, EqualityClaimsUseTheOracle) {
    const ClaimReport r = audit_claim(ClaimId::Distributivity2, small(12), 5);
    EXPECT_EQ(r.verdict, Verdict::HoldsExact);
    EXPECT_EQ(r.trials, 12u);
    EXPECT_GE(r.oracle_trials, 5u);
}

TEST(Audit, InequalityClaimsRecordWitnessAndDegenerateCase) {
    for (ClaimId id : {ClaimId::NoncommWitness1, ClaimId::ConjInequality1, ClaimId::ComplexInequality2}) {
        const ClaimReport r = audit_claim(id, small(10), 7);
        ASSERT_TRUE(r.witness.has_value()) << claim_name(id);
        ASSERT_TRUE(r.degenerate.has_value()) << claim_name(id);
        EXPECT_NE(r.witness->at("lhs"), r.witness->at("rhs")) << claim_name(id);
        EXPECT_EQ(r.degenerate->at("lhs"), r.degenerate->at("rhs")) << claim_name(id);
    }
}

TEST(Audit, JacobiFormsFailWithOracleConfirmation) {
    const auto [six, expansion] = audit_jacobi(small(10), 11);
    EXPECT_EQ(six.claim, ClaimId::JacobiSixTerm);
    EXPECT_EQ(expansion.claim, ClaimId::JacobiExpansion);
    for (const ClaimReport* r : {&six, &expansion}) {
        ASSERT_EQ(r->verdict, Verdict::Fails);
        EXPECT_TRUE(r->counterexample->at("oracle_confirmed").get<bool>());
        // shrinking never turns the counterexample into a passing input
        EXPECT_NE(r->counterexample->at("lhs"), r->counterexample->at("rhs"));
    }
}

TEST(Audit, NumericClaimsReportDeviation) {
    const ClaimReport omega = audit_claim(ClaimId::OmegaCyclic, small(50), 2);
    EXPECT_EQ(omega.verdict, Verdict::HoldsExact);
    const ClaimReport grid = audit_claim(ClaimId::KernelGrid, small(3), 2);
    EXPECT_EQ(grid.verdict, Verdict::HoldsWithinTol);
    ASSERT_TRUE(grid.max_error.has_value());
    EXPECT_LE(*grid.max_error, 1e-9);
}

TEST(Suite, DeterministicForFixedSeed) {
    const ClaimId chosen[] = {ClaimId::Associativity, ClaimId::CfComplex1, ClaimId::NoncommWitness3,
                              ClaimId::Homogeneity};
    const auto a = run_claims(chosen, 42, 8, 1e-9);
    const auto b = run_claims(chosen, 42, 8, 1e-9);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
    EXPECT_EQ(to_text(a), to_text(b));
    const auto c = run_claims(chosen, 43, 8, 1e-9);
    EXPECT_NE(to_json(a).dump(), to_json(c).dump());
    EXPECT_TRUE(guaranteed_ok(a));
}

TEST(Suite, EveryClaimGetsAVerdict) {
    const auto reports = run_suite(9, 3, 1e-9);
    ASSERT_EQ(reports.size(), all_claims().size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
        EXPECT_EQ(reports[i].claim, all_claims()[i]);
        // failures and inequality witnesses stop the sampling early
        EXPECT_GE(reports[i].trials, 1u);
        EXPECT_LE(reports[i].trials, 3u);
        if (reports[i].verdict == Verdict::Fails) EXPECT_TRUE(reports[i].counterexample.has_value());
        if (reports[i].claim == ClaimId::Distributivity1) EXPECT_EQ(reports[i].trials, 3u);
    }
    EXPECT_TRUE(guaranteed_ok(reports));
}
