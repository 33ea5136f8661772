#include <cmath>

#include "doctest.h"
#include "summability/tauberian.hpp"

using namespace summability;
using namespace summability::tauberian;
using bignum::Rational;

TEST_CASE("classify on exact synthetic quadruples") {
    const double d = 1e-3;
    CHECK(classify(0, 0, 1, 1, d) == RelationClass::OuterEqual);
    CHECK(classify(0.5, 0.75, 1, 1, d) == RelationClass::UpperEqual);
    CHECK(classify(0.25, 0.25, 0.25, 0.25, d) == RelationClass::AllEqual);
    CHECK(classify(0, 0.25, 0.5, 0.75, d) == RelationClass::ChainStrict);
    CHECK(classify(0, 0, 0.25, 0.5, d) == RelationClass::LowerEqual);
    // Hardy-Littlewood forbids a proper Abel limit with unequal outer limits
    CHECK(classify(0, 0.5, 0.5, 1, d) == RelationClass::Unresolved);
    CHECK(classify(0, 0, 0, 1, d) == RelationClass::Unresolved);
    CHECK_THROWS_AS(classify(0.5, 0.4, 0.6, 0.7, d), std::invalid_argument);
}

TEST_CASE("classify with delta = 0 reproduces exact patterns") {
    CHECK(classify(0.5, 0.5, 0.5, 0.5, 0.0) == RelationClass::AllEqual);
    CHECK(classify(0, 0, 1, 1, 0.0) == RelationClass::OuterEqual);
    CHECK(classify(0, 0.25, 0.75, 1, 0.0) == RelationClass::ChainStrict);
}

TEST_CASE("classify is shift invariant") {
    for (double shift : {-3.0, 0.0, 0.25, 17.5}) {
        CHECK(classify(0 + shift, 0 + shift, 1 + shift, 1 + shift, 1e-3) ==
              RelationClass::OuterEqual);
        CHECK(classify(0.5 + shift, 0.75 + shift, 1 + shift, 1 + shift, 1e-3) ==
              RelationClass::UpperEqual);
    }
}

TEST_CASE("gap verdicts recognize closing, stable and widening gaps") {
    CHECK(gap_verdict({0.5, 0.4, 0.3, 0.25, 0.2, 0.17, 0.15}, 1e-3) == GapVerdict::Equal);
    CHECK(gap_verdict({0.2, 0.22, 0.23, 0.235, 0.238, 0.24}, 1e-3) == GapVerdict::Strict);
    CHECK(gap_verdict({0.3, 0.3001, 0.2999, 0.3, 0.3, 0.3}, 1e-3) == GapVerdict::Strict);
    CHECK(gap_verdict({1e-4, 2e-4, 5e-5}, 1e-3) == GapVerdict::Equal);
    CHECK(gap_verdict({}, 1e-3) == GapVerdict::Unresolved);
}

TEST_CASE("analyze example1 yields the outer-equal pattern") {
    auto rep = analyze(seqcore::example1());
    CHECK_FALSE(rep.inconsistent);
    CHECK(rep.relation == RelationClass::OuterEqual);
    CHECK(relation_number(rep.relation) == 4);
    // values approach (0, 0, 1, 1) within the reported radii
    CHECK(std::fabs(rep.c_lower.value - 0.0) <= rep.c_lower.radius);
    CHECK(std::fabs(rep.a_lower.value - 0.0) <= rep.a_lower.radius);
    CHECK(std::fabs(rep.a_upper.value - 1.0) <= rep.a_upper.radius);
    CHECK(std::fabs(rep.c_upper.value - 1.0) <= rep.c_upper.radius);
}

TEST_CASE("analyze example2 yields the upper-equal pattern") {
    auto rep = analyze(seqcore::example2());
    CHECK_FALSE(rep.inconsistent);
    CHECK(rep.relation == RelationClass::UpperEqual);
    CHECK(std::fabs(rep.c_lower.value - 0.5) <= rep.c_lower.radius);
    CHECK(std::fabs(rep.a_lower.value - 0.75) <= rep.a_lower.radius);
    CHECK(std::fabs(rep.a_upper.value - 1.0) <= rep.a_upper.radius);
    CHECK(std::fabs(rep.c_upper.value - 1.0) <= rep.c_upper.radius);
}

TEST_CASE("analyze negated example2 yields the lower-equal pattern") {
    auto rep = analyze(seqcore::negate(seqcore::example2()));
    CHECK_FALSE(rep.inconsistent);
    CHECK(rep.relation == RelationClass::LowerEqual);
    // true quadruple is (0, 0, 1/4, 1/2): the complement-reversal of
    // (1/2, 3/4, 1, 1)
    CHECK(std::fabs(rep.c_lower.value - 0.0) <= rep.c_lower.radius);
    CHECK(std::fabs(rep.a_lower.value - 0.0) <= rep.a_lower.radius);
    CHECK(std::fabs(rep.a_upper.value - 0.25) <= rep.a_upper.radius);
    CHECK(std::fabs(rep.c_upper.value - 0.5) <= rep.c_upper.radius);
}

TEST_CASE("analyze on convergent sequences reports all-equal") {
    auto rep = analyze(seqcore::alternating());
    CHECK_FALSE(rep.inconsistent);
    CHECK(rep.relation == RelationClass::AllEqual);
    CHECK(std::fabs(rep.c_lower.value - 0.5) <= rep.c_lower.radius + 1e-12);
    CHECK(std::fabs(rep.c_upper.value - 0.5) <= rep.c_upper.radius + 1e-12);

    auto c1 = analyze(seqcore::constant(1));
    CHECK(c1.relation == RelationClass::AllEqual);
    CHECK(c1.c_upper.value == doctest::Approx(1.0));
}

TEST_CASE("analyze a finite-support sequence finds zero limits") {
    // 0,1,0,0,...: finitely many ones
    auto s = seqcore::from_boundaries(0, {bignum::Nat(1), bignum::Nat(2)});
    auto rep = analyze(s);
    CHECK_FALSE(rep.inconsistent);
    CHECK(rep.relation == RelationClass::AllEqual);
    CHECK(rep.c_upper.value < 0.01);
    CHECK(rep.a_upper.value < 0.01);
}

TEST_CASE("duality: negation mirrors values and classes") {
    auto d2 = duality_check(seqcore::example2());
    CHECK(d2.values_mirror);
    CHECK(d2.classes_mirror);
    CHECK(relation_number(d2.base.relation) == 5);
    CHECK(relation_number(d2.negated.relation) == 6);

    auto d1 = duality_check(seqcore::example1());
    CHECK(d1.values_mirror);
    CHECK(d1.classes_mirror);  // pattern (4) is self-dual
    CHECK(relation_number(d1.negated.relation) == 4);

    auto dc = duality_check(seqcore::constant(0));
    CHECK(dc.values_mirror);
    CHECK(dc.classes_mirror);
}

TEST_CASE("hardy-littlewood consistency") {
    auto alt = hardy_littlewood_consistency(seqcore::alternating());
    CHECK(alt.abel_limit_detected);
    CHECK_FALSE(alt.vacuous);
    CHECK(alt.consistent);

    auto c = hardy_littlewood_consistency(seqcore::constant(1));
    CHECK(c.consistent);

    auto e2 = hardy_littlewood_consistency(seqcore::example2());
    CHECK(e2.vacuous);  // Abel limits differ, implication says nothing
}

TEST_CASE("randomized block sequences: chain always consistent in grid mode") {
    AnalyzeConfig cfg;
    cfg.grid_mode = true;
    cfg.delta = 1e-2;
    cfg.tol = 0x1p-30;
    cfg.precision_bits = 128;
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        auto s = seqcore::random_block_sequence(seed);
        auto rep = analyze(s, cfg);
        CHECK_FALSE(rep.inconsistent);
        CHECK(rep.c_lower.value <= rep.c_upper.value);
        CHECK(rep.a_lower.value <= rep.a_upper.value);
        // estimates live in [0,1] for 0/1 sequences
        for (auto* e : {&rep.c_lower, &rep.a_lower, &rep.a_upper, &rep.c_upper}) {
            CHECK(e->value >= -1e-9);
            CHECK(e->value <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("block-mode analyze on random sequences stays consistent") {
    AnalyzeConfig cfg;
    cfg.delta = 1e-2;
    for (std::uint64_t seed = 50; seed <= 60; ++seed) {
        auto rep = analyze(seqcore::random_block_sequence(seed), cfg);
        CHECK_FALSE(rep.inconsistent);
    }
}
