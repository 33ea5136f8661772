#include <random>

#include "doctest.h"
#include "summability/seqcore.hpp"

using namespace summability;
using namespace summability::seqcore;
using bignum::Nat;

namespace {

std::vector<Nat> take(const BlockSequence& s, std::size_t n) {
    std::vector<Nat> out;
    auto cur = s.boundaries();
    for (std::size_t i = 0; i < n; ++i) {
        auto b = cur->next();
        if (!b) break;
        out.push_back(std::move(*b));
    }
    return out;
}

std::vector<Nat> take(const CursorFactory& f, std::size_t n) {
    std::vector<Nat> out;
    auto cur = f();
    for (std::size_t i = 0; i < n; ++i) {
        auto b = cur->next();
        if (!b) break;
        out.push_back(std::move(*b));
    }
    return out;
}

}  // namespace

TEST_CASE("example1 boundaries and terms") {
    auto s = example1();
    CHECK(take(s, 5) == std::vector<Nat>{1, 3, 9, 33, 153});
    CHECK(s.term(0) == 0);
    CHECK(s.term(1) == 1);
    CHECK(s.term(9) == 1);
    CHECK(s.term(32) == 1);
    CHECK(s.term(33) == 0);
}

TEST_CASE("example2 normalized boundaries and terms") {
    auto s = example2();
    CHECK(take(s, 10) == std::vector<Nat>{1, 4, 6, 12, 24, 48, 120, 240, 720, 1440});
    CHECK(s.term(0) == 1);
    CHECK(s.term(2) == 0);
    CHECK(s.term(4) == 1);
}

TEST_CASE("term is lazy in n") {
    auto c = constant(1);
    CHECK(c.term(Nat("1000000000000000000000000000000")) == 1);
}

TEST_CASE("example2 equals the normalized merge of k! and 2k! streams") {
    // symbolic comparison of the boundary streams for the first 40 entries
    auto direct = take(example2(), 40);
    auto merged = take(normalize_stream(
                           merge_streams({factorial_stream(), double_factorial_stream()})),
                       40);
    CHECK(direct == merged);
    // the raw merge carries the duplicate pair at 2 = 2*1! = 2!
    auto raw = take(merge_streams({factorial_stream(), double_factorial_stream()}), 5);
    CHECK(raw == std::vector<Nat>{1, 2, 2, 4, 6});
}

TEST_CASE("normalization is idempotent and preserves the term function") {
    auto raw = merge_streams({factorial_stream(), double_factorial_stream()});
    auto once = normalize_stream(raw);
    auto twice = normalize_stream(once);
    CHECK(take(once, 30) == take(twice, 30));

    // raw and normalized streams define the same sequence
    BlockSequence raw_seq(1, raw, "raw example2");
    BlockSequence norm_seq(1, once, "normalized example2");
    for (unsigned n = 0; n < 10000; ++n) CHECK(raw_seq.term(n) == norm_seq.term(n));
}

TEST_CASE("example1 majorant dominates example1 pointwise") {
    auto e1 = example1();
    for (unsigned k : {1u, 2u, 3u}) {
        auto m = example1_majorant(k);
        CHECK(m.initial_value() == 1);
        CHECK(take(m, 3) == std::vector<Nat>{bignum::dsum(2 * k), bignum::dsum(2 * k + 1)});
        for (unsigned n = 0; n < 10000; ++n) CHECK(m.term(n) >= e1.term(n));
    }
    auto m1 = example1_majorant(1);
    CHECK(m1.term(0) == 1);
    CHECK(m1.term(3) == 0);
    CHECK(m1.term(9) == 1);
}

TEST_CASE("negate flips terms and is an involution") {
    auto s = example2();
    auto n = negate(s);
    CHECK(n.term(0) == 0);
    auto nn = negate(n);
    for (unsigned i = 0; i < 2000; ++i) {
        CHECK(n.term(i) == 1 - s.term(i));
        CHECK(nn.term(i) == s.term(i));
    }
    CHECK(negate(constant(1)).term(12345) == 0);
}

TEST_CASE("block enumeration") {
    auto blocks = first_blocks(example2(), -1, 5);
    REQUIRE(blocks.size() == 5);
    CHECK(blocks[0].start == 0);
    CHECK(*blocks[0].end == 1);
    CHECK(blocks[0].value == 1);
    CHECK(blocks[1].start == 1);
    CHECK(*blocks[1].end == 4);
    CHECK(blocks[1].value == 0);
    auto ones = first_blocks(example2(), 1, 3);
    CHECK(ones[1].start == 4);
    CHECK(*ones[1].end == 6);
}

TEST_CASE("explicit boundary validation") {
    CHECK_THROWS_AS(from_boundaries(0, {Nat(3), Nat(3)}), std::invalid_argument);
    CHECK_THROWS_AS(from_boundaries(0, {Nat(0)}), std::invalid_argument);
    CHECK_THROWS_AS(BlockSequence(2, vector_stream({}), "bad"), std::invalid_argument);
}

TEST_CASE("random block sequences have increasing boundaries with the declared growth") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto s = random_block_sequence(seed, 12);
        auto b = take(s, 12);
        REQUIRE(b.size() == 12);
        Nat jfact = 1;
        for (std::size_t j = 1; j < b.size(); ++j) {
            jfact *= j;
            Nat ratio_num = b[j];
            CHECK(b[j] > b[j - 1]);
            CHECK(b[j] % b[j - 1] == 0);
            Nat r = b[j] / b[j - 1];
            CHECK(r >= 2);
            CHECK(r <= jfact + 1);
        }
    }
}

TEST_CASE("restartable cursors are independent") {
    auto s = example1();
    auto c1 = s.boundaries();
    auto c2 = s.boundaries();
    CHECK(*c1->next() == 1);
    CHECK(*c1->next() == 3);
    CHECK(*c2->next() == 1);  // unaffected by c1's position
}

TEST_CASE("to_real wraps terms as rationals") {
    auto r = to_real(example2());
    CHECK(r.term(0) == 1);
    CHECK(r.term(2) == 0);
    CHECK(*r.magnitude_bound == 1);
}

TEST_CASE("alternating preset") {
    auto a = alternating();
    for (unsigned n = 0; n < 50; ++n) CHECK(a.term(n) == (n % 2 == 0 ? 1 : 0));
}
