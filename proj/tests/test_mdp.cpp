#include <cmath>
#include <random>

#include "doctest.h"
#include "summability/mdp.hpp"

using namespace summability;
using namespace summability::mdp;
using bignum::Nat;
using bignum::Rational;

namespace {

// deterministic n-state cycle with the given costs, single action per state
Model cycle_model(std::vector<Rational> costs) {
    auto n = costs.size();
    auto shared = std::make_shared<const std::vector<Rational>>(std::move(costs));
    return Model(
        [](State) { return std::size_t{1}; },
        [n](State x, std::size_t) {
            return std::vector<Transition>{{(x + 1) % n, Rational(1)}};
        },
        [shared](State x, std::size_t) { return (*shared)[x]; }, Rational(0), n,
        Rational(1));
}

Policy only_action() {
    return Policy::stationary([](State) { return std::size_t{0}; });
}

}  // namespace

TEST_CASE("expected_cost_sequence: single-state construction reproduces u") {
    auto u = seqcore::example2();
    auto c = single_state_construction(u);
    auto terms = expected_cost_sequence(c.model, c.policy, c.start, 12);
    std::vector<Rational> expected{1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0};
    CHECK(terms == expected);
}

TEST_CASE("transport identity holds bit-exactly for both constructions") {
    for (const auto& u : {seqcore::example1(), seqcore::example2()}) {
        auto single = single_state_construction(u);
        auto chain = chain_construction(u);
        auto t1 = expected_cost_sequence(single.model, single.policy, single.start, 10000);
        auto t2 = expected_cost_sequence(chain.model, chain.policy, chain.start, 10000);
        for (std::size_t n = 0; n < 10000; ++n) {
            Rational un(u.term(Nat(n)));
            REQUIRE(t1[n] == un);
            REQUIRE(t2[n] == un);
        }
    }
}

TEST_CASE("chain construction shifts with the start state") {
    auto u = seqcore::example2();
    auto c = chain_construction(u);
    auto shifted = expected_cost_sequence(c.model, c.policy, 5, 50);
    for (std::size_t n = 0; n < 50; ++n) CHECK(shifted[n] == Rational(u.term(Nat(n + 5))));
}

TEST_CASE("zero-cost model yields zero terms") {
    auto m = cycle_model({Rational(0), Rational(0)});
    auto terms = expected_cost_sequence(m, only_action(), 0, 64);
    for (const auto& t : terms) CHECK(t == 0);
}

TEST_CASE("probability conservation is enforced") {
    // leaky transition kernel must be rejected
    Model leaky(
        [](State) { return std::size_t{1}; },
        [](State, std::size_t) {
            return std::vector<Transition>{{0, Rational(1, 2)}};
        },
        [](State, std::size_t) { return Rational(0); }, Rational(0), std::size_t{1},
        Rational(1));
    CHECK_THROWS_AS(expected_cost_sequence(leaky, only_action(), 0, 3), std::logic_error);
}

TEST_CASE("normalized discounted value of the 2-cycle is 1/(1+alpha)") {
    auto m = cycle_model({Rational(1), Rational(0)});
    for (int j = 1; j <= 10; ++j) {
        Rational alpha(j, j + 1);  // 1/2, 2/3, ..., 10/11
        Rational got = normalized_discounted_value(m, only_action(), 0, alpha);
        CHECK(got == Rational(1) / (Rational(1) + alpha));
    }
}

TEST_CASE("normalized discounted value of the 3-cycle is 1/(1+alpha+alpha^2)") {
    auto m = cycle_model({Rational(1), Rational(0), Rational(0)});
    for (int j = 2; j <= 8; ++j) {
        bignum::Int q = bignum::Int(1) << j;
        Rational alpha(q - 1, q);
        Rational got = normalized_discounted_value(m, only_action(), 0, alpha);
        CHECK(got == Rational(1) / (Rational(1) + alpha + alpha * alpha));
    }
}

TEST_CASE("finite stationary equality: cycles agree on the average") {
    auto m2 = cycle_model({Rational(1), Rational(0)});
    auto rep2 = finite_stationary_equality_check(m2, only_action(), 0);
    CHECK(rep2.all_equal);
    CHECK(std::fabs(rep2.common_value - 0.5) < 1e-2);
    CHECK(rep2.quadruple.relation == tauberian::RelationClass::AllEqual);

    auto m3 = cycle_model({Rational(1), Rational(0), Rational(0)});
    auto rep3 = finite_stationary_equality_check(m3, only_action(), 0);
    CHECK(rep3.all_equal);
    CHECK(std::fabs(rep3.common_value - 1.0 / 3.0) < 1e-2);

    // absorbing single state with constant cost c
    auto m1 = cycle_model({Rational(7, 2)});
    auto rep1 = finite_stationary_equality_check(m1, only_action(), 0);
    CHECK(rep1.all_equal);
    CHECK(std::fabs(rep1.common_value - 3.5) < 1e-2);
}

TEST_CASE("finite stationary equality on random unichain models") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + rng() % 4;  // 2..5 states
        // random rational rows with denominator 8 and a guaranteed cycle arc
        std::vector<std::vector<Rational>> P(n, std::vector<Rational>(n, Rational(0)));
        std::vector<Rational> costs(n);
        for (std::size_t x = 0; x < n; ++x) {
            unsigned long long left = 8;
            for (std::size_t y = 0; y < n; ++y) {
                if (y == (x + 1) % n) continue;
                unsigned long long take = left > 1 ? rng() % (left / 2 + 1) : 0;
                P[x][y] = Rational(take, 8);
                left -= take;
            }
            P[x][(x + 1) % n] = Rational(left, 8);  // keeps the chain irreducible
            costs[x] = Rational(rng() % 16, 4);
        }
        auto shared_p = std::make_shared<const std::vector<std::vector<Rational>>>(P);
        auto shared_c = std::make_shared<const std::vector<Rational>>(costs);
        Model m(
            [](State) { return std::size_t{1}; },
            [shared_p, n](State x, std::size_t) {
                std::vector<Transition> t;
                for (std::size_t y = 0; y < n; ++y)
                    if (!(*shared_p)[x][y].is_zero())
                        t.push_back({y, (*shared_p)[x][y]});
                return t;
            },
            [shared_c](State x, std::size_t) { return (*shared_c)[x]; }, Rational(0), n,
            Rational(4));
        auto rep = finite_stationary_equality_check(m, only_action(), 0);
        CHECK(rep.all_equal);
        CHECK_FALSE(rep.quadruple.inconsistent);
    }
}

TEST_CASE("value_quadruple delegates tagged constructions to the analyzer") {
    auto c = single_state_construction(seqcore::example2());
    auto q = value_quadruple(c);
    CHECK(q.relation == tauberian::RelationClass::UpperEqual);
    CHECK(std::fabs(q.w_lowstar.value - 0.5) <= q.w_lowstar.radius);
    CHECK(std::fabs(q.w_lowbar.value - 0.75) <= q.w_lowbar.radius);
    CHECK(std::fabs(q.w_star.value - 1.0) <= q.w_star.radius);
    CHECK_FALSE(q.inconsistent);
}

TEST_CASE("value quadruples satisfy the Tauberian chain within radii") {
    auto m = cycle_model({Rational(1), Rational(0), Rational(1, 2), Rational(1, 4)});
    auto q = value_quadruple(m, only_action(), 0);
    CHECK(q.w_lowstar.value <=
          q.w_lowbar.value + q.w_lowstar.radius + q.w_lowbar.radius + 1e-2);
    CHECK(q.w_lowbar.value <= q.w_bar.value + 1e-12);
    CHECK(q.w_bar.value <= q.w_star.value + q.w_bar.radius + q.w_star.radius + 1e-2);
    CHECK_FALSE(q.inconsistent);
}

TEST_CASE("single-state + example2 produces the class-5 pattern end to end") {
    auto c = single_state_construction(seqcore::example2());
    auto q = value_quadruple(c);
    CHECK(tauberian::relation_number(q.relation) == 5);
}

TEST_CASE("finite check rejects infinite models and non-stationary policies") {
    auto u = seqcore::example2();
    auto chain = chain_construction(u);
    CHECK_THROWS_AS(finite_stationary_equality_check(chain.model, chain.policy, 0),
                    std::invalid_argument);
    auto single = single_state_construction(u);
    CHECK_THROWS_AS(finite_stationary_equality_check(single.model, single.policy, 0),
                    std::invalid_argument);
}
