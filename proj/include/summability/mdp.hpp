#ifndef SUMMABILITY_MDP_HPP
#define SUMMABILITY_MDP_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "summability/seqcore.hpp"
#include "summability/tauberian.hpp"

// Countable-state MDPs with finite per-state action lists, exact rational
// transition probabilities and costs.  Policies are Markov (per-step,
// per-state action distributions); histories are never materialized because
// expected one-step costs depend only on the state marginals.

namespace summability::mdp {

using bignum::Nat;
using bignum::Rational;
using State = std::uint64_t;

struct Transition {
    State to;
    Rational prob;
};

class Model {
public:
    using ActionCountFn = std::function<std::size_t(State)>;
    using TransitionsFn = std::function<std::vector<Transition>(State, std::size_t)>;
    using CostFn = std::function<Rational(State, std::size_t)>;

    Model(ActionCountFn actions, TransitionsFn transitions, CostFn cost,
          Rational cost_lower_bound, std::optional<std::size_t> finite_states,
          std::optional<Rational> cost_magnitude_bound);

    // validates the action set is nonempty
    std::size_t action_count(State x) const;
    // validates masses are nonnegative exact rationals summing to exactly 1
    std::vector<Transition> transitions(State x, std::size_t a) const;
    // validates the declared lower bound
    Rational cost(State x, std::size_t a) const;

    const Rational& cost_lower_bound() const { return lower_bound_; }
    const std::optional<std::size_t>& finite_states() const { return finite_states_; }
    const std::optional<Rational>& cost_magnitude_bound() const { return magnitude_bound_; }

private:
    ActionCountFn actions_;
    TransitionsFn transitions_;
    CostFn cost_;
    Rational lower_bound_;
    std::optional<std::size_t> finite_states_;
    std::optional<Rational> magnitude_bound_;
};

class Policy {
public:
    using Dist = std::vector<std::pair<std::size_t, Rational>>;

    static Policy stationary(std::function<std::size_t(State)> choice);
    static Policy markov(std::function<Dist(std::size_t step, State)> dist);

    // validates the distribution sums to exactly 1
    Dist distribution(std::size_t step, State x) const;
    bool is_stationary() const { return stationary_ != nullptr; }
    std::size_t stationary_choice(State x) const;

private:
    std::function<Dist(std::size_t, State)> dist_;
    std::function<std::size_t(State)> stationary_;
};

// forward recursion on exact state distributions; term n is
// sum_x mu_n(x) sum_a pi_n(a|x) c(x,a).  Throws if the reachable support
// exceeds support_cap.
std::vector<Rational> expected_cost_sequence(const Model& m, const Policy& p, State x0,
                                             std::size_t horizon,
                                             std::size_t support_cap = 100000);

struct Construction {
    Model model;
    Policy policy;
    State start = 0;
    // both constructions reproduce their sequence as the expected-cost
    // sequence bit-exactly; the tag lets value_quadruple reuse the
    // closed-form analysis
    std::optional<seqcore::BlockSequence> cost_tag;
};

// single state, two actions with costs 1 and 0, policy pi_n(a) = u_n
Construction single_state_construction(const seqcore::BlockSequence& u);
// states 0,1,2,... marching right, one action, cost c(x) = u_x
Construction chain_construction(const seqcore::BlockSequence& u);

struct ValueQuadruple {
    tauberian::Estimate w_lowstar;  // lower Cesaro value
    tauberian::Estimate w_lowbar;   // lower Abel value
    tauberian::Estimate w_bar;      // upper Abel value
    tauberian::Estimate w_star;     // upper Cesaro value
    tauberian::RelationClass relation = tauberian::RelationClass::Unresolved;
    bool inconsistent = false;
};

struct QuadConfig {
    std::size_t horizon = 4096;
    std::vector<Rational> alpha_grid;  // default 1 - 2^-j, j = 2..10
    double delta = 1e-2;
    unsigned precision_bits = 128;
    double tol = 0x1p-40;
    tauberian::AnalyzeConfig tagged;  // used when a cost tag is present
};

ValueQuadruple value_quadruple(const Construction& c, const QuadConfig& cfg = {});
// untagged path: Cesaro averages from the exact term list, Abel means by the
// exact resolvent (finite stationary) or naive summation otherwise
ValueQuadruple value_quadruple(const Model& m, const Policy& p, State x0,
                               const QuadConfig& cfg = {});

// exact (1-alpha) * v_alpha(x0) for a finite model under a stationary policy,
// via solving (I - alpha P) v = c in rationals
Rational normalized_discounted_value(const Model& m, const Policy& p, State x0,
                                     const Rational& alpha);

struct EqualityReport {
    bool all_equal = false;
    double common_value = 0.0;
    double max_gap = 0.0;
    double tolerance = 0.0;
    ValueQuadruple quadruple;
};

// finite state space + stationary policy: all four values must agree
EqualityReport finite_stationary_equality_check(const Model& m, const Policy& p, State x0,
                                                const QuadConfig& cfg = {});

std::vector<Rational> default_mdp_alpha_grid();

}  // namespace summability::mdp

#endif
