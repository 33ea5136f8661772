#include "summability/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace summability::mdp {

Model::Model(ActionCountFn actions, TransitionsFn transitions, CostFn cost,
             Rational cost_lower_bound, std::optional<std::size_t> finite_states,
             std::optional<Rational> cost_magnitude_bound)
    : actions_(std::move(actions)), transitions_(std::move(transitions)),
      cost_(std::move(cost)), lower_bound_(std::move(cost_lower_bound)),
      finite_states_(std::move(finite_states)),
      magnitude_bound_(std::move(cost_magnitude_bound)) {}

std::size_t Model::action_count(State x) const {
    std::size_t n = actions_(x);
    if (n == 0) throw std::logic_error("Model: action set must be nonempty");
    return n;
}

std::vector<Transition> Model::transitions(State x, std::size_t a) const {
    auto t = transitions_(x, a);
    Rational total = 0;
    for (const auto& tr : t) {
        if (tr.prob < 0) throw std::logic_error("Model: negative transition mass");
        total += tr.prob;
    }
    if (total != 1) throw std::logic_error("Model: transition masses must sum to 1");
    return t;
}

Rational Model::cost(State x, std::size_t a) const {
    Rational c = cost_(x, a);
    if (c < lower_bound_) throw std::logic_error("Model: cost below declared bound");
    return c;
}

Policy Policy::stationary(std::function<std::size_t(State)> choice) {
    Policy p;
    p.stationary_ = choice;
    p.dist_ = [choice = std::move(choice)](std::size_t, State x) {
        return Dist{{choice(x), Rational(1)}};
    };
    return p;
}

Policy Policy::markov(std::function<Dist(std::size_t, State)> dist) {
    Policy p;
    p.dist_ = std::move(dist);
    return p;
}

Policy::Dist Policy::distribution(std::size_t step, State x) const {
    Dist d = dist_(step, x);
    Rational total = 0;
    for (const auto& [a, w] : d) {
        if (w < 0) throw std::logic_error("Policy: negative action mass");
        total += w;
    }
    if (total != 1) throw std::logic_error("Policy: action masses must sum to 1");
    return d;
}

std::size_t Policy::stationary_choice(State x) const {
    if (!stationary_) throw std::logic_error("Policy: not stationary");
    return stationary_(x);
}

namespace {

// Forward recursion on exact state distributions held as integers over one
// common denominator; normalized rationals would pay a gcd per addition,
// which is prohibitive over long horizons.
class ForwardRecursion {
public:
    using Int = bignum::Int;

    ForwardRecursion(const Model& m, const Policy& p, State x0, std::size_t support_cap)
        : m_(m), p_(p), cap_(support_cap) {
        mu_[x0] = 1;
    }

    struct StepCost {
        Int term_num;  // expected cost this step = term_num / (den_before * cost_l)
        Int cost_l;
        Int step_l;  // den_after = den_before * step_l
    };

    const Int& den() const { return den_; }

    StepCost step() {
        struct Move {
            State from;
            Rational weight;
            State to;
        };
        std::vector<Move> moves;
        std::vector<std::pair<State, Rational>> costs;
        for (const auto& [x, w] : mu_) {
            if (w.is_zero()) continue;
            std::size_t actions = m_.action_count(x);
            Rational cost_x = 0;
            for (const auto& [a, pa] : p_.distribution(n_, x)) {
                if (a >= actions) throw std::logic_error("Policy: action outside A(x)");
                if (pa.is_zero()) continue;
                cost_x += pa * m_.cost(x, a);
                for (const auto& tr : m_.transitions(x, a)) {
                    if (tr.prob.is_zero()) continue;
                    moves.push_back({x, pa * tr.prob, tr.to});
                }
            }
            costs.emplace_back(x, std::move(cost_x));
        }
        StepCost out;
        out.step_l = 1;
        out.cost_l = 1;
        for (const auto& mv : moves) out.step_l = lcm(out.step_l, Int(denominator(mv.weight)));
        for (const auto& [x, c] : costs) out.cost_l = lcm(out.cost_l, Int(denominator(c)));
        out.term_num = 0;
        for (const auto& [x, c] : costs)
            out.term_num += mu_.at(x) * Int(numerator(c)) * Int(out.cost_l / denominator(c));

        std::map<State, Int> next;
        for (const auto& mv : moves)
            next[mv.to] += mu_.at(mv.from) * Int(numerator(mv.weight)) *
                           Int(out.step_l / denominator(mv.weight));
        den_ *= out.step_l;
        Int mass = 0;
        for (const auto& [y, w] : next) mass += w;
        if (mass != den_) throw std::logic_error("expected_cost_sequence: mass leak");
        if (next.size() > cap_)
            throw std::runtime_error("expected_cost_sequence: support cap exceeded");
        mu_ = std::move(next);
        ++n_;
        return out;
    }

private:
    const Model& m_;
    const Policy& p_;
    std::size_t cap_;
    std::map<State, Int> mu_;
    Int den_ = 1;
    std::size_t n_ = 0;
};

}  // namespace

std::vector<Rational> expected_cost_sequence(const Model& m, const Policy& p, State x0,
                                             std::size_t horizon, std::size_t support_cap) {
    std::vector<Rational> terms;
    terms.reserve(horizon);
    ForwardRecursion fr(m, p, x0, support_cap);
    for (std::size_t n = 0; n < horizon; ++n) {
        bignum::Int den_before = fr.den();
        auto st = fr.step();
        terms.emplace_back(st.term_num, den_before * st.cost_l);
    }
    return terms;
}

Construction single_state_construction(const seqcore::BlockSequence& u) {
    Model m(
        [](State) { return std::size_t{2}; },
        [](State, std::size_t) { return std::vector<Transition>{{0, Rational(1)}}; },
        [](State, std::size_t a) { return Rational(a == 0 ? 1 : 0); }, Rational(0),
        std::size_t{1}, Rational(1));
    Policy p = Policy::markov([u](std::size_t step, State) {
        int un = u.term(Nat(step));
        return Policy::Dist{{un == 1 ? std::size_t{0} : std::size_t{1}, Rational(1)}};
    });
    return Construction{std::move(m), std::move(p), 0, u};
}

Construction chain_construction(const seqcore::BlockSequence& u) {
    Model m(
        [](State) { return std::size_t{1}; },
        [](State x, std::size_t) { return std::vector<Transition>{{x + 1, Rational(1)}}; },
        [u](State x, std::size_t) { return Rational(u.term(Nat(x))); }, Rational(0),
        std::nullopt, Rational(1));
    Policy p = Policy::stationary([](State) { return std::size_t{0}; });
    return Construction{std::move(m), std::move(p), 0, u};
}

std::vector<Rational> default_mdp_alpha_grid() {
    std::vector<Rational> grid;
    for (int j = 2; j <= 16; ++j) {
        bignum::Int q = bignum::Int(1) << j;
        grid.emplace_back(q - 1, q);
    }
    return grid;
}

namespace {

// stationary-policy chain restricted to states 0..n-1
struct InducedChain {
    std::vector<std::vector<Rational>> P;
    std::vector<Rational> c;
};

InducedChain induced_chain(const Model& m, const Policy& p) {
    if (!m.finite_states())
        throw std::invalid_argument("induced_chain: model must be finite");
    std::size_t n = *m.finite_states();
    InducedChain ch;
    ch.P.assign(n, std::vector<Rational>(n, Rational(0)));
    ch.c.assign(n, Rational(0));
    for (State x = 0; x < n; ++x) {
        std::size_t a = p.stationary_choice(x);
        if (a >= m.action_count(x)) throw std::logic_error("policy action outside A(x)");
        ch.c[x] = m.cost(x, a);
        for (const auto& tr : m.transitions(x, a)) {
            if (tr.to >= n) throw std::logic_error("transition leaves the finite state set");
            ch.P[x][tr.to] += tr.prob;
        }
    }
    return ch;
}

// solve A v = b exactly by Gaussian elimination
std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> A,
                                   std::vector<Rational> b) {
    const std::size_t n = A.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && A[piv][col].is_zero()) ++piv;
        if (piv == n) throw std::runtime_error("solve_linear: singular system");
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || A[row][col].is_zero()) continue;
            Rational f = A[row][col] / A[col][col];
            for (std::size_t j = col; j < n; ++j) A[row][j] -= f * A[col][j];
            b[row] -= f * b[col];
        }
    }
    std::vector<Rational> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = b[i] / A[i][i];
    return v;
}

double rat(const Rational& r) { return bignum::rational_to_double(r); }

tauberian::Estimate tail_estimate(const std::vector<double>& values, bool upper) {
    // doubling schedules converge geometrically; the last few points are the
    // informative ones
    std::vector<double> tail;
    std::size_t w = std::min<std::size_t>(3, values.size());
    tail.assign(values.end() - static_cast<std::ptrdiff_t>(w), values.end());
    tauberian::Estimate e;
    e.value = upper ? *std::max_element(tail.begin(), tail.end())
                    : *std::min_element(tail.begin(), tail.end());
    double spread = *std::max_element(tail.begin(), tail.end()) -
                    *std::min_element(tail.begin(), tail.end());
    double last_step = tail.size() >= 2 ? std::fabs(tail.back() - tail[tail.size() - 2]) : 0;
    e.radius = spread + 1.5 * static_cast<double>(values.size()) * last_step;
    return e;
}

ValueQuadruple from_limits_report(const tauberian::LimitsReport& rep) {
    ValueQuadruple q;
    q.w_lowstar = rep.c_lower;
    q.w_lowbar = rep.a_lower;
    q.w_bar = rep.a_upper;
    q.w_star = rep.c_upper;
    q.relation = rep.relation;
    q.inconsistent = rep.inconsistent;
    return q;
}

}  // namespace

Rational normalized_discounted_value(const Model& m, const Policy& p, State x0,
                                     const Rational& alpha) {
    if (!(alpha >= 0 && alpha < 1))
        throw std::domain_error("normalized_discounted_value: alpha must lie in [0,1)");
    if (!p.is_stationary())
        throw std::invalid_argument("normalized_discounted_value: policy must be stationary");
    auto ch = induced_chain(m, p);
    const std::size_t n = ch.P.size();
    if (x0 >= n) throw std::invalid_argument("normalized_discounted_value: bad start state");
    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        A[i][i] = 1;
        for (std::size_t j = 0; j < n; ++j) A[i][j] -= alpha * ch.P[i][j];
    }
    auto v = solve_linear(std::move(A), ch.c);
    return (Rational(1) - alpha) * v[x0];
}

ValueQuadruple value_quadruple(const Model& m, const Policy& p, State x0,
                               const QuadConfig& cfg) {
    // Cesaro side: exact running averages on a doubling schedule, accumulated
    // as integers over a slowly growing common denominator
    std::vector<double> cesaro_values;
    std::vector<Rational> term_prefix;  // kept for the naive Abel fallback
    const bool exact_abel = m.finite_states().has_value() && p.is_stationary();
    {
        using bignum::Int;
        ForwardRecursion fr(m, p, x0, 100000);
        Int acc_num = 0;   // running cost sum = acc_num / (den * cost_lcm)
        Int cost_lcm = 1;
        std::size_t next_mark = 1;
        for (std::size_t n = 0; n < cfg.horizon; ++n) {
            Int den_before = fr.den();
            auto st = fr.step();
            if (!exact_abel) term_prefix.emplace_back(st.term_num, den_before * st.cost_l);
            Int new_lcm = lcm(cost_lcm, st.cost_l);
            if (new_lcm != cost_lcm) {
                acc_num *= new_lcm / cost_lcm;
                cost_lcm = new_lcm;
            }
            acc_num += st.term_num * Int(cost_lcm / st.cost_l);
            if (n + 1 == next_mark || n + 1 == cfg.horizon) {
                cesaro_values.push_back(
                    rat(Rational(acc_num, den_before * cost_lcm * Int(n + 1))));
                next_mark *= 2;
            }
            acc_num *= st.step_l;
        }
    }

    // Abel side
    std::vector<double> abel_values;
    double abel_eval_radius = 0.0;
    auto grid = cfg.alpha_grid.empty() ? default_mdp_alpha_grid() : cfg.alpha_grid;
    std::sort(grid.begin(), grid.end());
    if (exact_abel) {
        for (const auto& alpha : grid)
            abel_values.push_back(rat(normalized_discounted_value(m, p, x0, alpha)));
    } else {
        if (!m.cost_magnitude_bound())
            throw std::invalid_argument("value_quadruple: needs a cost magnitude bound");
        seqcore::RealSequence rs;
        auto shared = std::make_shared<std::vector<Rational>>(std::move(term_prefix));
        rs.term = [shared](std::uint64_t n) {
            return n < shared->size() ? (*shared)[n] : shared->back();
        };
        rs.magnitude_bound = m.cost_magnitude_bound();
        rs.bounded_below = true;
        rs.lower_bound = m.cost_lower_bound();
        // keep only alphas whose summation horizon fits the computed prefix
        double max_gap = 32.0 * std::log(std::max(2.0, 1.0 / cfg.tol)) /
                         static_cast<double>(cfg.horizon);
        std::vector<Rational> usable;
        for (const auto& alpha : grid)
            if (rat(Rational(1) - alpha) >= max_gap || usable.size() < 3)
                usable.push_back(alpha);
        for (const auto& alpha : usable) {
            auto r = abel::eval_naive(rs, alpha, cfg.tol, cfg.precision_bits);
            abel_values.push_back(r.to_double());
            abel_eval_radius = std::max(abel_eval_radius, r.radius);
        }
    }

    ValueQuadruple q;
    q.w_lowstar = tail_estimate(cesaro_values, false);
    q.w_star = tail_estimate(cesaro_values, true);
    q.w_lowbar = tail_estimate(abel_values, false);
    q.w_bar = tail_estimate(abel_values, true);
    q.w_lowbar.radius += abel_eval_radius;
    q.w_bar.radius += abel_eval_radius;

    // chain audit within radii + delta
    double s1 = q.w_lowstar.radius + q.w_lowbar.radius + cfg.delta;
    double s3 = q.w_bar.radius + q.w_star.radius + cfg.delta;
    if (q.w_lowbar.value < q.w_lowstar.value - s1 || q.w_bar.value < q.w_lowbar.value ||
        q.w_star.value < q.w_bar.value - s3)
        q.inconsistent = true;

    try {
        q.relation = tauberian::classify(q.w_lowstar.value, q.w_lowbar.value, q.w_bar.value,
                                         q.w_star.value, cfg.delta);
    } catch (const std::invalid_argument&) {
        q.relation = tauberian::RelationClass::Unresolved;
        q.inconsistent = true;
    }
    return q;
}

ValueQuadruple value_quadruple(const Construction& c, const QuadConfig& cfg) {
    if (c.cost_tag) {
        auto rep = tauberian::analyze(*c.cost_tag, cfg.tagged);
        return from_limits_report(rep);
    }
    return value_quadruple(c.model, c.policy, c.start, cfg);
}

EqualityReport finite_stationary_equality_check(const Model& m, const Policy& p, State x0,
                                                const QuadConfig& cfg) {
    if (!m.finite_states())
        throw std::invalid_argument("finite_stationary_equality_check: model must be finite");
    if (!p.is_stationary())
        throw std::invalid_argument("finite_stationary_equality_check: policy must be stationary");
    EqualityReport rep;
    rep.quadruple = value_quadruple(m, p, x0, cfg);
    const double vals[4] = {rep.quadruple.w_lowstar.value, rep.quadruple.w_lowbar.value,
                            rep.quadruple.w_bar.value, rep.quadruple.w_star.value};
    double lo = *std::min_element(vals, vals + 4);
    double hi = *std::max_element(vals, vals + 4);
    rep.max_gap = hi - lo;
    rep.tolerance = cfg.delta;
    rep.all_equal = rep.max_gap <= cfg.delta;
    rep.common_value = 0.5 * (hi + lo);
    return rep;
}

}  // namespace summability::mdp
