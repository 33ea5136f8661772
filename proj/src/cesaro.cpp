#include "summability/cesaro.hpp"

#include <cmath>
#include <stdexcept>

namespace summability::cesaro {

Nat ones_below(const BlockSequence& s, const Nat& n) {
    Nat ones = 0;
    seqcore::BlockCursor bc(s);
    for (auto blk = bc.next(); blk; blk = bc.next()) {
        if (blk->start >= n) break;
        if (blk->value == 1) {
            const Nat& hi = (blk->end && *blk->end < n) ? *blk->end : n;
            ones += hi - blk->start;
        }
        if (!blk->end || *blk->end >= n) break;
    }
    return ones;
}

Rational average(const BlockSequence& s, const Nat& n) {
    if (n.is_zero()) throw std::domain_error("average: requires n >= 1");
    return Rational(ones_below(s, n), n);
}

Trend trend_of(const std::vector<double>& tail) {
    Trend t;
    if (tail.size() < 2) return t;
    bool up = false, down = false;
    for (std::size_t i = 1; i < tail.size(); ++i) {
        if (tail[i] > tail[i - 1]) up = true;
        if (tail[i] < tail[i - 1]) down = true;
    }
    if (up && down)
        t.kind = TrendKind::Mixed;
    else if (up)
        t.kind = TrendKind::Increasing;
    else if (down)
        t.kind = TrendKind::Decreasing;
    else
        t.kind = TrendKind::Flat;
    t.last_step = std::fabs(tail.back() - tail[tail.size() - 2]);
    return t;
}

CesaroEstimate boundary_extremes(const BlockSequence& s, std::size_t k_max) {
    if (k_max < 2) throw std::invalid_argument("boundary_extremes: requires k_max >= 2");
    if (k_max > seqcore::kBoundaryPullCap)
        throw std::invalid_argument("boundary_extremes: k_max exceeds boundary pull policy");

    CesaroEstimate est;
    std::vector<int> roles;  // value of the block each schedule point closes
    auto cur = s.boundaries();
    int value = s.initial_value();
    Nat last = 0;
    while (est.schedule_indices.size() < k_max) {
        auto b = cur->next();
        if (!b) break;
        est.schedule_indices.push_back(*b);
        roles.push_back(value);  // the block [last, b) has this value
        value ^= 1;
        last = *b;
    }
    if (est.schedule_indices.empty()) {
        est.schedule_indices.push_back(1);
        roles.push_back(s.initial_value());
        last = 1;
    }
    // geometric continuation inside the final block keeps eventually-constant
    // sequences honest
    while (est.schedule_indices.size() < k_max) {
        last <<= 1;
        est.schedule_indices.push_back(last);
        roles.push_back(value);
    }

    est.schedule_values.reserve(est.schedule_indices.size());
    for (const auto& n : est.schedule_indices) est.schedule_values.push_back(average(s, n));

    const std::size_t total = est.schedule_values.size();
    const std::size_t tail_start = total / 2;
    est.lower = est.schedule_values[tail_start];
    est.upper = est.schedule_values[tail_start];
    for (std::size_t i = tail_start; i < total; ++i) {
        if (est.schedule_values[i] < est.lower) est.lower = est.schedule_values[i];
        if (est.schedule_values[i] > est.upper) est.upper = est.schedule_values[i];
    }

    std::vector<double> lows, highs;
    for (std::size_t i = tail_start; i < total; ++i) {
        double v = bignum::rational_to_double(est.schedule_values[i]);
        // a point closing a one-block is a local maximum of the running
        // average, a point closing a zero-block a local minimum
        (roles[i] == 1 ? highs : lows).push_back(v);
    }
    est.lower_trend = trend_of(lows);
    est.upper_trend = trend_of(highs);
    return est;
}

std::vector<Rational> averages_at_block_ends(const BlockSequence& s, int block_value,
                                             std::size_t count) {
    std::vector<Rational> out;
    for (const auto& blk : seqcore::first_blocks(s, block_value, count))
        out.push_back(average(s, *blk.end));
    return out;
}

}  // namespace summability::cesaro
