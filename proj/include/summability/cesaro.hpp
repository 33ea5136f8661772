#ifndef SUMMABILITY_CESARO_HPP
#define SUMMABILITY_CESARO_HPP

#include <vector>

#include "summability/seqcore.hpp"

// Exact Cesaro partial averages and liminf/limsup estimation along boundary
// subsequences.  Running-average local minima sit at ends of zero-blocks and
// local maxima at ends of one-blocks, so boundary schedules carry the
// extremes of the whole average sequence.

namespace summability::cesaro {

using bignum::Nat;
using bignum::Rational;
using seqcore::BlockSequence;

enum class TrendKind { Increasing, Decreasing, Flat, Mixed };

struct Trend {
    TrendKind kind = TrendKind::Flat;
    double last_step = 0.0;  // |v_last - v_prev| over the tail
};

struct CesaroEstimate {
    Rational lower;  // min over the tail window of the schedule
    Rational upper;  // max over the tail window
    std::vector<Nat> schedule_indices;
    std::vector<Rational> schedule_values;
    Trend lower_trend;  // over zero-block-end (local-min) schedule points
    Trend upper_trend;  // over one-block-end (local-max) schedule points
};

// #{i < n : u_i = 1}, closed form over the block structure
Nat ones_below(const BlockSequence& s, const Nat& n);

// ones_below(s,n)/n, reduced; throws std::domain_error on n = 0
Rational average(const BlockSequence& s, const Nat& n);

// averages at the first k_max boundaries (a finite stream is padded with the
// geometric continuation 2*b_last, 4*b_last, ... so eventually-constant
// sequences still expose their tail); lower/upper are the min/max over the
// last half of the schedule
CesaroEstimate boundary_extremes(const BlockSequence& s, std::size_t k_max = 20);

// averages at the ends of the first finite blocks of the given value
// (block_value 1 -> local maxima series, 0 -> local minima series)
std::vector<Rational> averages_at_block_ends(const BlockSequence& s, int block_value,
                                             std::size_t count);

Trend trend_of(const std::vector<double>& tail_values);

}  // namespace summability::cesaro

#endif
