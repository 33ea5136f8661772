#include "summability/tauberian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace summability::tauberian {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> tail_of(const std::vector<double>& xs) {
    std::vector<double> clean;
    for (double x : xs)
        if (!std::isnan(x)) clean.push_back(x);
    if (clean.empty()) return clean;
    std::size_t w = std::max<std::size_t>(3, clean.size() / 2);
    if (w > clean.size()) w = clean.size();
    return {clean.end() - static_cast<std::ptrdiff_t>(w), clean.end()};
}

// distance-to-limit allowance: spread of the tail plus a harmonic-model
// remainder (steps decaying like c/k^2 leave about k * last_step behind)
double truncation_allowance(const std::vector<double>& xs) {
    std::vector<double> clean;
    for (double x : xs)
        if (!std::isnan(x)) clean.push_back(x);
    if (clean.size() < 2) return 0.0;
    auto tail = tail_of(xs);
    double spread = *std::max_element(tail.begin(), tail.end()) -
                    *std::min_element(tail.begin(), tail.end());
    double last_step = std::fabs(tail.back() - tail[tail.size() - 2]);
    return spread + 1.5 * static_cast<double>(clean.size()) * last_step;
}

}  // namespace

const char* relation_name(RelationClass c) {
    switch (c) {
        case RelationClass::AllEqual: return "ALL_EQUAL";
        case RelationClass::ChainStrict: return "CHAIN_STRICT";
        case RelationClass::OuterEqual: return "OUTER_EQUAL";
        case RelationClass::UpperEqual: return "UPPER_EQUAL";
        case RelationClass::LowerEqual: return "LOWER_EQUAL";
        default: return "UNRESOLVED";
    }
}

int relation_number(RelationClass c) { return static_cast<int>(c); }

RelationClass from_verdicts(GapVerdict lower, GapVerdict middle, GapVerdict upper,
                            std::string* note) {
    if (lower == GapVerdict::Unresolved || middle == GapVerdict::Unresolved ||
        upper == GapVerdict::Unresolved) {
        if (note) *note = "at least one gap verdict unresolved";
        return RelationClass::Unresolved;
    }
    const bool e1 = lower == GapVerdict::Equal;
    const bool e2 = middle == GapVerdict::Equal;
    const bool e3 = upper == GapVerdict::Equal;
    if (e1 && e2 && e3) return RelationClass::AllEqual;
    if (e2) {
        // Abel limits equal but outer gaps strict: Hardy-Littlewood says the
        // whole chain would collapse, so this pattern cannot be real
        if (note) *note = "pattern contradicts the Hardy-Littlewood theorem";
        return RelationClass::Unresolved;
    }
    if (e1 && e3) return RelationClass::OuterEqual;
    if (e3) return RelationClass::UpperEqual;
    if (e1) return RelationClass::LowerEqual;
    return RelationClass::ChainStrict;
}

RelationClass classify(double c_lo, double a_lo, double a_hi, double c_hi, double delta) {
    if (!(delta >= 0)) throw std::invalid_argument("classify: delta must be >= 0");
    const double gaps[3] = {a_lo - c_lo, a_hi - a_lo, c_hi - a_hi};
    GapVerdict v[3];
    for (int i = 0; i < 3; ++i) {
        if (gaps[i] < -delta)
            throw std::invalid_argument("classify: Tauberian chain violated beyond delta");
        v[i] = std::fabs(gaps[i]) <= delta ? GapVerdict::Equal : GapVerdict::Strict;
    }
    return from_verdicts(v[0], v[1], v[2], nullptr);
}

GapVerdict gap_verdict(const std::vector<double>& gaps, double delta) {
    std::vector<double> clean;
    for (double g : gaps)
        if (!std::isnan(g)) clean.push_back(g);
    if (clean.empty()) return GapVerdict::Unresolved;
    auto tail = tail_of(clean);
    if (std::fabs(tail.back()) <= delta) return GapVerdict::Equal;
    if (tail.back() < -delta) return GapVerdict::Unresolved;  // chain suspect
    if (tail.size() < 2) return GapVerdict::Unresolved;
    double total = tail.back() - tail.front();
    std::size_t nonpos = 0, nonneg = 0;
    for (std::size_t i = 1; i < tail.size(); ++i) {
        double d = tail[i] - tail[i - 1];
        if (d <= delta) ++nonpos;
        if (d >= -delta) ++nonneg;
    }
    const auto steps = tail.size() - 1;
    const double quorum = 0.8 * static_cast<double>(steps);
    if (total < -delta && static_cast<double>(nonpos) >= quorum)
        return GapVerdict::Equal;  // gap still actively closing
    if (total > -delta && static_cast<double>(nonneg) >= quorum)
        return GapVerdict::Strict;  // gap stabilized or widening
    return GapVerdict::Unresolved;
}

std::vector<Rational> default_alpha_grid() {
    std::vector<Rational> grid;
    for (int j = 2; j <= 13; ++j) {
        bignum::Int q = bignum::Int(1) << j;
        grid.emplace_back(q - 1, q);
    }
    grid.emplace_back(9999, 10000);
    return grid;
}

namespace {

struct GatheredWitnesses {
    WitnessSeries c_lo, a_lo, a_hi, c_hi;
    std::vector<double> sandwich_pool;  // avg values bounding every Abel mean
    double sandwich_slack = 0.0;
    bool ok = false;  // enough structure for pair schedules
};

double rat(const Rational& r) { return bignum::rational_to_double(r); }

GatheredWitnesses gather_block_witnesses(const BlockSequence& s, const AnalyzeConfig& cfg) {
    GatheredWitnesses w;
    auto ones = seqcore::first_blocks(s, 1, cfg.k_max);
    auto zeros = seqcore::first_blocks(s, 0, cfg.k_max);
    std::size_t usable_ones = 0, usable_zeros = 0;
    for (const auto& b : ones)
        if (!b.start.is_zero()) ++usable_ones;
    for (const auto& b : zeros)
        if (!b.start.is_zero()) ++usable_zeros;
    if (usable_ones < 3 || usable_zeros < 3) return w;

    auto cf = abel::closed_form(s);
    auto eval_at_pairs = [&](const std::vector<seqcore::Block>& blocks, WitnessSeries& out) {
        for (unsigned k = cfg.k_min; k <= cfg.k_max && k <= blocks.size(); ++k) {
            const auto& blk = blocks[k - 1];
            if (blk.start.is_zero()) {
                out.values.push_back(kNaN);
                continue;
            }
            try {
                auto crit = abel::pair_critical(blk.start, *blk.end, cfg.precision_bits);
                auto r = abel::eval_closed(cf, crit.alpha, cfg.tol);
                out.values.push_back(r.to_double());
                out.eval_radius = std::max(out.eval_radius, r.radius);
            } catch (const std::domain_error&) {
                out.values.push_back(kNaN);  // pair too deep for the precision
            }
        }
    };
    eval_at_pairs(ones, w.a_hi);
    eval_at_pairs(zeros, w.a_lo);

    auto avg_at_ends = [&](const std::vector<seqcore::Block>& blocks, WitnessSeries& out) {
        for (unsigned k = cfg.k_min; k <= cfg.k_max && k <= blocks.size(); ++k)
            out.values.push_back(rat(cesaro::average(s, *blocks[k - 1].end)));
    };
    avg_at_ends(ones, w.c_hi);
    avg_at_ends(zeros, w.c_lo);

    // every Abel mean is a weighted average of running averages, whose
    // extremes over the evaluated horizon sit at block ends
    auto pool_est = cesaro::boundary_extremes(s, 2 * cfg.k_max + 2);
    w.sandwich_pool.push_back(rat(cesaro::average(s, 1)));
    for (const auto& v : pool_est.schedule_values) w.sandwich_pool.push_back(rat(v));
    w.sandwich_slack = 64.0 * cfg.tol + 1e-9;
    w.ok = true;
    return w;
}

GatheredWitnesses gather_grid_witnesses(const BlockSequence& s, const AnalyzeConfig& cfg) {
    GatheredWitnesses w;
    auto grid = cfg.alpha_grid.empty() ? default_alpha_grid() : cfg.alpha_grid;
    std::sort(grid.begin(), grid.end());
    double max_eval_radius = 0.0;
    for (const auto& alpha : grid) {
        auto r = abel::eval_naive(s, alpha, cfg.tol, cfg.precision_bits);
        w.a_lo.values.push_back(r.to_double());
        max_eval_radius = std::max(max_eval_radius, r.radius);
        // horizon-matched Cesaro partner: the mean at alpha weights running
        // averages concentrated around n = 1/(1-alpha)
        double n_part = 1.0 / (1.0 - rat(alpha));
        bignum::Nat n(static_cast<unsigned long long>(std::max(1.0, n_part)));
        w.c_lo.values.push_back(rat(cesaro::average(s, n)));
    }
    w.a_hi.values = w.a_lo.values;
    w.a_lo.eval_radius = w.a_hi.eval_radius = max_eval_radius;
    w.c_hi.values = w.c_lo.values;

    // sandwich pool: running-average extremes over everything the largest
    // alpha can see (block ends plus the horizon endpoint)
    const Rational& amax = grid.back();
    double horizon = std::log(std::max(2.0, 1.0 / cfg.tol)) / -std::log(rat(amax));
    bignum::Nat h_max(static_cast<unsigned long long>(horizon) + 2);
    w.sandwich_pool.push_back(rat(cesaro::average(s, 1)));
    w.sandwich_pool.push_back(rat(cesaro::average(s, h_max)));
    for (double v : w.c_lo.values) w.sandwich_pool.push_back(v);
    {
        auto cur = s.boundaries();
        std::size_t pulls = 0;
        for (auto b = cur->next(); b && *b <= h_max; b = cur->next()) {
            w.sandwich_pool.push_back(rat(cesaro::average(s, *b)));
            if (++pulls > seqcore::kBoundaryPullCap)
                throw std::runtime_error("analyze: boundary pull cap exceeded");
        }
    }
    w.sandwich_slack = 64.0 * cfg.tol + 1e-9;
    w.ok = true;
    return w;
}

Estimate make_estimate(const WitnessSeries& series, double pooled_extreme) {
    Estimate e;
    e.value = pooled_extreme;
    e.radius = series.eval_radius + truncation_allowance(series.values);
    return e;
}

double tail_min(const std::vector<double>& a, const std::vector<double>& b) {
    auto ta = tail_of(a), tb = tail_of(b);
    double m = std::numeric_limits<double>::infinity();
    for (double x : ta) m = std::min(m, x);
    for (double x : tb) m = std::min(m, x);
    return m;
}

double tail_max(const std::vector<double>& a, const std::vector<double>& b) {
    auto ta = tail_of(a), tb = tail_of(b);
    double m = -std::numeric_limits<double>::infinity();
    for (double x : ta) m = std::max(m, x);
    for (double x : tb) m = std::max(m, x);
    return m;
}

std::vector<double> aligned_gaps(const std::vector<double>& lo,
                                 const std::vector<double>& hi) {
    std::vector<double> g;
    std::size_t n = std::min(lo.size(), hi.size());
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isnan(lo[i]) && !std::isnan(hi[i])) g.push_back(hi[i] - lo[i]);
    return g;
}

}  // namespace

LimitsReport analyze(const BlockSequence& s, const AnalyzeConfig& cfg) {
    if (!(cfg.delta > 0) || !(cfg.tol > 0) || cfg.precision_bits < 64 ||
        cfg.k_min < 1 || cfg.k_max < cfg.k_min)
        throw std::invalid_argument("analyze: invalid config");

    LimitsReport rep;
    rep.delta = cfg.delta;

    GatheredWitnesses w;
    if (!cfg.grid_mode) w = gather_block_witnesses(s, cfg);
    bool grid = false;
    if (!w.ok) {
        w = gather_grid_witnesses(s, cfg);
        grid = true;
    }

    rep.cesaro_lower = w.c_lo;
    rep.abel_lower = w.a_lo;
    rep.abel_upper = w.a_hi;
    rep.cesaro_upper = w.c_hi;

    rep.c_lower = make_estimate(w.c_lo, tail_min(w.c_lo.values, w.c_hi.values));
    rep.c_upper = make_estimate(w.c_hi, tail_max(w.c_lo.values, w.c_hi.values));
    rep.a_lower = make_estimate(w.a_lo, tail_min(w.a_lo.values, w.a_hi.values));
    rep.a_upper = make_estimate(w.a_hi, tail_max(w.a_lo.values, w.a_hi.values));

    // sandwich audit: every Abel value must lie between the running-average
    // extremes seen over its horizon
    if (!w.sandwich_pool.empty()) {
        double lo = *std::min_element(w.sandwich_pool.begin(), w.sandwich_pool.end());
        double hi = *std::max_element(w.sandwich_pool.begin(), w.sandwich_pool.end());
        auto audit = [&](const WitnessSeries& ws) {
            for (double v : ws.values) {
                if (std::isnan(v)) continue;
                if (v < lo - ws.eval_radius - w.sandwich_slack ||
                    v > hi + ws.eval_radius + w.sandwich_slack)
                    rep.inconsistent = true;
            }
        };
        audit(w.a_lo);
        audit(w.a_hi);
    }
    // the assembled quadruple must satisfy the Tauberian chain within
    // radii + delta
    {
        const double slack1 = rep.c_lower.radius + rep.a_lower.radius + cfg.delta;
        const double slack3 = rep.a_upper.radius + rep.c_upper.radius + cfg.delta;
        if (rep.a_lower.value < rep.c_lower.value - slack1 ||
            rep.a_upper.value < rep.a_lower.value ||
            rep.c_upper.value < rep.a_upper.value - slack3)
            rep.inconsistent = true;
    }
    if (rep.inconsistent) {
        rep.notes = "INCONSISTENT: estimates violate the Tauberian sandwich";
        rep.relation = RelationClass::Unresolved;
        return rep;
    }

    double noise = 4.0 * std::max({w.c_lo.eval_radius, w.c_hi.eval_radius,
                                   w.a_lo.eval_radius, w.a_hi.eval_radius});
    double delta_eff = cfg.delta + noise;

    rep.lower_gap = gap_verdict(aligned_gaps(w.c_lo.values, w.a_lo.values), delta_eff);
    rep.middle_gap = gap_verdict(aligned_gaps(w.a_lo.values, w.a_hi.values), delta_eff);
    rep.upper_gap = gap_verdict(aligned_gaps(w.a_hi.values, w.c_hi.values), delta_eff);
    std::string note;
    rep.relation = from_verdicts(rep.lower_gap, rep.middle_gap, rep.upper_gap, &note);
    rep.notes = note;
    if (grid) {
        if (!rep.notes.empty()) rep.notes += "; ";
        rep.notes += "grid-mode estimates (horizon-matched schedules)";
    }
    return rep;
}

DualityReport duality_check(const BlockSequence& s, const AnalyzeConfig& cfg) {
    DualityReport d;
    d.base = analyze(s, cfg);
    d.negated = analyze(seqcore::negate(s), cfg);
    auto mismatch = [](const Estimate& neg, const Estimate& base) {
        double m = std::fabs(neg.value - (1.0 - base.value));
        return std::max(0.0, m - (neg.radius + base.radius));
    };
    double m1 = mismatch(d.negated.c_lower, d.base.c_upper);
    double m2 = mismatch(d.negated.a_lower, d.base.a_upper);
    double m3 = mismatch(d.negated.a_upper, d.base.a_lower);
    double m4 = mismatch(d.negated.c_upper, d.base.c_lower);
    d.max_value_mismatch = std::max({m1, m2, m3, m4});
    d.values_mirror = d.max_value_mismatch == 0.0;
    auto mirror_of = [](RelationClass c) {
        switch (c) {
            case RelationClass::UpperEqual: return RelationClass::LowerEqual;
            case RelationClass::LowerEqual: return RelationClass::UpperEqual;
            default: return c;
        }
    };
    d.classes_mirror = d.negated.relation == mirror_of(d.base.relation);
    return d;
}

HardyLittlewoodReport hardy_littlewood_consistency(const BlockSequence& s,
                                                   const AnalyzeConfig& cfg) {
    HardyLittlewoodReport h;
    LimitsReport rep = analyze(s, cfg);
    h.abel_gap = rep.a_upper.value - rep.a_lower.value;
    h.cesaro_gap = rep.c_upper.value - rep.c_lower.value;
    h.abel_limit_detected =
        std::fabs(h.abel_gap) <= cfg.delta || rep.middle_gap == GapVerdict::Equal;
    if (!h.abel_limit_detected) {
        h.vacuous = true;  // implication has nothing to say
        return h;
    }
    double budget = cfg.delta + rep.c_lower.radius + rep.c_upper.radius +
                    rep.a_lower.radius + rep.a_upper.radius;
    h.consistent = std::fabs(h.cesaro_gap) <= budget;
    return h;
}

}  // namespace summability::tauberian
