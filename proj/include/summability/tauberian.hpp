#ifndef SUMMABILITY_TAUBERIAN_HPP
#define SUMMABILITY_TAUBERIAN_HPP

#include <string>
#include <vector>

#include "summability/abel.hpp"
#include "summability/cesaro.hpp"

// Assembles the four limits (lower/upper Cesaro, lower/upper Abel), checks
// the Tauberian chain, audits Hardy-Littlewood consistency and classifies
// the quadruple into the admissible relation patterns.
//
// The estimates are schedule extremes with trends, never proven limits.
// Classification is therefore a trend judgment: a gap between two witness
// series counts as an equality when the gap sequence is still actively
// closing, and as a strict inequality when it has stabilized or grows.

namespace summability::tauberian {

using bignum::Rational;
using seqcore::BlockSequence;

enum class RelationClass {
    Unresolved = 0,
    AllEqual = 2,     // all four limits coincide
    ChainStrict = 3,  // strict everywhere
    OuterEqual = 4,   // lower pair equal, upper pair equal, middle strict
    UpperEqual = 5,   // upper pair equal only
    LowerEqual = 6,   // lower pair equal only
};

const char* relation_name(RelationClass c);
int relation_number(RelationClass c);  // 2..6, 0 for unresolved

enum class GapVerdict { Equal, Strict, Unresolved };

struct Estimate {
    double value = 0.0;
    // certified evaluation error plus the schedule-truncation allowance
    double radius = 0.0;
};

struct WitnessSeries {
    std::vector<double> values;  // aligned by block ordinal; NaN = missing
    double eval_radius = 0.0;    // max certified evaluation radius
};

struct LimitsReport {
    Estimate c_lower, a_lower, a_upper, c_upper;
    RelationClass relation = RelationClass::Unresolved;
    GapVerdict lower_gap = GapVerdict::Unresolved;   // C_lo vs A_lo
    GapVerdict middle_gap = GapVerdict::Unresolved;  // A_lo vs A_hi
    GapVerdict upper_gap = GapVerdict::Unresolved;   // A_hi vs C_hi
    bool inconsistent = false;  // sandwich/chain audit failed
    double delta = 0.0;
    std::string notes;
    WitnessSeries cesaro_lower, abel_lower, abel_upper, cesaro_upper;
};

struct AnalyzeConfig {
    unsigned precision_bits = 256;
    double tol = 0x1p-60;
    double delta = 1e-3;
    unsigned k_min = 2;   // first witness block ordinal
    unsigned k_max = 14;  // last witness block ordinal
    bool grid_mode = false;  // naive evaluation on an alpha grid instead of
                             // pair-critical schedules
    std::vector<Rational> alpha_grid;  // grid mode; default 1-2^-j, j=2..13,
                                       // capped with 9999/10000
};

// plain tolerance classifier on four reals; throws std::invalid_argument if
// the chain is violated beyond delta
RelationClass classify(double c_lo, double a_lo, double a_hi, double c_hi, double delta);

// trend verdict for one gap series (aligned witness differences)
GapVerdict gap_verdict(const std::vector<double>& gaps, double delta);

// pattern mapping; flags combinations the Hardy-Littlewood theorem forbids
RelationClass from_verdicts(GapVerdict lower, GapVerdict middle, GapVerdict upper,
                            std::string* note);

LimitsReport analyze(const BlockSequence& s, const AnalyzeConfig& cfg = {});

struct DualityReport {
    LimitsReport base;
    LimitsReport negated;
    bool values_mirror = false;   // negated values == 1 - reversed base values
    bool classes_mirror = false;  // (4)<->(4), (5)<->(6), (2)<->(2), (3)<->(3)
    double max_value_mismatch = 0.0;
};

DualityReport duality_check(const BlockSequence& s, const AnalyzeConfig& cfg = {});

struct HardyLittlewoodReport {
    bool abel_limit_detected = false;  // |A_hi - A_lo| <= delta
    bool vacuous = false;              // implication not triggered
    bool consistent = true;
    double abel_gap = 0.0;
    double cesaro_gap = 0.0;
};

HardyLittlewoodReport hardy_littlewood_consistency(const BlockSequence& s,
                                                   const AnalyzeConfig& cfg = {});

std::vector<Rational> default_alpha_grid();

}  // namespace summability::tauberian

#endif
