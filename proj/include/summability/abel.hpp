#ifndef SUMMABILITY_ABEL_HPP
#define SUMMABILITY_ABEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "summability/cesaro.hpp"
#include "summability/hpreal.hpp"
#include "summability/seqcore.hpp"

// Abel-mean machinery.  Discount factors live in base-2 log form,
// alpha = 2^(-t) with t a positive fixed-point real, so alpha^E stays
// computable for factorially large integer exponents E.

namespace summability::abel {

using bignum::HPReal;
using bignum::Int;
using bignum::Nat;
using bignum::Rational;
using seqcore::BlockSequence;

struct LogAlpha {
    HPReal t;               // alpha = 2^(-t), t > 0
    double t_radius = 0.0;  // certified bound on |stored t - intended t|
};

// throws if t is not strictly positive at this precision
LogAlpha alpha_from_t(HPReal t, double t_radius);
// t = log2(1/alpha) for exact rational alpha in (0,1)
LogAlpha alpha_from_rational(const Rational& alpha, unsigned frac_bits);
double alpha_to_double(const LogAlpha& a);

struct EvalResult {
    HPReal value;
    double radius = 0.0;
    double to_double() const { return value.to_double(); }
};

struct PowResult {
    HPReal value;
    double radius = 0.0;
    bool underflow = false;
    double to_double() const { return value.to_double(); }
};

// alpha^E = 2^(-tE); exact-integer times fixed-point product with certified
// rounding.  tE beyond F+64 bits underflows to exact zero with the
// sub-representable magnitude 2^-(F+64) as radius and the flag set.
PowResult pow_alpha(const LogAlpha& a, const Nat& exponent);

struct ClosedTerm {
    int sign;  // +1 / -1, alternating starting +1
    Nat exponent;
};

// (1-alpha) * sum u_n alpha^n as the signed power list  sum_j s_j alpha^(b_j):
// each one-block [a,b) contributes +alpha^a - alpha^b, a final infinite
// one-block contributes +alpha^a.
class AbelClosedForm {
public:
    static AbelClosedForm from_sequence(BlockSequence s);
    // explicit term list (tests use this for malformed inputs)
    static AbelClosedForm from_terms(std::vector<ClosedTerm> terms);

    class TermCursor {
    public:
        std::optional<ClosedTerm> next();

    private:
        friend class AbelClosedForm;
        std::optional<seqcore::BlockCursor> blocks_;
        std::optional<ClosedTerm> pending_;
        const std::vector<ClosedTerm>* list_ = nullptr;
        std::size_t i_ = 0;
    };

    TermCursor terms() const;
    const std::optional<BlockSequence>& sequence() const { return seq_; }
    std::vector<ClosedTerm> first_terms(std::size_t count) const;

private:
    std::optional<BlockSequence> seq_;
    std::shared_ptr<const std::vector<ClosedTerm>> list_;
};

AbelClosedForm closed_form(const BlockSequence& s);
// closed form of 1 - f, i.e. of the complemented sequence; involution
AbelClosedForm g_transform(const AbelClosedForm& cf);

// Sums terms until the next magnitude falls below tol.  Signs alternate and
// magnitudes strictly decrease, so the truncation error is bounded by the
// first omitted magnitude.  Throws std::invalid_argument on malformed forms.
EvalResult eval_closed(const AbelClosedForm& cf, const LogAlpha& a, double tol);

// Direct partial summation (1-alpha) sum_{n<N} u_n alpha^n in fixed point;
// independent oracle for eval_closed.  Tail radius B * alpha^N.
EvalResult eval_naive(const BlockSequence& s, const Rational& alpha, double tol,
                      unsigned frac_bits);
// requires a magnitude bound on the sequence; throws without one
EvalResult eval_naive(const seqcore::RealSequence& s, const Rational& alpha, double tol,
                      unsigned frac_bits);

struct CriticalPoint {
    LogAlpha alpha;       // maximizer of alpha^L - alpha^M on [0,1]
    EvalResult max_value;  // value of alpha^L - alpha^M there
};

// argmax (L/M)^(1/(M-L)) of alpha^L - alpha^M, 0 < L < M
CriticalPoint pair_critical(const Nat& L, const Nat& M, unsigned frac_bits);

enum class ScheduleKind {
    OnesPairs,        // criticals of consecutive one-block exponent pairs
    ZerosPairs,       // criticals of zero-block pairs (g-maximizers)
    DyadicFactorial,  // alpha_k = 2^(-1/k!)
    FactorialSqrt,    // beta_k = 2^(-1/((k-1)! sqrt(k)))
};

// alpha values for ordinals k_min..k_max; pair kinds read the pairs off the
// sequence (required for them, ignored otherwise).  Pairs starting at 0 and
// pairs too deep for the precision are skipped.  Throws on an empty result.
std::vector<LogAlpha> make_schedule(ScheduleKind kind, const BlockSequence* s,
                                    unsigned k_min, unsigned k_max, unsigned frac_bits);

struct AbelEstimate {
    double lower = 0.0, upper = 0.0;
    double lower_radius = 0.0, upper_radius = 0.0;
    cesaro::Trend lower_trend, upper_trend;
    std::string schedule_description;
    std::vector<double> values;  // pooled, in schedule order
};

// evaluates the closed form along all schedules, min/max over the tail
// window (last half of the pooled points)
AbelEstimate abel_extremes(const AbelClosedForm& cf,
                           const std::vector<std::vector<LogAlpha>>& schedules, double tol);

// upper bound on sum_{n != k} (alpha^{n!} - alpha^{2 n!}) over the bracket
// [beta_k, beta_{k+1}]:  ln2 * (sum_{n<k} n!)/((k-1)! sqrt(k)) + 2^(1-sqrt(k+1)).
// Decreases to zero.
double beta_interval_bound(unsigned k);

}  // namespace summability::abel

#endif
