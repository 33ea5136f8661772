#include "summability/abel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace summability::abel {

namespace {

constexpr std::size_t kMaxClosedTerms = 1u << 17;
constexpr std::uint64_t kMaxNaiveTerms = 1u << 27;

double up(double x) { return x * (1.0 + 1e-12) + 1e-300; }

}  // namespace

LogAlpha alpha_from_t(HPReal t, double t_radius) {
    if (t.sign() <= 0)
        throw std::domain_error("alpha_from_t: t must be positive at this precision");
    return LogAlpha{std::move(t), t_radius};
}

LogAlpha alpha_from_rational(const Rational& alpha, unsigned frac_bits) {
    if (!(alpha > 0 && alpha < 1))
        throw std::domain_error("alpha_from_rational: alpha must lie in (0,1)");
    HPReal t = bignum::hp_log2_ratio(denominator(alpha), numerator(alpha), frac_bits);
    return alpha_from_t(std::move(t), std::ldexp(2.0, -static_cast<int>(frac_bits)));
}

double alpha_to_double(const LogAlpha& a) {
    return std::exp2(-a.t.to_double());
}

PowResult pow_alpha(const LogAlpha& a, const Nat& exponent) {
    const unsigned F = a.t.frac_bits();
    if (exponent.is_zero()) return {HPReal::one(F), 0.0, false};
    Int x = a.t.mantissa() * exponent;  // exact; value x * 2^-F
    Int m_int = x >> F;
    if (m_int > F + 64)
        return {HPReal::zero(F), std::ldexp(1.0, -static_cast<int>(F + 64)), true};
    auto m = m_int.convert_to<unsigned long long>();
    Int frac = x - (m_int << F);
    HPReal v = bignum::exp2_neg_frac(frac, F).rshift(m);
    // kernel error scales with the shift; exponent uncertainty enters as
    // ln2 * |E * t_radius| * 2^{-tE} <= 0.7 * (tE) * (t_radius / t)
    double x_dbl = HPReal(x, F).to_double();
    double rel_t = a.t_radius / a.t.to_double();
    double radius = bignum::exp2_frac_error(F) * std::ldexp(1.0, -static_cast<int>(m)) +
                    std::ldexp(1.0, -static_cast<int>(F)) + 0.7 * x_dbl * rel_t;
    return {std::move(v), up(radius), false};
}

AbelClosedForm AbelClosedForm::from_sequence(BlockSequence s) {
    AbelClosedForm cf;
    cf.seq_ = std::move(s);
    return cf;
}

AbelClosedForm AbelClosedForm::from_terms(std::vector<ClosedTerm> terms) {
    AbelClosedForm cf;
    cf.list_ = std::make_shared<const std::vector<ClosedTerm>>(std::move(terms));
    return cf;
}

std::optional<ClosedTerm> AbelClosedForm::TermCursor::next() {
    if (list_) {
        if (i_ >= list_->size()) return std::nullopt;
        return (*list_)[i_++];
    }
    if (pending_) {
        auto out = std::move(*pending_);
        pending_.reset();
        return out;
    }
    while (blocks_) {
        auto blk = blocks_->next();
        if (!blk) {
            blocks_.reset();
            return std::nullopt;
        }
        if (blk->value != 1) continue;
        ClosedTerm head{+1, blk->start};
        if (blk->end) pending_ = ClosedTerm{-1, *blk->end};
        return head;
    }
    return std::nullopt;
}

AbelClosedForm::TermCursor AbelClosedForm::terms() const {
    TermCursor c;
    if (seq_) {
        c.blocks_.emplace(*seq_);
    } else {
        c.list_ = list_.get();
    }
    return c;
}

std::vector<ClosedTerm> AbelClosedForm::first_terms(std::size_t count) const {
    std::vector<ClosedTerm> out;
    auto cur = terms();
    while (out.size() < count) {
        auto t = cur.next();
        if (!t) break;
        out.push_back(std::move(*t));
    }
    return out;
}

AbelClosedForm closed_form(const BlockSequence& s) {
    return AbelClosedForm::from_sequence(s);
}

AbelClosedForm g_transform(const AbelClosedForm& cf) {
    if (cf.sequence()) return AbelClosedForm::from_sequence(seqcore::negate(*cf.sequence()));
    auto terms = cf.first_terms(kMaxClosedTerms);
    std::vector<ClosedTerm> out;
    std::size_t start = 0;
    if (!terms.empty() && terms[0].exponent.is_zero() && terms[0].sign == +1) {
        start = 1;  // 1 - (1 + rest) = -rest
    } else {
        out.push_back({+1, Nat(0)});  // 1 - f gains the alpha^0 head
    }
    for (std::size_t i = start; i < terms.size(); ++i)
        out.push_back({-terms[i].sign, terms[i].exponent});
    return AbelClosedForm::from_terms(std::move(out));
}

EvalResult eval_closed(const AbelClosedForm& cf, const LogAlpha& a, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("eval_closed: tol must be positive");
    const unsigned F = a.t.frac_bits();
    HPReal acc = HPReal::zero(F);
    double radius = 0.0;
    auto cur = cf.terms();
    int expected_sign = +1;
    double prev_mag = std::numeric_limits<double>::infinity();
    double prev_rad = 0.0;
    std::optional<Nat> prev_exp;
    std::size_t count = 0;
    for (auto term = cur.next(); term; term = cur.next()) {
        if (term->sign != expected_sign)
            throw std::invalid_argument("eval_closed: malformed form (signs must alternate)");
        if (prev_exp && !(*prev_exp < term->exponent))
            throw std::invalid_argument(
                "eval_closed: malformed form (exponents must increase)");
        PowResult p = pow_alpha(a, term->exponent);
        double mag = p.to_double();
        if (mag > prev_mag + prev_rad + p.radius)
            throw std::invalid_argument(
                "eval_closed: malformed form (magnitudes must decrease)");
        if (p.underflow || mag <= tol) {
            radius += up(mag + p.radius);  // alternating tail <= first omitted
            return {std::move(acc), up(radius)};
        }
        acc = (term->sign > 0) ? acc + p.value : acc - p.value;
        radius += p.radius;
        prev_mag = mag;
        prev_rad = p.radius;
        prev_exp = std::move(term->exponent);
        expected_sign = -expected_sign;
        if (++count > kMaxClosedTerms) {
            radius += up(mag);  // remaining alternating tail <= last magnitude
            return {std::move(acc), up(radius)};
        }
    }
    return {std::move(acc), up(radius)};
}

namespace {

EvalResult naive_sum(const std::function<std::optional<Rational>(std::uint64_t)>& term_fn,
                     double magnitude_bound, const Rational& alpha, double tol,
                     unsigned frac_bits) {
    if (!(alpha > 0 && alpha < 1))
        throw std::domain_error("eval_naive: alpha must lie in (0,1)");
    if (!(tol > 0)) throw std::invalid_argument("eval_naive: tol must be positive");
    const unsigned F = frac_bits;
    HPReal a_hat = HPReal::from_rational(alpha, F);
    HPReal tol_fix = HPReal::from_rational(bignum::rational_from_double(tol), F);
    HPReal powv = HPReal::one(F);
    HPReal sum = HPReal::zero(F);
    std::uint64_t n = 0;
    while (powv > tol_fix) {
        auto u = term_fn(n);
        if (!u) break;  // term stream ended (treated as zero tail)
        if (!u->is_zero()) {
            if (numerator(*u) == denominator(*u))
                sum = sum + powv;
            else
                sum = sum + HPReal::from_rational(*u, F).mul(powv);
        }
        powv = powv.mul(a_hat);
        if (++n > kMaxNaiveTerms)
            throw std::runtime_error("eval_naive: term cap exceeded; alpha too close to 1");
    }
    HPReal result = HPReal::from_rational(Rational(1) - alpha, F).mul(sum);
    double n_dbl = static_cast<double>(n);
    double rounding =
        std::ldexp((n_dbl * n_dbl + 4.0 * n_dbl + 4.0) * std::max(1.0, magnitude_bound),
                   1 - static_cast<int>(F));
    double tail = up(tol * magnitude_bound);
    return {std::move(result), up(tail + rounding)};
}

}  // namespace

EvalResult eval_naive(const BlockSequence& s, const Rational& alpha, double tol,
                      unsigned frac_bits) {
    // walk the block structure alongside n; O(1) amortized per term
    auto cur = std::make_shared<seqcore::BlockCursor>(s);
    struct Walk {
        std::shared_ptr<seqcore::BlockCursor> cur;
        std::optional<seqcore::Block> blk;
    };
    auto walk = std::make_shared<Walk>(Walk{cur, std::nullopt});
    walk->blk = walk->cur->next();
    auto term_fn = [walk](std::uint64_t n) -> std::optional<Rational> {
        Nat nn(n);
        while (walk->blk && walk->blk->end && *walk->blk->end <= nn)
            walk->blk = walk->cur->next();
        if (!walk->blk) return Rational(0);
        return Rational(walk->blk->value);
    };
    return naive_sum(term_fn, 1.0, alpha, tol, frac_bits);
}

EvalResult eval_naive(const seqcore::RealSequence& s, const Rational& alpha, double tol,
                      unsigned frac_bits) {
    if (!s.magnitude_bound)
        throw std::invalid_argument("eval_naive: sequence carries no magnitude bound");
    double bound = bignum::rational_to_double(*s.magnitude_bound);
    auto term_fn = [&s](std::uint64_t n) -> std::optional<Rational> { return s.term(n); };
    return naive_sum(term_fn, bound, alpha, tol, frac_bits);
}

CriticalPoint pair_critical(const Nat& L, const Nat& M, unsigned frac_bits) {
    if (L <= 0 || L >= M) throw std::domain_error("pair_critical: requires 0 < L < M");
    HPReal log_ratio = bignum::hp_log2_ratio(M, L, frac_bits);
    Nat gap = M - L;
    HPReal t = log_ratio.div_int(gap);
    double t_radius = std::ldexp(2.0, -static_cast<int>(frac_bits));
    LogAlpha a = alpha_from_t(std::move(t), t_radius);
    PowResult low = pow_alpha(a, L);
    PowResult high = pow_alpha(a, M);
    EvalResult mv{low.value - high.value, up(low.radius + high.radius)};
    return {std::move(a), std::move(mv)};
}

std::vector<LogAlpha> make_schedule(ScheduleKind kind, const BlockSequence* s,
                                    unsigned k_min, unsigned k_max, unsigned frac_bits) {
    if (k_min < 1 || k_max < k_min)
        throw std::invalid_argument("make_schedule: empty or invalid ordinal range");
    std::vector<LogAlpha> out;
    switch (kind) {
        case ScheduleKind::OnesPairs:
        case ScheduleKind::ZerosPairs: {
            if (!s) throw std::invalid_argument("make_schedule: pair kinds need a sequence");
            int want = (kind == ScheduleKind::OnesPairs) ? 1 : 0;
            auto blocks = seqcore::first_blocks(*s, want, k_max);
            for (unsigned k = k_min; k <= k_max && k <= blocks.size(); ++k) {
                const auto& blk = blocks[k - 1];
                if (blk.start.is_zero()) continue;  // alpha^0 - alpha^b peaks at 0
                try {
                    out.push_back(pair_critical(blk.start, *blk.end, frac_bits).alpha);
                } catch (const std::domain_error&) {
                    break;  // pair too deep for this precision
                }
            }
            break;
        }
        case ScheduleKind::DyadicFactorial: {
            for (unsigned k = k_min; k <= k_max; ++k) {
                HPReal t = HPReal::from_rational(Rational(1, bignum::factorial(k)), frac_bits);
                if (t.sign() <= 0) break;
                out.push_back(alpha_from_t(
                    std::move(t), std::ldexp(1.0, -static_cast<int>(frac_bits))));
            }
            break;
        }
        case ScheduleKind::FactorialSqrt: {
            for (unsigned k = k_min; k <= k_max; ++k) {
                HPReal root = bignum::hp_sqrt(k, frac_bits);
                Rational denom = Rational(bignum::factorial(k - 1)) * root.to_rational();
                HPReal t = HPReal::from_rational(Rational(1) / denom, frac_bits);
                if (t.sign() <= 0) break;
                out.push_back(alpha_from_t(
                    std::move(t), std::ldexp(2.0, -static_cast<int>(frac_bits))));
            }
            break;
        }
    }
    if (out.empty()) throw std::invalid_argument("make_schedule: produced no points");
    return out;
}

AbelEstimate abel_extremes(const AbelClosedForm& cf,
                           const std::vector<std::vector<LogAlpha>>& schedules, double tol) {
    AbelEstimate est;
    std::vector<double> radii;
    std::size_t nonempty = 0;
    for (const auto& sched : schedules) {
        if (!sched.empty()) ++nonempty;
        for (const auto& a : sched) {
            EvalResult r = eval_closed(cf, a, tol);
            est.values.push_back(r.to_double());
            radii.push_back(r.radius);
        }
    }
    if (nonempty == 0 || est.values.empty())
        throw std::invalid_argument("abel_extremes: needs at least one nonempty schedule");
    const std::size_t tail_start = est.values.size() / 2;
    est.lower = est.values[tail_start];
    est.upper = est.values[tail_start];
    est.lower_radius = radii[tail_start];
    est.upper_radius = radii[tail_start];
    for (std::size_t i = tail_start; i < est.values.size(); ++i) {
        if (est.values[i] < est.lower) {
            est.lower = est.values[i];
            est.lower_radius = radii[i];
        }
        if (est.values[i] > est.upper) {
            est.upper = est.values[i];
            est.upper_radius = radii[i];
        }
    }
    std::vector<double> tail(est.values.begin() + static_cast<std::ptrdiff_t>(tail_start),
                             est.values.end());
    est.lower_trend = cesaro::trend_of(tail);
    est.upper_trend = est.lower_trend;
    est.schedule_description =
        std::to_string(schedules.size()) + " schedule(s), " +
        std::to_string(est.values.size()) + " points";
    return est;
}

double beta_interval_bound(unsigned k) {
    if (k < 2) throw std::domain_error("beta_interval_bound: requires k >= 2");
    const unsigned F = 128;
    // head: ln2 * (sum_{n<k} n!) / ((k-1)! sqrt(k)); round everything upward
    static const Rational ln2_upper(6931471805599454LL, 10000000000000000LL);
    Rational head_num = Rational(bignum::dsum(k - 1)) * ln2_upper;
    Rational sqrt_lower = bignum::hp_sqrt(k, F).to_rational();  // floor rounding
    Rational head = head_num / (Rational(bignum::factorial(k - 1)) * sqrt_lower);
    // tail: 2^(1 - sqrt(k+1)); a floor-rounded root gives an upper bound
    HPReal root = bignum::hp_sqrt(k + 1, F);
    Int whole = root.floor();
    HPReal frac = root - HPReal::from_int(whole, F);
    double tail = std::ldexp(bignum::exp2_neg_frac(frac.mantissa(), F).to_double(),
                             1 - whole.convert_to<int>());
    return up(bignum::rational_to_double(head) + up(tail));
}

}  // namespace summability::abel
