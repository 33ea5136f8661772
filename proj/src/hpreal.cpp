#include "summability/hpreal.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace summability::bignum {

namespace {

// floor division for possibly negative numerators
Int floor_div(const Int& num, const Int& den) {
    Int q = num / den;  // truncates toward zero
    if ((num < 0) != (den < 0) && q * den != num) --q;
    return q;
}

}  // namespace

HPReal HPReal::from_int(const Int& v, unsigned frac_bits) {
    return HPReal(v << frac_bits, frac_bits);
}

HPReal HPReal::from_rational(const Rational& v, unsigned frac_bits) {
    Int num = numerator(v) << frac_bits;
    return HPReal(floor_div(num, denominator(v)), frac_bits);
}

HPReal HPReal::operator+(const HPReal& o) const {
    if (fbits_ != o.fbits_) throw std::invalid_argument("HPReal: precision mismatch");
    return HPReal(mant_ + o.mant_, fbits_);
}

HPReal HPReal::operator-(const HPReal& o) const {
    if (fbits_ != o.fbits_) throw std::invalid_argument("HPReal: precision mismatch");
    return HPReal(mant_ - o.mant_, fbits_);
}

HPReal HPReal::mul(const HPReal& o) const {
    if (fbits_ != o.fbits_) throw std::invalid_argument("HPReal: precision mismatch");
    Int p = mant_ * o.mant_;
    return HPReal(p >= 0 ? Int(p >> fbits_) : -Int((-p + ((Int(1) << fbits_) - 1)) >> fbits_),
                  fbits_);
}

HPReal HPReal::div_int(const Int& k) const {
    if (k.is_zero()) throw std::domain_error("HPReal: division by zero");
    return HPReal(floor_div(mant_, k), fbits_);
}

HPReal HPReal::rshift(unsigned long long m) const {
    if (mant_ >= 0) return HPReal(mant_ >> m, fbits_);
    return HPReal(-Int((-mant_ + ((Int(1) << m) - 1)) >> m), fbits_);
}

Int HPReal::floor() const {
    if (mant_ >= 0) return mant_ >> fbits_;
    return -Int((-mant_ + ((Int(1) << fbits_) - 1)) >> fbits_);
}

Int HPReal::frac_mantissa() const {
    return mant_ - (floor() << fbits_);
}

Rational HPReal::to_rational() const {
    return Rational(mant_, Int(1) << fbits_);
}

double HPReal::to_double() const {
    if (mant_.is_zero()) return 0.0;
    Int a = abs(mant_);
    auto bits = msb(a);  // index of highest set bit
    double d;
    long e;
    if (bits <= 62) {
        d = a.convert_to<double>();
        e = -static_cast<long>(fbits_);
    } else {
        Int top = a >> (bits - 62);
        d = top.convert_to<double>();
        e = static_cast<long>(bits - 62) - static_cast<long>(fbits_);
    }
    double r = std::ldexp(d, static_cast<int>(e));
    return mant_ < 0 ? -r : r;
}

std::strong_ordering HPReal::operator<=>(const HPReal& o) const {
    if (fbits_ != o.fbits_) throw std::invalid_argument("HPReal: precision mismatch");
    if (mant_ < o.mant_) return std::strong_ordering::less;
    if (mant_ > o.mant_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

HPReal hp_sqrt(unsigned n, unsigned frac_bits) {
    if (n < 1) throw std::domain_error("hp_sqrt: requires n >= 1");
    Int scaled = Int(n) << (2 * frac_bits);
    return HPReal(sqrt(scaled), frac_bits);
}

HPReal hp_log2_ratio(const Nat& M, const Nat& L, unsigned frac_bits) {
    if (L <= 0 || L >= M) throw std::domain_error("hp_log2_ratio: requires 0 < L < M");
    const unsigned G = 3 * frac_bits + 64;  // working bits; squaring amplifies
                                            // errors by < 4 per digit
    // integer part: 2^m <= M/L < 2^(m+1)
    unsigned long long m = 0;
    {
        auto hint = msb(M) - msb(L);
        m = hint > 0 ? static_cast<unsigned long long>(hint) : 0;
        while ((L << (m + 1)) <= M) ++m;
        while (m > 0 && (L << m) > M) --m;
    }
    Int y = (M << G) / (L << m);  // in [2^G, 2^(G+1))
    const Int two = Int(1) << (G + 1);
    Int mant = Int(m) << frac_bits;
    for (unsigned i = 1; i <= frac_bits; ++i) {
        y = (y * y) >> G;
        if (y >= two) {
            y >>= 1;
            mant |= Int(1) << (frac_bits - i);
        }
    }
    return HPReal(mant, frac_bits);
}

namespace {

// cache of 2^(-2^-i), i = 1..F, per precision
const std::vector<Int>& exp2_constants(unsigned frac_bits) {
    static std::mutex mu;
    static std::map<unsigned, std::unique_ptr<std::vector<Int>>> cache;
    std::scoped_lock lock(mu);
    auto& slot = cache[frac_bits];
    if (!slot) {
        auto v = std::make_unique<std::vector<Int>>();
        v->reserve(frac_bits);
        Int c = sqrt(Int(Int(1) << (2 * frac_bits - 1)));  // 2^(-1/2)
        v->push_back(c);
        for (unsigned i = 2; i <= frac_bits; ++i) {
            c = sqrt(Int(c << frac_bits));  // each is the square root of the previous
            v->push_back(c);
        }
        slot = std::move(v);
    }
    return *slot;
}

}  // namespace

HPReal exp2_neg_frac(const Int& frac_mant, unsigned frac_bits) {
    if (frac_mant < 0 || Int(frac_mant >> frac_bits) != 0)
        throw std::domain_error("exp2_neg_frac: argument outside [0,1)");
    if (frac_mant.is_zero()) return HPReal::one(frac_bits);
    const auto& c = exp2_constants(frac_bits);
    Int acc = Int(1) << frac_bits;
    for (unsigned i = 1; i <= frac_bits; ++i) {
        if (bit_test(frac_mant, frac_bits - i)) acc = (acc * c[i - 1]) >> frac_bits;
    }
    return HPReal(acc, frac_bits);
}

double exp2_frac_error(unsigned frac_bits) {
    // each cached constant is within 3.5 ulp of its true value and the
    // product accumulates at most one ulp per factor
    return std::ldexp(5.0 * frac_bits, -static_cast<int>(frac_bits));
}

}  // namespace summability::bignum
