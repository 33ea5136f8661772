#ifndef SUMMABILITY_HPREAL_HPP
#define SUMMABILITY_HPREAL_HPP

#include <compare>

#include "summability/bignum.hpp"

// Fixed-point binary reals with F fractional bits and provable error bounds.
//
// A value is mantissa * 2^(-F).  Addition and subtraction are exact;
// multiplication, division and right shifts round toward -inf and are off by
// less than one ulp = 2^(-F), so every operation satisfies the documented
// worst-case error of 2^(1-F).

namespace summability::bignum {

class HPReal {
public:
    HPReal() = default;
    HPReal(Int mantissa, unsigned frac_bits)
        : mant_(std::move(mantissa)), fbits_(frac_bits) {}

    static HPReal zero(unsigned frac_bits) { return HPReal(Int(0), frac_bits); }
    static HPReal one(unsigned frac_bits) { return HPReal(Int(1) << frac_bits, frac_bits); }
    static HPReal from_int(const Int& v, unsigned frac_bits);
    // floor(v * 2^F) * 2^(-F); error in [0, 2^-F)
    static HPReal from_rational(const Rational& v, unsigned frac_bits);

    unsigned frac_bits() const { return fbits_; }
    const Int& mantissa() const { return mant_; }
    bool is_zero() const { return mant_.is_zero(); }
    int sign() const { return mant_.sign(); }

    HPReal operator+(const HPReal& o) const;  // exact
    HPReal operator-(const HPReal& o) const;  // exact
    HPReal operator-() const { return HPReal(-mant_, fbits_); }
    HPReal mul(const HPReal& o) const;        // floor rounding, < 1 ulp
    HPReal mul_int(const Int& k) const { return HPReal(mant_ * k, fbits_); }  // exact
    HPReal div_int(const Int& k) const;       // floor rounding, < 1 ulp
    HPReal rshift(unsigned long long m) const;  // value * 2^-m, floor, < 1 ulp

    Int floor() const;           // greatest integer <= value
    Int frac_mantissa() const;   // mantissa of value - floor(value), in [0, 2^F)

    Rational to_rational() const;  // exact
    double to_double() const;      // nearest-ish double, safe for huge mantissas

    std::strong_ordering operator<=>(const HPReal& o) const;
    bool operator==(const HPReal& o) const { return (*this <=> o) == 0; }

private:
    Int mant_ = 0;
    unsigned fbits_ = 0;
};

// floor-exact integer square root of sqrt(n) scaled to F fractional bits;
// |result - sqrt(n)| < 2^(-F).
HPReal hp_sqrt(unsigned n, unsigned frac_bits);

// log2(M/L) for 0 < L < M, via the digit recurrence (repeated squaring of the
// normalized ratio, i.e. bisection in the exponent) carried out at 3F+64
// working bits;  |result - log2(M/L)| <= 2^(1-F).  Exact when M/L is a power
// of two.
HPReal hp_log2_ratio(const Nat& M, const Nat& L, unsigned frac_bits);

// 2^(-x) for x = frac_mant * 2^(-F) in [0,1), as a product of the cached
// constants 2^(-2^-i).  Result lies in (1/2, 1]; error < exp2_frac_error(F).
HPReal exp2_neg_frac(const Int& frac_mant, unsigned frac_bits);

// conservative error bound of exp2_neg_frac at precision F
double exp2_frac_error(unsigned frac_bits);

}  // namespace summability::bignum

#endif
