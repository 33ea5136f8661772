#ifndef SUMMABILITY_BIGNUM_HPP
#define SUMMABILITY_BIGNUM_HPP

#include <boost/multiprecision/cpp_int.hpp>

// Exact arithmetic kernel: arbitrary-size integers, reduced rationals and
// the factorial machinery used by the block-sequence boundary generators.

namespace summability::bignum {

using Int = boost::multiprecision::cpp_int;
// Nonnegative by contract of every operation that produces one.
using Nat = boost::multiprecision::cpp_int;
// Always stored reduced to lowest terms with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

// n!  (n is a machine word on purpose: every schedule in this toolkit stays
// far below n = 64, while the result is an arbitrary-size integer)
Nat factorial(unsigned n);

// D(k) = sum_{i=1}^{k} i!   Throws std::domain_error for k = 0.
Nat dsum(unsigned k);

// (sum_{i=1}^{n-1} i!) / n!  exactly, reduced.  Requires n >= 2.
// Tends to 0; bounded above by (n-2)(n-2)!/n! + 1/n.
Rational factorial_ratio_prev(unsigned n);

// Exact conversion of a (finite) double; doubles are dyadic rationals.
Rational rational_from_double(double x);

double rational_to_double(const Rational& r);

}  // namespace summability::bignum

#endif
