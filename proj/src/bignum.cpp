#include "summability/bignum.hpp"

#include <cmath>
#include <stdexcept>

namespace summability::bignum {

Nat factorial(unsigned n) {
    Nat r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

Nat dsum(unsigned k) {
    if (k == 0) throw std::domain_error("dsum: defined for k >= 1 only");
    Nat f = 1, s = 0;
    for (unsigned i = 1; i <= k; ++i) {
        f *= i;
        s += f;
    }
    return s;
}

Rational factorial_ratio_prev(unsigned n) {
    if (n < 2) throw std::domain_error("factorial_ratio_prev: requires n >= 2");
    return Rational(dsum(n - 1), factorial(n));
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("rational_from_double: non-finite input");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
    // 53 doublings make the mantissa integral
    Int num = Int(std::ldexp(m, 53));
    exp -= 53;
    Rational r(num);
    if (exp >= 0) {
        r *= Rational(Int(1) << exp);
    } else {
        r /= Rational(Int(1) << -exp);
    }
    return r;
}

double rational_to_double(const Rational& r) {
    return r.convert_to<double>();
}

}  // namespace summability::bignum
