#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "cavmagic/half_integer.hpp"

namespace cavmagic {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact value of the form sign * sqrt(radicand) with a nonnegative rational
/// radicand. Closed under multiplication and division, which is all the
/// angular-momentum algebra needs; converted to double only at the boundary.
struct ExactSqrt {
    int sign = 0;              // -1, 0, +1
    BigRational radicand = 0;  // equals value^2

    bool is_zero() const { return sign == 0; }
    double to_double() const;

    bool operator==(const ExactSqrt&) const = default;

    static ExactSqrt zero() { return {}; }
    /// sign(r) * sqrt(r^2), i.e. the exact rational r itself.
    static ExactSqrt from_rational(const BigRational& r);
    /// sqrt(r) for r >= 0.
    static ExactSqrt sqrt_of(const BigRational& r);

    friend ExactSqrt operator*(const ExactSqrt& a, const ExactSqrt& b);
    friend ExactSqrt operator/(const ExactSqrt& a, const ExactSqrt& b);
    ExactSqrt operator-() const { return {-sign, radicand}; }
};

/// Wigner 3j symbol by the Racah sum formula in exact rational arithmetic.
/// Selection-rule violations (triangle, m1+m2+m3 != 0) give an exact zero;
/// malformed inputs (negative j, |m| > j, parity mismatch between j and m)
/// throw std::domain_error.
ExactSqrt wigner3j(HalfInteger j1, HalfInteger j2, HalfInteger j3,
                   HalfInteger m1, HalfInteger m2, HalfInteger m3);

/// Wigner 6j symbol {j1 j2 j3; j4 j5 j6} by the Racah formula. Triads that
/// violate the triangle rules (or have non-integer perimeter) give an exact
/// zero; negative j throws std::domain_error.
ExactSqrt wigner6j(HalfInteger j1, HalfInteger j2, HalfInteger j3,
                   HalfInteger j4, HalfInteger j5, HalfInteger j6);

}  // namespace cavmagic
