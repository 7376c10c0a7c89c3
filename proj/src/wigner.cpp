#include "cavmagic/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cavmagic {

namespace {

// by value: callers chain these inside expression templates, and the cache
// vector may reallocate mid-expression
BigInt factorial(int n) {
    static std::vector<BigInt> cache{1, 1};
    if (n < 0) throw std::logic_error("factorial of negative integer");
    while (static_cast<int>(cache.size()) <= n) {
        cache.push_back(cache.back() * static_cast<int>(cache.size()));
    }
    return cache[static_cast<std::size_t>(n)];
}

int parity_sign(int exponent) { return (exponent % 2 == 0) ? 1 : -1; }

void require_valid_pair(HalfInteger j, HalfInteger m, const char* which) {
    if (j.twice() < 0) {
        throw std::domain_error(std::string("wigner: negative magnitude ") + which + " = " + j.str());
    }
    if ((j.twice() - m.twice()) % 2 != 0) {
        throw std::domain_error(std::string("wigner: projection parity mismatch for ") + which +
                                ": j = " + j.str() + ", m = " + m.str());
    }
    if (abs(m).twice() > j.twice()) {
        throw std::domain_error(std::string("wigner: |m| > j for ") + which + ": j = " + j.str() +
                                ", m = " + m.str());
    }
}

bool triangle_ok(HalfInteger a, HalfInteger b, HalfInteger c) {
    if ((a.twice() + b.twice() + c.twice()) % 2 != 0) return false;  // non-integer perimeter
    return c.twice() <= a.twice() + b.twice() && a.twice() <= b.twice() + c.twice() &&
           b.twice() <= c.twice() + a.twice();
}

/// (a+b-c)! (a-b+c)! (-a+b+c)! / (a+b+c+1)! with all arguments in twice-units.
BigRational triangle_coefficient(HalfInteger a, HalfInteger b, HalfInteger c) {
    const int abc = (a.twice() + b.twice() - c.twice()) / 2;
    const int acb = (a.twice() - b.twice() + c.twice()) / 2;
    const int bca = (-a.twice() + b.twice() + c.twice()) / 2;
    const int per = (a.twice() + b.twice() + c.twice()) / 2;
    return BigRational(factorial(abc) * factorial(acb) * factorial(bca), factorial(per + 1));
}

}  // namespace

double ExactSqrt::to_double() const {
    if (sign == 0) return 0.0;
    return static_cast<double>(sign) * std::sqrt(radicand.convert_to<double>());
}

ExactSqrt ExactSqrt::from_rational(const BigRational& r) {
    if (r == 0) return zero();
    return {r > 0 ? 1 : -1, r * r};
}

ExactSqrt ExactSqrt::sqrt_of(const BigRational& r) {
    if (r < 0) throw std::domain_error("ExactSqrt: negative radicand");
    if (r == 0) return zero();
    return {1, r};
}

ExactSqrt operator*(const ExactSqrt& a, const ExactSqrt& b) {
    if (a.sign == 0 || b.sign == 0) return ExactSqrt::zero();
    return {a.sign * b.sign, a.radicand * b.radicand};
}

ExactSqrt operator/(const ExactSqrt& a, const ExactSqrt& b) {
    if (b.sign == 0) throw std::domain_error("ExactSqrt: division by zero");
    if (a.sign == 0) return ExactSqrt::zero();
    return {a.sign * b.sign, a.radicand / b.radicand};
}

ExactSqrt wigner3j(HalfInteger j1, HalfInteger j2, HalfInteger j3,
                   HalfInteger m1, HalfInteger m2, HalfInteger m3) {
    require_valid_pair(j1, m1, "(j1, m1)");
    require_valid_pair(j2, m2, "(j2, m2)");
    require_valid_pair(j3, m3, "(j3, m3)");

    if (m1.twice() + m2.twice() + m3.twice() != 0) return ExactSqrt::zero();
    if (!triangle_ok(j1, j2, j3)) return ExactSqrt::zero();

    // All of the following are integers once the selection rules hold.
    const int j1j2_j3 = (j1.twice() + j2.twice() - j3.twice()) / 2;
    const int j1_m1 = (j1.twice() - m1.twice()) / 2;
    const int j2_m2p = (j2.twice() + m2.twice()) / 2;
    const int t1 = (j3.twice() - j2.twice() + m1.twice()) / 2;  // j3 - j2 + m1
    const int t2 = (j3.twice() - j1.twice() - m2.twice()) / 2;  // j3 - j1 - m2

    const int k_min = std::max({0, -t1, -t2});
    const int k_max = std::min({j1j2_j3, j1_m1, j2_m2p});
    if (k_min > k_max) return ExactSqrt::zero();

    BigRational sum = 0;
    for (int k = k_min; k <= k_max; ++k) {
        BigInt denom = factorial(k) * factorial(j1j2_j3 - k) * factorial(j1_m1 - k) *
                       factorial(j2_m2p - k) * factorial(t1 + k) * factorial(t2 + k);
        sum += BigRational(parity_sign(k), denom);
    }
    if (sum == 0) return ExactSqrt::zero();

    BigRational square = triangle_coefficient(j1, j2, j3);
    square *= BigRational(factorial((j1.twice() + m1.twice()) / 2) * factorial(j1_m1) *
                              factorial(j2_m2p) * factorial((j2.twice() - m2.twice()) / 2) *
                              factorial((j3.twice() + m3.twice()) / 2) *
                              factorial((j3.twice() - m3.twice()) / 2),
                          1);

    const int phase = parity_sign((j1.twice() - j2.twice() - m3.twice()) / 2);
    ExactSqrt result = ExactSqrt::from_rational(sum) * ExactSqrt::sqrt_of(square);
    result.sign *= phase;
    return result;
}

ExactSqrt wigner6j(HalfInteger j1, HalfInteger j2, HalfInteger j3,
                   HalfInteger j4, HalfInteger j5, HalfInteger j6) {
    for (HalfInteger j : {j1, j2, j3, j4, j5, j6}) {
        if (j.twice() < 0) throw std::domain_error("wigner6j: negative magnitude " + j.str());
    }
    if (!triangle_ok(j1, j2, j3) || !triangle_ok(j1, j5, j6) || !triangle_ok(j4, j2, j6) ||
        !triangle_ok(j4, j5, j3)) {
        return ExactSqrt::zero();
    }

    const int s123 = (j1.twice() + j2.twice() + j3.twice()) / 2;
    const int s156 = (j1.twice() + j5.twice() + j6.twice()) / 2;
    const int s426 = (j4.twice() + j2.twice() + j6.twice()) / 2;
    const int s453 = (j4.twice() + j5.twice() + j3.twice()) / 2;
    const int p1245 = (j1.twice() + j2.twice() + j4.twice() + j5.twice()) / 2;
    const int p2356 = (j2.twice() + j3.twice() + j5.twice() + j6.twice()) / 2;
    const int p3164 = (j3.twice() + j1.twice() + j6.twice() + j4.twice()) / 2;

    const int k_min = std::max({s123, s156, s426, s453});
    const int k_max = std::min({p1245, p2356, p3164});
    if (k_min > k_max) return ExactSqrt::zero();

    BigRational sum = 0;
    for (int k = k_min; k <= k_max; ++k) {
        BigInt denom = factorial(k - s123) * factorial(k - s156) * factorial(k - s426) *
                       factorial(k - s453) * factorial(p1245 - k) * factorial(p2356 - k) *
                       factorial(p3164 - k);
        sum += BigRational(parity_sign(k) * factorial(k + 1), denom);
    }
    if (sum == 0) return ExactSqrt::zero();

    BigRational square = triangle_coefficient(j1, j2, j3) * triangle_coefficient(j1, j5, j6) *
                         triangle_coefficient(j4, j2, j6) * triangle_coefficient(j4, j5, j3);
    return ExactSqrt::from_rational(sum) * ExactSqrt::sqrt_of(square);
}

}  // namespace cavmagic
