#include <doctest.h>

#include "cavmagic/wigner.hpp"
#include "wigner_oracle.hpp"

using cavmagic::BigRational;
using cavmagic::ExactSqrt;
using cavmagic::HalfInteger;
using cavmagic::wigner3j;
using cavmagic::wigner6j;

namespace {
HalfInteger h2(int twice) { return HalfInteger::from_twice(twice); }
HalfInteger hi(int v) { return HalfInteger::from_int(v); }
}  // namespace

TEST_CASE("3j selection rules give exact zeros") {
    CHECK(wigner3j(hi(1), hi(1), hi(1), hi(1), hi(-1), hi(1)).is_zero());  // m-sum != 0
    CHECK(wigner3j(hi(1), hi(1), hi(3), hi(0), hi(0), hi(0)).is_zero());   // triangle
    CHECK(wigner3j(h2(1), h2(1), h2(1), h2(1), h2(1), h2(-1)).is_zero()); // half-int perimeter
}

TEST_CASE("3j frozen value (1/2 1/2 1 | 1/2 1/2 -1)") {
    // oracle value: -1/sqrt(3)
    const ExactSqrt v = wigner3j(h2(1), h2(1), hi(1), h2(1), h2(1), hi(-1));
    CHECK(v.sign == -1);
    CHECK(v.radicand == BigRational(1, 3));
    const auto o = wigner_oracle::wigner3j(1, 1, 2, 1, 1, -2);
    CHECK(v.to_double() == o.to_double());
}

TEST_CASE("3j even-permutation invariance") {
    for (int tm1 = -2; tm1 <= 2; tm1 += 2) {
        for (int tm2 = -4; tm2 <= 4; tm2 += 2) {
            const int tm3 = -tm1 - tm2;
            if (std::abs(tm3) > 6) continue;
            const ExactSqrt a = wigner3j(hi(1), hi(2), hi(3), h2(tm1), h2(tm2), h2(tm3));
            const ExactSqrt b = wigner3j(hi(2), hi(3), hi(1), h2(tm2), h2(tm3), h2(tm1));
            CHECK(a == b);
        }
    }
}

TEST_CASE("3j odd permutation picks up the triad phase") {
    // (j1 j2 j3; m1 m2 m3) = (-1)^(j1+j2+j3) (j2 j1 j3; m2 m1 m3), swept over
    // every valid projection of a half-integer triad
    const HalfInteger j1 = h2(3), j2 = h2(4), j3 = h2(5);
    const int phase = ((j1.twice() + j2.twice() + j3.twice()) / 2) % 2 == 0 ? 1 : -1;
    for (int tm1 = -3; tm1 <= 3; tm1 += 2) {
        for (int tm2 = -4; tm2 <= 4; tm2 += 2) {
            const int tm3 = -tm1 - tm2;
            if (std::abs(tm3) > 5) continue;
            const ExactSqrt a = wigner3j(j1, j2, j3, h2(tm1), h2(tm2), h2(tm3));
            ExactSqrt b = wigner3j(j2, j1, j3, h2(tm2), h2(tm1), h2(tm3));
            b.sign *= phase;
            CHECK(a == b);
        }
    }
}

TEST_CASE("3j malformed inputs throw") {
    CHECK_THROWS_AS(wigner3j(h2(1), hi(1), hi(1), hi(0), hi(0), hi(0)), std::domain_error);
    CHECK_THROWS_AS(wigner3j(hi(1), hi(1), hi(1), hi(2), hi(-1), hi(-1)), std::domain_error);
    CHECK_THROWS_AS(wigner3j(h2(-2), hi(1), hi(1), hi(0), hi(0), hi(0)), std::domain_error);
}

TEST_CASE("6j frozen value {1/2 1/2 1; 1/2 1/2 1} = 1/6") {
    const ExactSqrt v = wigner6j(h2(1), h2(1), hi(1), h2(1), h2(1), hi(1));
    CHECK(v.sign == 1);
    CHECK(v.radicand == BigRational(1, 36));
}

TEST_CASE("6j triangle violations give exact zeros") {
    CHECK(wigner6j(hi(1), hi(1), hi(3), hi(1), hi(1), hi(1)).is_zero());
    CHECK(wigner6j(h2(1), h2(1), h2(1), h2(1), h2(1), h2(1)).is_zero());  // odd perimeters
}

TEST_CASE("6j negative magnitude throws") {
    CHECK_THROWS_AS(wigner6j(h2(-1), hi(1), hi(1), hi(1), hi(1), hi(1)), std::domain_error);
}

TEST_CASE("6j column permutation invariance on a valid input") {
    const ExactSqrt a = wigner6j(hi(1), hi(2), hi(2), hi(1), hi(2), hi(2));
    const ExactSqrt b = wigner6j(hi(2), hi(1), hi(2), hi(2), hi(1), hi(2));
    const ExactSqrt c = wigner6j(hi(2), hi(2), hi(1), hi(2), hi(2), hi(1));
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("3j matches the independent oracle over small arguments") {
    for (int tj1 = 0; tj1 <= 4; ++tj1) {
        for (int tj2 = 0; tj2 <= 4; ++tj2) {
            for (int tj3 = 0; tj3 <= 4; ++tj3) {
                for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
                    for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
                        const int tm3 = -tm1 - tm2;
                        if (std::abs(tm3) > tj3 || (tj3 - tm3) % 2 != 0) continue;
                        const ExactSqrt v =
                            wigner3j(h2(tj1), h2(tj2), h2(tj3), h2(tm1), h2(tm2), h2(tm3));
                        const auto o = wigner_oracle::wigner3j(tj1, tj2, tj3, tm1, tm2, tm3);
                        CHECK(v.sign == o.sgn);
                        CHECK(v.radicand == o.square);
                    }
                }
            }
        }
    }
}

TEST_CASE("6j matches the independent oracle over small arguments") {
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            for (int c = 0; c <= 3; ++c)
                for (int d = 0; d <= 3; ++d)
                    for (int e = 0; e <= 3; ++e)
                        for (int f = 0; f <= 3; ++f) {
                            const ExactSqrt v = wigner6j(h2(a), h2(b), h2(c), h2(d), h2(e), h2(f));
                            const auto o = wigner_oracle::wigner6j(a, b, c, d, e, f);
                            CHECK(v.sign == o.sgn);
                            CHECK(v.radicand == o.square);
                        }
}
