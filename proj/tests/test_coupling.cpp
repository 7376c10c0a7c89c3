#include <doctest.h>

#include "cavmagic/atom_model.hpp"
#include "cavmagic/coupling.hpp"

using namespace cavmagic;

namespace {
HalfInteger hi(int v) { return HalfInteger::from_int(v); }

const LevelScheme& rb87() { return default_level_scheme(); }
const TransitionTable& table() {
    static const TransitionTable t = coupling_table(rb87());
    return t;
}
// default scheme level order: F'=1, F'=2, F'=3
constexpr std::size_t F1 = 0, F2 = 1, F3 = 2;
}  // namespace

TEST_CASE("cycling transition coefficient is exactly 1") {
    CHECK(table().coefficient(F3, hi(2), hi(3)) == 1.0);
    const ExactSqrt exact = coupling_coefficient_exact(rb87(), F3, hi(2), hi(3));
    CHECK(exact.sign == 1);
    CHECK(exact.radicand == BigRational(1));
}

TEST_CASE("dipole selection rule: |m' - m| >= 2 vanishes") {
    for (std::size_t e : {F1, F2, F3}) {
        for (int m = -2; m <= 2; ++m) {
            CHECK(table().coefficient(e, hi(m), hi(m + 2)) == 0.0);
            CHECK(table().coefficient(e, hi(m), hi(m - 3)) == 0.0);
        }
    }
}

TEST_CASE("frozen exact coefficients for the Rb87 D2 F=2 manifold") {
    // independently derived with exact angular-momentum algebra
    const auto sq = [](std::size_t e, int m, int mp) {
        return coupling_coefficient_exact(rb87(), e, hi(m), hi(mp));
    };
    CHECK(sq(F3, 2, 2) == ExactSqrt{-1, BigRational(1, 3)});
    CHECK(sq(F3, 2, 1) == ExactSqrt{1, BigRational(1, 15)});
    CHECK(sq(F3, 1, 1) == ExactSqrt{-1, BigRational(8, 15)});
    CHECK(sq(F3, 0, 0) == ExactSqrt{-1, BigRational(3, 5)});
    CHECK(sq(F3, 0, 1) == ExactSqrt{1, BigRational(2, 5)});
    CHECK(sq(F3, -1, -2) == ExactSqrt{1, BigRational(2, 3)});
    CHECK(sq(F2, 2, 2) == ExactSqrt{1, BigRational(1, 3)});
    CHECK(sq(F2, 2, 1) == ExactSqrt{-1, BigRational(1, 6)});
    CHECK(sq(F2, 1, 1) == ExactSqrt{1, BigRational(1, 12)});
    CHECK(sq(F2, 0, 0) == ExactSqrt::zero());
    CHECK(sq(F2, 0, 1) == ExactSqrt{1, BigRational(1, 4)});
    CHECK(sq(F2, 0, -1) == ExactSqrt{-1, BigRational(1, 4)});
    CHECK(sq(F1, 2, 1) == ExactSqrt{1, BigRational(1, 10)});
    CHECK(sq(F1, 0, 0) == ExactSqrt{1, BigRational(1, 15)});
    CHECK(sq(F1, 0, 1) == ExactSqrt{1, BigRational(1, 60)});
}

TEST_CASE("per-m total strength is m-independent, exactly 2 in this normalization") {
    BigRational expected(2);
    for (int m = -2; m <= 2; ++m) {
        BigRational total = 0;
        for (std::size_t e : {F1, F2, F3}) {
            for (int mp = m - 1; mp <= m + 1; ++mp) {
                if (std::abs(mp) > static_cast<int>(e) + 1) continue;
                total += coupling_coefficient_exact(rb87(), e, hi(m), hi(mp)).radicand;
            }
        }
        CHECK(total == expected);
        CHECK(table().total_strength(hi(m)) == doctest::Approx(2.0).epsilon(1e-14));
    }
}

TEST_CASE("sign reflection c(F';-m,-m') = (-1)^(F+F'+1) c(F';m,m')") {
    const int phases[] = {+1, -1, +1};  // F'=1,2,3 with F=2
    for (std::size_t e : {F1, F2, F3}) {
        for (int m = -2; m <= 2; ++m) {
            for (int mp = m - 1; mp <= m + 1; ++mp) {
                const double c = table().coefficient(e, hi(m), hi(mp));
                const double r = table().coefficient(e, hi(-m), hi(-mp));
                CHECK(r == doctest::Approx(phases[e] * c).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("table is complete: every allowed pair appears with a finite value") {
    for (std::size_t e : {F1, F2, F3}) {
        const int fp = static_cast<int>(e) + 1;
        for (int m = -2; m <= 2; ++m) {
            for (int mp = std::max(m - 1, -fp); mp <= std::min(m + 1, fp); ++mp) {
                const double c = table().coefficient(e, hi(m), hi(mp));
                CHECK(std::isfinite(c));
                CHECK(c * c <= 1.0 + 1e-14);
            }
        }
    }
}

TEST_CASE("F' outside the dipole-allowed range is flagged, not silently zeroed") {
    LevelScheme scheme = rb87();
    scheme.levels.insert(scheme.levels.begin(),
                         ExcitedLevel{HalfInteger::from_int(4), -600.0, 3.0});
    const TransitionTable t = coupling_table(scheme);
    REQUIRE(t.rejected_levels().size() == 1);
    CHECK(t.rejected_levels()[0] == "F'=4");
    for (int m = -2; m <= 2; ++m) {
        for (int q = -1; q <= 1; ++q) CHECK(t.coefficient(0, hi(m), hi(m + q)) == 0.0);
    }
}

TEST_CASE("scheme without the cycling transition cannot be normalized") {
    LevelScheme scheme = rb87();
    scheme.levels.pop_back();  // drop F'=3
    CHECK_THROWS_AS(coupling_table(scheme), std::runtime_error);
}
