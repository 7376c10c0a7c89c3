#include <doctest.h>

#include <cmath>

#include "cavmagic/atom_model.hpp"
#include "cavmagic/coupling.hpp"
#include "cavmagic/polariton.hpp"

using namespace cavmagic;

namespace {
HalfInteger hi(int v) { return HalfInteger::from_int(v); }
}

TEST_CASE("default document: three excited levels, reference F'=3 at zero offset") {
    const LevelScheme& s = default_level_scheme();
    REQUIRE(s.num_levels() == 3);
    CHECK(s.ground_f == hi(2));
    CHECK(s.levels[0].f == hi(1));
    CHECK(s.levels[1].f == hi(2));
    CHECK(s.levels[2].f == hi(3));
    CHECK(s.levels[2].omega_offset_mhz == 0.0);
    CHECK(s.reference_index() == 2);
    for (const auto& lv : s.levels) CHECK(lv.gamma_mhz == doctest::Approx(3.0333));
    // splittings from the cited line-data tables
    CHECK(s.levels[1].omega_offset_mhz == doctest::Approx(-266.650));
    CHECK(s.levels[0].omega_offset_mhz == doctest::Approx(-423.597));
    CHECK_FALSE(s.references.empty());
}

TEST_CASE("document omitting gamma names the level") {
    const std::string doc = R"({
        "reference_transition": "F=2 <-> F'=3",
        "ground_F": 2, "J_ground": 0.5, "J_excited": 1.5, "nuclear_I": 1.5,
        "excited_levels": [
            {"F": 2, "omega_offset_mhz": -266.65, "gamma_mhz": 3.0},
            {"F": 3, "omega_offset_mhz": 0.0}
        ]})";
    CHECK_THROWS_WITH_AS(parse_level_scheme(doc), "level scheme: missing gamma_mhz for F'=3",
                         std::runtime_error);
}

TEST_CASE("duplicate F' entries are rejected") {
    const std::string doc = R"({
        "reference_transition": "x",
        "ground_F": 2, "J_ground": 0.5, "J_excited": 1.5, "nuclear_I": 1.5,
        "excited_levels": [
            {"F": 2, "omega_offset_mhz": -266.65, "gamma_mhz": 3.0},
            {"F": 2, "omega_offset_mhz": -100.0, "gamma_mhz": 3.0},
            {"F": 3, "omega_offset_mhz": 0.0, "gamma_mhz": 3.0}
        ]})";
    CHECK_THROWS_WITH_AS(parse_level_scheme(doc), "level scheme: duplicate level F'=2",
                         std::runtime_error);
}

TEST_CASE("non-positive linewidth is rejected") {
    LevelScheme s = default_level_scheme();
    s.levels[1].gamma_mhz = 0.0;
    CHECK_THROWS_AS(s.validate(), std::runtime_error);
}

TEST_CASE("Zeeman distribution validation") {
    CHECK_THROWS_AS(ZeemanDistribution(hi(2), {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(ZeemanDistribution(hi(2), {0.3, 0.3, 0.3, 0.3, 0.3}), std::invalid_argument);
    CHECK_THROWS_AS(ZeemanDistribution(hi(2), {-0.1, 0.3, 0.3, 0.3, 0.2}), std::invalid_argument);
    const auto u = ZeemanDistribution::uniform(hi(2));
    CHECK(u.population(hi(0)) == doctest::Approx(0.2));
    const auto d = ZeemanDistribution::delta(hi(2), hi(2));
    CHECK(d.population(hi(2)) == 1.0);
    CHECK(d.population(hi(1)) == 0.0);
    CHECK_THROWS_AS(ZeemanDistribution::delta(hi(2), hi(3)), std::invalid_argument);
}

TEST_CASE("uniform sigma-averaged strengths are {1/30, 1/6, 7/15}") {
    const auto& scheme = default_level_scheme();
    const auto tab = coupling_table(scheme);
    const auto avg = zeeman_average(tab, ZeemanDistribution::uniform(hi(2)));
    REQUIRE(avg.c2.size() == 3);
    CHECK(avg.c2[0] == doctest::Approx(1.0 / 30.0).epsilon(1e-13));
    CHECK(avg.c2[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    CHECK(avg.c2[2] == doctest::Approx(7.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("delta distribution collapses the average to one sublevel") {
    const auto& scheme = default_level_scheme();
    const auto tab = coupling_table(scheme);
    const auto avg = zeeman_average(tab, ZeemanDistribution::delta(hi(2), hi(2)));
    // 1/2 (c^2_{F';2,1} + c^2_{F';2,3})
    CHECK(avg.c2[0] == doctest::Approx(0.5 * (1.0 / 10.0)).epsilon(1e-13));
    CHECK(avg.c2[1] == doctest::Approx(0.5 * (1.0 / 6.0)).epsilon(1e-13));
    CHECK(avg.c2[2] == doctest::Approx(0.5 * (1.0 / 15.0 + 1.0)).epsilon(1e-13));
}

TEST_CASE("zeeman_average is linear in the distribution") {
    const auto& scheme = default_level_scheme();
    const auto tab = coupling_table(scheme);
    const auto a = ZeemanDistribution::delta(hi(2), hi(1));
    const auto b = ZeemanDistribution::delta(hi(2), hi(-2));
    const auto mix = ZeemanDistribution(hi(2), {0.7, 0.0, 0.0, 0.3, 0.0});
    const auto va = zeeman_average(tab, a);
    const auto vb = zeeman_average(tab, b);
    const auto vm = zeeman_average(tab, mix);
    for (std::size_t e = 0; e < 3; ++e) {
        CHECK(vm.c2[e] == doctest::Approx(0.3 * va.c2[e] + 0.7 * vb.c2[e]).epsilon(1e-13));
    }
}

TEST_CASE("uniform average is invariant under sublevel permutations") {
    const auto& scheme = default_level_scheme();
    const auto tab = coupling_table(scheme);
    // permuting equal populations changes nothing by construction; check the
    // mirror distribution explicitly
    const auto u = zeeman_average(tab, ZeemanDistribution::uniform(hi(2)));
    const auto p = zeeman_average(tab, ZeemanDistribution(hi(2), {0.2, 0.2, 0.2, 0.2, 0.2}));
    for (std::size_t e = 0; e < 3; ++e) CHECK(u.c2[e] == p.c2[e]);
}

TEST_CASE("scaling all strengths leaves the lossless root unchanged") {
    const auto& scheme = default_level_scheme();
    const auto tab = coupling_table(scheme);
    auto avg = zeeman_average(tab, ZeemanDistribution::uniform(hi(2)));
    const double root1 = find_magic_frequency(avg, scheme).omega_star_mhz;
    for (double& v : avg.c2) v *= 7.3;  // lambda^2 rescale of every c
    const double root2 = find_magic_frequency(avg, scheme).omega_star_mhz;
    CHECK(root1 == doctest::Approx(root2).epsilon(1e-9));
}

TEST_CASE("mismatched F between table and distribution is an error") {
    const auto tab = coupling_table(default_level_scheme());
    CHECK_THROWS_AS(zeeman_average(tab, ZeemanDistribution::uniform(hi(1))),
                    std::invalid_argument);
}
