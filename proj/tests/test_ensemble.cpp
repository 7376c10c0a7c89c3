#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "cavmagic/ensemble.hpp"

using namespace cavmagic;

TEST_CASE("identical (n, geometry, seed) give identical clouds") {
    const auto a = sample_cloud(5000, CloudGeometry::uniform(), 42);
    const auto b = sample_cloud(5000, CloudGeometry::uniform(), 42);
    CHECK(a.phase_x_rad == b.phase_x_rad);
    CHECK(a.phase_z_rad == b.phase_z_rad);
    const auto c = sample_cloud(5000, CloudGeometry::uniform(), 43);
    CHECK(a.phase_x_rad != c.phase_x_rad);
    CHECK(a.rng_name == "mt19937_64");
}

TEST_CASE("empty cloud is an error") {
    CHECK_THROWS_AS(sample_cloud(0, CloudGeometry::uniform(), 1), std::invalid_argument);
}

TEST_CASE("single atom at the double antinode") {
    const auto cloud = sample_cloud(1, CloudGeometry::explicit_phases({{0.0, 0.0}}), 0);
    CHECK(effective_atom_number(cloud) == 1.0);
    CHECK(spatial_factor(cloud) == 1.0);
}

TEST_CASE("two atoms half a wavelength apart interfere destructively") {
    const auto cloud = sample_cloud(
        2, CloudGeometry::explicit_phases({{0.0, 0.0}, {3.14159265358979323846, 0.0}}), 0);
    CHECK(spatial_factor(cloud) == doctest::Approx(0.0).epsilon(1e-24));
    CHECK(effective_atom_number(cloud) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("atoms at field nodes do not couple") {
    const auto cloud = sample_cloud(
        2, CloudGeometry::explicit_phases({{1.5707963267948966, 0.0}, {1.5707963267948966, 0.0}}),
        0);
    CHECK(effective_atom_number(cloud) == doctest::Approx(0.0).epsilon(1e-24));
}

TEST_CASE("uniform phases: mean cos^2 near 1/2, N_eff near N/2") {
    const std::size_t n = 100000;
    const auto cloud = sample_cloud(n, CloudGeometry::uniform(), 7);
    const double neff = effective_atom_number(cloud);
    CHECK(neff / static_cast<double>(n) == doctest::Approx(0.5).epsilon(0.01));
    // 3 sigma window with sigma = sqrt(n/8)
    CHECK(std::abs(neff - 0.5 * static_cast<double>(n)) <= 3.0 * std::sqrt(n / 8.0));
}

TEST_CASE("bounds: 0 <= N_eff <= N and 0 <= S <= N^2") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        const auto cloud = sample_cloud(300, CloudGeometry::uniform(), seed);
        const double neff = effective_atom_number(cloud);
        const double s = spatial_factor(cloud);
        CHECK(neff >= 0.0);
        CHECK(neff <= 300.0);
        CHECK(s >= 0.0);
        CHECK(s <= 300.0 * 300.0);
    }
}

TEST_CASE("ensemble mean of S is N/4 for uniform clouds") {
    const std::size_t n = 10000;
    double mean = 0.0;
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s) {
        mean += spatial_factor(sample_cloud(n, CloudGeometry::uniform(),
                                            static_cast<std::uint64_t>(s) + 1));
    }
    mean /= seeds;
    CHECK(mean == doctest::Approx(static_cast<double>(n) / 4.0).epsilon(0.10));
}

TEST_CASE("sub-wavelength boxes restrict the phases") {
    const auto cloud = sample_cloud(2000, CloudGeometry::uniform(0.25, 0.25), 11);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        CHECK(cloud.phase_x_rad[i] >= 0.0);
        CHECK(cloud.phase_x_rad[i] < 1.5707963267948966 + 1e-12);
    }
}

TEST_CASE("cloud csv round trip") {
    const auto cloud = sample_cloud(64, CloudGeometry::uniform(), 99);
    const std::string path = "cavmagic_test_cloud.csv";
    write_cloud_csv(cloud, path);
    const auto back = read_cloud_csv(path);
    CHECK(back.phase_x_rad == cloud.phase_x_rad);
    CHECK(back.phase_z_rad == cloud.phase_z_rad);
    std::remove(path.c_str());
}
