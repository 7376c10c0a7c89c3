#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace cavmagic {

/// Sampling geometry for atom positions. Only the mode phases k_c x and k z
/// enter any observable, so positions are stored directly as phases.
struct CloudGeometry {
    enum class Kind { uniform_box, explicit_list };
    Kind kind = Kind::uniform_box;
    double extent_x_wavelengths = 100.0;
    double extent_z_wavelengths = 100.0;
    std::vector<std::array<double, 2>> phases;  // explicit_list only

    static CloudGeometry uniform(double extent_x = 100.0, double extent_z = 100.0);
    static CloudGeometry explicit_phases(std::vector<std::array<double, 2>> phases);
    std::string describe() const;
};

struct AtomCloud {
    std::vector<double> phase_x_rad;
    std::vector<double> phase_z_rad;
    std::uint64_t seed = 0;
    std::string geometry;
    std::string rng_name;  // recorded in run metadata

    std::size_t size() const { return phase_x_rad.size(); }
};

/// Deterministic sampling: identical (n, geometry, seed) give identical
/// clouds on every platform (mt19937_64 with an explicit 53-bit mapping).
AtomCloud sample_cloud(std::size_t n, const CloudGeometry& geometry, std::uint64_t seed);

/// N_eff = sum_a cos^2(k_c x_a).
double effective_atom_number(const AtomCloud& cloud);

/// S = |sum_a cos(k_c x_a) cos(k z_a)|^2.
double spatial_factor(const AtomCloud& cloud);

void write_cloud_csv(const AtomCloud& cloud, const std::string& path);
AtomCloud read_cloud_csv(const std::string& path);

}  // namespace cavmagic
