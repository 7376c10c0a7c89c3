#include "cavmagic/ensemble.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cavmagic {

namespace {
constexpr double two_pi = 6.28318530717958647692;

/// Uniform double in [0, 1) from the full 64-bit output; this mapping is
/// pinned here because std::uniform_real_distribution is not
/// platform-reproducible.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
}  // namespace

CloudGeometry CloudGeometry::uniform(double extent_x, double extent_z) {
    if (!(extent_x > 0.0) || !(extent_z > 0.0)) {
        throw std::invalid_argument("geometry: box extents must be positive");
    }
    CloudGeometry g;
    g.kind = Kind::uniform_box;
    g.extent_x_wavelengths = extent_x;
    g.extent_z_wavelengths = extent_z;
    return g;
}

CloudGeometry CloudGeometry::explicit_phases(std::vector<std::array<double, 2>> phases) {
    CloudGeometry g;
    g.kind = Kind::explicit_list;
    g.phases = std::move(phases);
    return g;
}

std::string CloudGeometry::describe() const {
    if (kind == Kind::explicit_list) {
        return "explicit:" + std::to_string(phases.size());
    }
    std::ostringstream os;
    os << "uniform_box:" << extent_x_wavelengths << "x" << extent_z_wavelengths << "_wavelengths";
    return os.str();
}

AtomCloud sample_cloud(std::size_t n, const CloudGeometry& geometry, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("sample_cloud: need at least one atom");

    AtomCloud cloud;
    cloud.seed = seed;
    cloud.geometry = geometry.describe();
    cloud.rng_name = "mt19937_64";
    cloud.phase_x_rad.reserve(n);
    cloud.phase_z_rad.reserve(n);

    if (geometry.kind == CloudGeometry::Kind::explicit_list) {
        if (geometry.phases.size() != n) {
            throw std::invalid_argument("sample_cloud: explicit geometry size mismatch");
        }
        for (const auto& p : geometry.phases) {
            if (!std::isfinite(p[0]) || !std::isfinite(p[1])) {
                throw std::invalid_argument("sample_cloud: non-finite phase");
            }
            cloud.phase_x_rad.push_back(p[0]);
            cloud.phase_z_rad.push_back(p[1]);
        }
        return cloud;
    }

    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const double px = std::fmod(two_pi * geometry.extent_x_wavelengths * uniform01(rng), two_pi);
        const double pz = std::fmod(two_pi * geometry.extent_z_wavelengths * uniform01(rng), two_pi);
        cloud.phase_x_rad.push_back(px);
        cloud.phase_z_rad.push_back(pz);
    }
    return cloud;
}

double effective_atom_number(const AtomCloud& cloud) {
    double sum = 0.0;
    for (double p : cloud.phase_x_rad) {
        const double c = std::cos(p);
        sum += c * c;
    }
    return sum;
}

double spatial_factor(const AtomCloud& cloud) {
    double amp = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        amp += std::cos(cloud.phase_x_rad[i]) * std::cos(cloud.phase_z_rad[i]);
    }
    return amp * amp;
}

void write_cloud_csv(const AtomCloud& cloud, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cloud csv: cannot write '" + path + "'");
    out << "phase_x_rad,phase_z_rad\n";
    char buf[80];
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", cloud.phase_x_rad[i],
                      cloud.phase_z_rad[i]);
        out << buf;
    }
}

AtomCloud read_cloud_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cloud csv: cannot open '" + path + "'");
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("cloud csv: empty file " + path);
    if (header != "phase_x_rad,phase_z_rad") {
        throw std::runtime_error("cloud csv: unexpected header '" + header + "' in " + path);
    }
    AtomCloud cloud;
    cloud.geometry = "file:" + path;
    cloud.rng_name = "none";
    std::string line;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::runtime_error("cloud csv: missing column at row " + std::to_string(row));
        }
        try {
            cloud.phase_x_rad.push_back(std::stod(line.substr(0, comma)));
            cloud.phase_z_rad.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw std::runtime_error("cloud csv: bad value at row " + std::to_string(row));
        }
    }
    if (cloud.size() == 0) throw std::runtime_error("cloud csv: no atoms in " + path);
    return cloud;
}

}  // namespace cavmagic
