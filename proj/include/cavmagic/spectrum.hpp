#pragma once

#include <string>
#include <vector>

namespace cavmagic {

/// Polarization-resolved rates over a drive-detuning grid. Also the CSV
/// exchange format for measured data:
///   detuning_mhz,rate_y,rate_z[,sigma_y,sigma_z]
struct Spectrum {
    std::vector<double> detuning_mhz;
    std::vector<double> rate_y;
    std::vector<double> rate_z;
    std::vector<double> sigma_y;  // empty, or same length as the grid
    std::vector<double> sigma_z;

    bool has_sigma() const { return !sigma_y.empty(); }
    std::size_t size() const { return detuning_mhz.size(); }

    /// Grid strictly increasing, columns equal length, rates nonnegative.
    void validate() const;
};

/// Strictly increasing grid from lo to hi inclusive with the given step.
std::vector<double> make_grid(double lo_mhz, double hi_mhz, double step_mhz);

void write_spectrum_csv(const Spectrum& spectrum, const std::string& path);
Spectrum read_spectrum_csv(const std::string& path);

}  // namespace cavmagic
