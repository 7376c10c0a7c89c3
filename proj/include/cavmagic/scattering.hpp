#pragma once

#include <complex>
#include <vector>

#include "cavmagic/atom_model.hpp"
#include "cavmagic/coupling.hpp"
#include "cavmagic/spectrum.hpp"

namespace cavmagic {

enum class Polarization { y, z };

/// Effective drive amplitudes of the two circular beams and the overall
/// multiplicative scale of emitted rates. Amplitudes default to the
/// counterpropagating balanced configuration.
struct DriveParams {
    double eta_plus = 1.0;
    double eta_minus = 1.0;
    double prefactor = 1.0;
    void validate() const;
};

/// Two-photon scattering amplitude from |F,m> into the y- or z-polarized
/// mode with sublevel change delta_m, summing all intermediate (F', m')
/// paths:
///   S = sum_{F'} [cavity coefficient] [drive coefficient] / (w - w_{F'} + i gamma_{F'})
/// The atom sits at a field antinode (position phases dropped; they do not
/// affect single-atom rates), and a global phase common to all paths of a
/// channel is omitted. Combinations with no two-photon path give exactly 0.
std::complex<double> scattering_amplitude(HalfInteger m, int delta_m, Polarization pol,
                                          double detuning_mhz, const LevelScheme& scheme,
                                          const TransitionTable& table,
                                          const DriveParams& drive = {});

/// W_{m;pol} = sum over delta_m of |S|^2 (delta_m in {+-1} for z, {0,+-2} for y).
double scattering_rate(HalfInteger m, Polarization pol, double detuning_mhz,
                       const LevelScheme& scheme, const TransitionTable& table,
                       const DriveParams& drive = {});

/// Zeeman-averaged polarization-resolved rates over a detuning grid, scaled
/// by DriveParams::prefactor. Rayleigh components from different sublevels
/// are summed as rates.
Spectrum averaged_spectrum(const ZeemanDistribution& dist, const std::vector<double>& grid_mhz,
                           const LevelScheme& scheme, const TransitionTable& table,
                           const DriveParams& drive = {});

}  // namespace cavmagic
