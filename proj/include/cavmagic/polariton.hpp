#pragma once

#include <complex>
#include <vector>

#include "cavmagic/atom_model.hpp"

namespace cavmagic {

/// Cavity and drive parameters of the collective mean-field model. Frequency
/// unit is ordinary MHz with the 2*pi dropped consistently; kappa and the
/// level linewidths are HWHM. Defaults are the experiment's values.
struct CavityDriveParams {
    double kappa_mhz = 4.0;      // cavity HWHM
    double g_mhz = 0.33;         // single-atom coupling, cycling-transition normalized
    double delta_c_mhz = 0.0;    // drive-cavity detuning
    double n_eff = 6.0e4;        // effective atom number
    double eta = 1.0;            // effective y drive amplitude
    double spatial_factor = 1.0; // geometric factor S; default folded into prefactors
    void validate() const;
};

/// Collective polarizability P(w) = -i sum_{F'} <c^2_{F'}> / (w - w_{F'} + i gamma_{F'}),
/// in 1/MHz. Finite for all real w since gamma > 0.
std::complex<double> polarizability(double detuning_mhz, const AveragedStrengths& strengths,
                                    const LevelScheme& scheme);

/// Loss-free response R(w) = sum <c^2>/(w - w_{F'}); the magic frequency is
/// its root. Diverges at the level offsets.
double lossless_response(double detuning_mhz, const AveragedStrengths& strengths,
                         const LevelScheme& scheme);

/// Coherent intracavity photon number of the y mode,
///   |a_y|^2 = eta^2 g^2 S |P|^2 / |i Delta_c - kappa + g^2 N_eff P|^2.
double coherent_photon_number(double detuning_mhz, const CavityDriveParams& params,
                              const AveragedStrengths& strengths, const LevelScheme& scheme);

/// Same with the loss-free polarizability -i R(w); used for checks against
/// the quadratic dip expansion, which is derived in this limit.
double coherent_photon_number_lossless(double detuning_mhz, const CavityDriveParams& params,
                                       const AveragedStrengths& strengths,
                                       const LevelScheme& scheme);

struct MagicFrequency {
    double omega_star_mhz = 0.0;  // root of R between the two highest levels
    double p1_per_mhz2 = 0.0;     // |R'(omega*)| = sum <c^2>/(omega* - w_{F'})^2
    double kappa_eff_mhz = 0.0;   // kappa / (g^2 N_eff p1)
};

/// Dip position observed in the experiment, kept for reporting only; the
/// model computes its own omega*.
inline constexpr double observed_dip_mhz = -185.0;

/// Bracketed bisection for the root of R on the open interval between the
/// two highest levels with nonzero strength, to 1e-6 MHz. Throws
/// std::runtime_error when fewer than two levels carry strength (no root).
MagicFrequency find_magic_frequency(const AveragedStrengths& strengths, const LevelScheme& scheme,
                                    const CavityDriveParams& params = {});

/// Location of the minimum of |P| (with losses) near the magic frequency.
double polarizability_minimum(const AveragedStrengths& strengths, const LevelScheme& scheme);

/// Quadratic dip approximation delta^2 / (kappa_eff^2 + delta^2).
double dip_shape_approx(double delta_mhz, const MagicFrequency& mf);

struct MapTracePoint {
    double at_mhz = 0.0;            // the frequency this trace row belongs to
    double max_position_mhz = 0.0;  // parabola-refined argmax along the other axis
    bool defined = false;
    double prominence = 0.0;        // (max - median)/median along the scanned axis
};

struct Map2dOptions {
    /// Undefined-maximum thresholds on (max - median)/median. The ridge value
    /// is calibrated to reproduce the measured two-branch maxima structure.
    double ridge_threshold = 2.0;
    double diag_threshold = 0.5;
};

/// 2D coherent photon number over (drive, cavity) grids plus the two maxima
/// traces: `ridge` follows the measurement procedure (per cavity frequency,
/// maximum over the drive sweep); `diag` is the transpose (per drive
/// frequency, maximum over cavity), which peaks exactly on the diagonal for
/// N_eff = 0.
struct Map2d {
    std::vector<double> drive_mhz;
    std::vector<double> cavity_mhz;
    std::vector<std::vector<double>> photon_number;  // [drive][cavity]
    std::vector<MapTracePoint> ridge;                // size = cavity grid
    std::vector<MapTracePoint> diag;                 // size = drive grid
};

Map2d map_2d(const std::vector<double>& drive_grid_mhz, const std::vector<double>& cavity_grid_mhz,
             const CavityDriveParams& params, const AveragedStrengths& strengths,
             const LevelScheme& scheme, const Map2dOptions& options = {});

void write_map_matrix_csv(const Map2d& map, const std::string& path);
void write_ridge_trace_csv(const std::vector<MapTracePoint>& trace, const std::string& path);
void write_diag_trace_csv(const std::vector<MapTracePoint>& trace, const std::string& path);

/// Maxima-vs-cavity trace as exchanged on disk (header
/// cavity_mhz,drive_at_max_mhz,defined).
struct MaximaTrace {
    std::vector<double> cavity_mhz;
    std::vector<double> drive_at_max_mhz;  // meaningful when defined
    std::vector<bool> defined;
};

MaximaTrace read_maxima_trace_csv(const std::string& path);

}  // namespace cavmagic
