#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cavmagic/polariton.hpp"
#include "cavmagic/scattering.hpp"
#include "cavmagic/spectrum.hpp"

namespace cavmagic {

struct FitResult {
    std::map<std::string, double> parameters;
    double residual = 0.0;  // sum of squared (weighted) residuals
    std::size_t n_points = 0;
    bool converged = false;
    std::string weighting;  // "1/sigma^2" or "uniform"
    std::map<std::string, std::string> input_checksums;  // filled by callers that know files

    std::string to_json() const;
};

struct FitWindow {
    double lo_mhz;
    double hi_mhz;
};

/// Closed-form weighted least squares for the single multiplicative scale:
/// prefactor = sum(w d m) / sum(w m^2) over the window, model linearly
/// interpolated onto the data grid. Throws when the window selects no data
/// or reaches outside the model grid.
FitResult fit_prefactor(const Spectrum& model, const Spectrum& data, FitWindow window,
                        Polarization channel = Polarization::y);

struct DipFitConfig {
    CavityDriveParams fixed;  // n_eff ignored; all other fields held fixed
    double neff_lo = 1.0e3;
    double neff_hi = 1.0e6;
    double freq_offset_bound_mhz = 15.0;
    std::vector<double> neff_starts = {1.0e3, 1.0e4, 1.0e5};
    double tolerance = 1.0e-8;  // relative parameter change
    std::size_t max_iterations = 10000;
};

/// Fits (prefactor, n_eff, freq_offset_mhz) of the collective dip to the
/// y-channel of `data` by Nelder-Mead over (log10 n_eff, freq_offset) with
/// the prefactor profiled out in closed form; multi-start over the
/// documented n_eff grid, minimum residual wins, ties broken toward lower
/// n_eff. Never throws on non-convergence: converged=false instead.
FitResult fit_dip(const Spectrum& data, const DipFitConfig& config,
                  const AveragedStrengths& strengths, const LevelScheme& scheme);

struct TraceFitConfig {
    CavityDriveParams fixed;  // n_eff ignored
    double neff_lo = 1.0e3;
    double neff_hi = 1.0e6;
    Map2dOptions map_options;
    /// Drive sweep used to recompute model maxima; defaults to the trace's
    /// cavity grid (the map emits square windows by default).
    std::optional<std::vector<double>> drive_grid_mhz;
};

/// Least squares of model maxima positions (ridge of map_2d) against the
/// measured trace, over n_eff alone; deterministic two-stage logarithmic
/// grid scan. Throws when fewer than 5 defined points are available.
FitResult fit_maxima_trace(const MaximaTrace& trace, const TraceFitConfig& config,
                           const AveragedStrengths& strengths, const LevelScheme& scheme);

}  // namespace cavmagic
