#include "cavmagic/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace cavmagic {

std::string FitResult::to_json() const {
    nlohmann::json j;
    j["parameters"] = parameters;
    j["residual"] = residual;
    j["n_points"] = n_points;
    j["converged"] = converged;
    j["weighting"] = weighting;
    j["input_checksums"] = input_checksums;
    return j.dump(2);
}

namespace {

double interpolate(const std::vector<double>& x, const std::vector<double>& y, double at) {
    if (at < x.front() || at > x.back()) {
        throw std::runtime_error("fit: point " + std::to_string(at) +
                                 " MHz outside the model grid");
    }
    const auto it = std::lower_bound(x.begin(), x.end(), at);
    if (it == x.begin()) return y.front();
    const auto hi = static_cast<std::size_t>(it - x.begin());
    const std::size_t lo = hi - 1;
    const double t = (at - x[lo]) / (x[hi] - x[lo]);
    return y[lo] + t * (y[hi] - y[lo]);
}

const std::vector<double>& channel_of(const Spectrum& s, Polarization pol) {
    return pol == Polarization::y ? s.rate_y : s.rate_z;
}

const std::vector<double>& sigma_of(const Spectrum& s, Polarization pol) {
    return pol == Polarization::y ? s.sigma_y : s.sigma_z;
}

/// Minimal Nelder-Mead simplex; the objective encodes bounds as penalties.
/// Returns true when the relative simplex extent fell below `tolerance`
/// within the iteration budget.
template <typename F>
bool nelder_mead(F&& objective, std::vector<double>& x, const std::vector<double>& initial_step,
                 double tolerance, std::size_t max_iterations) {
    const std::size_t n = x.size();
    std::vector<std::vector<double>> simplex(n + 1, x);
    std::vector<double> value(n + 1);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += initial_step[i];
    for (std::size_t i = 0; i <= n; ++i) value[i] = objective(simplex[i]);

    const auto order = [&] {
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t k = i + 1; k <= n; ++k) {
                if (value[k] < value[i]) {
                    std::swap(value[i], value[k]);
                    std::swap(simplex[i], simplex[k]);
                }
            }
        }
    };

    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        order();

        double extent = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double scale = std::max(1.0, std::abs(simplex[0][i]));
            for (std::size_t k = 1; k <= n; ++k) {
                extent = std::max(extent, std::abs(simplex[k][i] - simplex[0][i]) / scale);
            }
        }
        if (extent < tolerance) {
            x = simplex[0];
            return true;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k][i] / static_cast<double>(n);
        }
        const auto blend = [&](double coeff) {
            std::vector<double> p(n);
            for (std::size_t i = 0; i < n; ++i) {
                p[i] = centroid[i] + coeff * (simplex[n][i] - centroid[i]);
            }
            return p;
        };

        auto reflected = blend(-1.0);
        const double fr = objective(reflected);
        if (fr < value[0]) {
            auto expanded = blend(-2.0);
            const double fe = objective(expanded);
            if (fe < fr) {
                simplex[n] = std::move(expanded);
                value[n] = fe;
            } else {
                simplex[n] = std::move(reflected);
                value[n] = fr;
            }
        } else if (fr < value[n - 1]) {
            simplex[n] = std::move(reflected);
            value[n] = fr;
        } else {
            auto contracted = blend(fr < value[n] ? -0.5 : 0.5);
            const double fc = objective(contracted);
            if (fc < std::min(fr, value[n])) {
                simplex[n] = std::move(contracted);
                value[n] = fc;
            } else {
                for (std::size_t k = 1; k <= n; ++k) {  // shrink toward the best vertex
                    for (std::size_t i = 0; i < n; ++i) {
                        simplex[k][i] = simplex[0][i] + 0.5 * (simplex[k][i] - simplex[0][i]);
                    }
                    value[k] = objective(simplex[k]);
                }
            }
        }
    }
    order();
    x = simplex[0];
    return false;
}

struct ProfiledFit {
    double prefactor = 0.0;
    double residual = 0.0;
};

/// Optimal scale p for data ~ p * model and the resulting residual.
ProfiledFit profile_prefactor(const std::vector<double>& data, const std::vector<double>& model,
                              const std::vector<double>& weight) {
    double dm = 0.0;
    double mm = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        dm += weight[i] * data[i] * model[i];
        mm += weight[i] * model[i] * model[i];
    }
    ProfiledFit out;
    out.prefactor = mm > 0.0 ? dm / mm : 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double r = data[i] - out.prefactor * model[i];
        out.residual += weight[i] * r * r;
    }
    return out;
}

}  // namespace

FitResult fit_prefactor(const Spectrum& model, const Spectrum& data, FitWindow window,
                        Polarization channel) {
    model.validate();
    data.validate();
    if (!(window.lo_mhz < window.hi_mhz)) {
        throw std::invalid_argument("fit_prefactor: window lo must be below hi");
    }

    const auto& model_rate = channel_of(model, channel);
    const auto& data_rate = channel_of(data, channel);
    const auto& data_sigma = sigma_of(data, channel);
    const bool weighted = data.has_sigma();

    std::vector<double> d;
    std::vector<double> m;
    std::vector<double> w;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double x = data.detuning_mhz[i];
        if (x < window.lo_mhz || x > window.hi_mhz) continue;
        d.push_back(data_rate[i]);
        m.push_back(interpolate(model.detuning_mhz, model_rate, x));
        if (weighted) {
            const double s = data_sigma[i];
            if (!(s > 0.0)) throw std::runtime_error("fit_prefactor: non-positive sigma");
            w.push_back(1.0 / (s * s));
        } else {
            w.push_back(1.0);
        }
    }
    if (d.empty()) throw std::runtime_error("fit_prefactor: window selects no data points");

    const ProfiledFit fit = profile_prefactor(d, m, w);
    FitResult result;
    result.parameters["prefactor"] = fit.prefactor;
    result.residual = fit.residual;
    result.n_points = d.size();
    result.converged = true;
    result.weighting = weighted ? "1/sigma^2" : "uniform";
    return result;
}

FitResult fit_dip(const Spectrum& data, const DipFitConfig& config,
                  const AveragedStrengths& strengths, const LevelScheme& scheme) {
    data.validate();
    if (!(config.neff_lo > 0.0) || !(config.neff_hi > config.neff_lo)) {
        throw std::invalid_argument("fit_dip: invalid n_eff bounds");
    }

    const bool weighted = data.has_sigma();
    std::vector<double> weight(data.size(), 1.0);
    if (weighted) {
        for (std::size_t i = 0; i < data.size(); ++i) {
            const double s = data.sigma_y[i];
            if (!(s > 0.0)) throw std::runtime_error("fit_dip: non-positive sigma");
            weight[i] = 1.0 / (s * s);
        }
    }

    const double log_lo = std::log10(config.neff_lo);
    const double log_hi = std::log10(config.neff_hi);
    constexpr double big = std::numeric_limits<double>::max() / 4.0;

    std::vector<double> model(data.size());
    double last_prefactor = 0.0;
    const auto objective = [&](const std::vector<double>& x) {
        const double log_n = x[0];
        const double offset = x[1];
        if (log_n < log_lo || log_n > log_hi || std::abs(offset) > config.freq_offset_bound_mhz) {
            return big;
        }
        CavityDriveParams p = config.fixed;
        p.n_eff = std::pow(10.0, log_n);
        for (std::size_t i = 0; i < data.size(); ++i) {
            model[i] =
                coherent_photon_number(data.detuning_mhz[i] - offset, p, strengths, scheme);
        }
        const ProfiledFit fit = profile_prefactor(data.rate_y, model, weight);
        last_prefactor = fit.prefactor;
        return fit.residual;
    };

    FitResult best;
    best.residual = std::numeric_limits<double>::infinity();
    for (double start : config.neff_starts) {
        std::vector<double> x = {std::log10(start), 0.0};
        const bool ok = nelder_mead(objective, x, {0.5, 2.0}, config.tolerance,
                                    config.max_iterations);
        const double res = objective(x);  // also refreshes last_prefactor
        const double n_eff = std::pow(10.0, x[0]);
        const bool better =
            best.parameters.empty() || res < best.residual ||
            (res == best.residual && n_eff < best.parameters.at("n_eff"));
        if (better) {
            best.parameters["n_eff"] = n_eff;
            best.parameters["freq_offset_mhz"] = x[1];
            best.parameters["prefactor"] = last_prefactor;
            best.residual = res;
            best.converged = ok;
        }
    }
    best.n_points = data.size();
    best.weighting = weighted ? "1/sigma^2" : "uniform";
    return best;
}

FitResult fit_maxima_trace(const MaximaTrace& trace, const TraceFitConfig& config,
                           const AveragedStrengths& strengths, const LevelScheme& scheme) {
    const std::size_t n_defined =
        static_cast<std::size_t>(std::count(trace.defined.begin(), trace.defined.end(), true));
    if (n_defined < 5) {
        throw std::runtime_error("fit_maxima_trace: need at least 5 defined points, have " +
                                 std::to_string(n_defined));
    }
    if (!(config.neff_lo > 0.0) || !(config.neff_hi > config.neff_lo)) {
        throw std::invalid_argument("fit_maxima_trace: invalid n_eff bounds");
    }

    const std::vector<double>& drive_grid =
        config.drive_grid_mhz ? *config.drive_grid_mhz : trace.cavity_mhz;

    std::size_t best_points = 0;
    const auto sse_for = [&](double n_eff) {
        CavityDriveParams p = config.fixed;
        p.n_eff = n_eff;
        const Map2d map = map_2d(drive_grid, trace.cavity_mhz, p, strengths, scheme,
                                 config.map_options);
        double sse = 0.0;
        std::size_t used = 0;
        for (std::size_t j = 0; j < trace.cavity_mhz.size(); ++j) {
            if (!trace.defined[j] || !map.ridge[j].defined) continue;
            const double r = map.ridge[j].max_position_mhz - trace.drive_at_max_mhz[j];
            sse += r * r;
            ++used;
        }
        best_points = used;
        if (used < 5) return std::numeric_limits<double>::infinity();
        return sse;
    };

    // deterministic two-stage logarithmic scan; ties resolve to lower n_eff
    const auto scan = [&](double lo, double hi, std::size_t points) {
        double best_log = lo;
        double best_sse = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < points; ++i) {
            const double lg =
                lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
            const double sse = sse_for(std::pow(10.0, lg));
            if (sse < best_sse) {
                best_sse = sse;
                best_log = lg;
            }
        }
        return std::pair{best_log, best_sse};
    };

    const double log_lo = std::log10(config.neff_lo);
    const double log_hi = std::log10(config.neff_hi);
    const auto [coarse, coarse_sse] = scan(log_lo, log_hi, 121);
    const double half_step = (log_hi - log_lo) / 120.0;
    const auto [fine, fine_sse] = scan(std::max(log_lo, coarse - half_step),
                                       std::min(log_hi, coarse + half_step), 61);

    FitResult result;
    const double n_eff = std::pow(10.0, fine);
    result.residual = sse_for(n_eff);  // refreshes best_points
    (void)coarse_sse;
    (void)fine_sse;
    result.parameters["n_eff"] = n_eff;
    result.n_points = best_points;
    result.converged = true;
    result.weighting = "uniform";
    return result;
}

}  // namespace cavmagic
