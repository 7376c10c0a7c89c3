#include "cavmagic/polariton.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cavmagic {

void CavityDriveParams::validate() const {
    if (!(kappa_mhz > 0.0)) throw std::invalid_argument("cavity params: kappa must be positive");
    if (!(g_mhz > 0.0)) throw std::invalid_argument("cavity params: g must be positive");
    if (n_eff < 0.0) throw std::invalid_argument("cavity params: n_eff must be nonnegative");
    if (eta < 0.0) throw std::invalid_argument("cavity params: eta must be nonnegative");
    if (spatial_factor < 0.0) {
        throw std::invalid_argument("cavity params: spatial factor must be nonnegative");
    }
}

namespace {

void check_aligned(const AveragedStrengths& strengths, const LevelScheme& scheme) {
    if (strengths.c2.size() != scheme.num_levels()) {
        throw std::invalid_argument("polarizability: strengths do not match the scheme");
    }
}

double photon_number_from(const std::complex<double>& pol, double delta_c,
                          const CavityDriveParams& p) {
    const std::complex<double> denom(-p.kappa_mhz + p.g_mhz * p.g_mhz * p.n_eff * pol.real(),
                                     delta_c + p.g_mhz * p.g_mhz * p.n_eff * pol.imag());
    const double num = p.eta * p.eta * p.g_mhz * p.g_mhz * p.spatial_factor * std::norm(pol);
    return num / std::norm(denom);
}

}  // namespace

std::complex<double> polarizability(double detuning_mhz, const AveragedStrengths& strengths,
                                    const LevelScheme& scheme) {
    check_aligned(strengths, scheme);
    std::complex<double> sum = 0.0;
    for (std::size_t e = 0; e < scheme.num_levels(); ++e) {
        sum += strengths.c2[e] / std::complex<double>(detuning_mhz -
                                                          scheme.levels[e].omega_offset_mhz,
                                                      scheme.levels[e].gamma_mhz);
    }
    return std::complex<double>(0.0, -1.0) * sum;
}

double lossless_response(double detuning_mhz, const AveragedStrengths& strengths,
                         const LevelScheme& scheme) {
    check_aligned(strengths, scheme);
    double sum = 0.0;
    for (std::size_t e = 0; e < scheme.num_levels(); ++e) {
        sum += strengths.c2[e] / (detuning_mhz - scheme.levels[e].omega_offset_mhz);
    }
    return sum;
}

double coherent_photon_number(double detuning_mhz, const CavityDriveParams& params,
                              const AveragedStrengths& strengths, const LevelScheme& scheme) {
    params.validate();
    return photon_number_from(polarizability(detuning_mhz, strengths, scheme),
                              params.delta_c_mhz, params);
}

double coherent_photon_number_lossless(double detuning_mhz, const CavityDriveParams& params,
                                       const AveragedStrengths& strengths,
                                       const LevelScheme& scheme) {
    params.validate();
    const std::complex<double> pol(0.0, -lossless_response(detuning_mhz, strengths, scheme));
    return photon_number_from(pol, params.delta_c_mhz, params);
}

MagicFrequency find_magic_frequency(const AveragedStrengths& strengths, const LevelScheme& scheme,
                                    const CavityDriveParams& params) {
    check_aligned(strengths, scheme);
    params.validate();

    // the two highest levels that actually carry strength bracket the root
    std::vector<std::size_t> live;
    for (std::size_t e = 0; e < scheme.num_levels(); ++e) {
        if (strengths.c2[e] > 0.0) live.push_back(e);
    }
    if (live.size() < 2) {
        throw std::runtime_error(
            "find_magic_frequency: need at least two levels with nonzero strength, no root");
    }
    const double upper = scheme.levels[live.back()].omega_offset_mhz;
    const double lower = scheme.levels[live[live.size() - 2]].omega_offset_mhz;

    const double margin = 1e-9 * (upper - lower);
    double a = lower + margin;
    double b = upper - margin;
    double fa = lossless_response(a, strengths, scheme);
    double fb = lossless_response(b, strengths, scheme);
    if (!(fa > 0.0 && fb < 0.0)) {
        throw std::runtime_error("find_magic_frequency: no sign change in the bracket");
    }
    while (b - a > 1e-6) {
        const double mid = 0.5 * (a + b);
        const double fm = lossless_response(mid, strengths, scheme);
        if (fm > 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }

    MagicFrequency mf;
    mf.omega_star_mhz = 0.5 * (a + b);
    double p1 = 0.0;
    for (std::size_t e = 0; e < scheme.num_levels(); ++e) {
        const double d = mf.omega_star_mhz - scheme.levels[e].omega_offset_mhz;
        p1 += strengths.c2[e] / (d * d);
    }
    mf.p1_per_mhz2 = p1;
    mf.kappa_eff_mhz = params.kappa_mhz / (params.g_mhz * params.g_mhz * params.n_eff * p1);
    return mf;
}

double polarizability_minimum(const AveragedStrengths& strengths, const LevelScheme& scheme) {
    // golden-section around the lossless root; |P| is unimodal there
    CavityDriveParams defaults;
    const double w0 = find_magic_frequency(strengths, scheme, defaults).omega_star_mhz;
    double a = w0 - 10.0;
    double b = w0 + 10.0;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    const auto f = [&](double w) { return std::abs(polarizability(w, strengths, scheme)); };
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > 1e-7) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

double dip_shape_approx(double delta_mhz, const MagicFrequency& mf) {
    if (!(mf.kappa_eff_mhz > 0.0)) throw std::invalid_argument("dip_shape_approx: invalid kappa_eff");
    const double d2 = delta_mhz * delta_mhz;
    return d2 / (mf.kappa_eff_mhz * mf.kappa_eff_mhz + d2);
}

namespace {

void check_grid(const std::vector<double>& grid, const char* which) {
    if (grid.empty()) throw std::invalid_argument(std::string("map_2d: empty ") + which + " grid");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (grid[i] <= grid[i - 1]) {
            throw std::invalid_argument(std::string("map_2d: ") + which +
                                        " grid not strictly increasing");
        }
    }
}

/// 3-point parabolic refinement of a discrete argmax.
double refine_peak(const std::vector<double>& x, const std::vector<double>& y, std::size_t i) {
    if (i == 0 || i + 1 >= x.size()) return x[i];
    const double y0 = y[i - 1];
    const double y1 = y[i];
    const double y2 = y[i + 1];
    const double curv = y0 - 2.0 * y1 + y2;
    if (curv >= 0.0) return x[i];
    const double step = x[i + 1] - x[i];
    return x[i] + 0.5 * (y0 - y2) / curv * step;
}

double median(std::vector<double> v) {
    const std::size_t n = v.size();
    const std::size_t mid = n / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double hi = v[mid];
    if (n % 2 == 1) return hi;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid) - 1, v.end());
    return 0.5 * (v[mid - 1] + hi);
}

MapTracePoint trace_point(double at, const std::vector<double>& axis,
                          const std::vector<double>& values, double threshold) {
    MapTracePoint pt;
    pt.at_mhz = at;
    const auto it = std::max_element(values.begin(), values.end());
    const auto i = static_cast<std::size_t>(it - values.begin());
    const double med = median(values);
    pt.prominence = med > 0.0 ? (*it - med) / med : 0.0;
    pt.defined = pt.prominence >= threshold;
    pt.max_position_mhz = refine_peak(axis, values, i);
    return pt;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Map2d map_2d(const std::vector<double>& drive_grid_mhz, const std::vector<double>& cavity_grid_mhz,
             const CavityDriveParams& params, const AveragedStrengths& strengths,
             const LevelScheme& scheme, const Map2dOptions& options) {
    params.validate();
    check_grid(drive_grid_mhz, "drive");
    check_grid(cavity_grid_mhz, "cavity");

    Map2d map;
    map.drive_mhz = drive_grid_mhz;
    map.cavity_mhz = cavity_grid_mhz;
    map.photon_number.assign(drive_grid_mhz.size(),
                             std::vector<double>(cavity_grid_mhz.size(), 0.0));

    for (std::size_t i = 0; i < drive_grid_mhz.size(); ++i) {
        const double w = drive_grid_mhz[i];
        const std::complex<double> pol = polarizability(w, strengths, scheme);
        for (std::size_t j = 0; j < cavity_grid_mhz.size(); ++j) {
            map.photon_number[i][j] = photon_number_from(pol, w - cavity_grid_mhz[j], params);
        }
    }

    std::vector<double> column(drive_grid_mhz.size());
    for (std::size_t j = 0; j < cavity_grid_mhz.size(); ++j) {
        for (std::size_t i = 0; i < drive_grid_mhz.size(); ++i) column[i] = map.photon_number[i][j];
        map.ridge.push_back(
            trace_point(cavity_grid_mhz[j], drive_grid_mhz, column, options.ridge_threshold));
    }
    for (std::size_t i = 0; i < drive_grid_mhz.size(); ++i) {
        map.diag.push_back(trace_point(drive_grid_mhz[i], cavity_grid_mhz, map.photon_number[i],
                                       options.diag_threshold));
    }
    return map;
}

void write_map_matrix_csv(const Map2d& map, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("map csv: cannot write '" + path + "'");
    // first row = cavity grid, first column = drive grid
    out << "drive_mhz\\cavity_mhz";
    for (double wc : map.cavity_mhz) out << ',' << format_double(wc);
    out << "\n";
    for (std::size_t i = 0; i < map.drive_mhz.size(); ++i) {
        out << format_double(map.drive_mhz[i]);
        for (double v : map.photon_number[i]) out << ',' << format_double(v);
        out << "\n";
    }
}

void write_ridge_trace_csv(const std::vector<MapTracePoint>& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("trace csv: cannot write '" + path + "'");
    out << "cavity_mhz,drive_at_max_mhz,defined\n";
    for (const auto& pt : trace) {
        out << format_double(pt.at_mhz) << ',' << format_double(pt.max_position_mhz) << ','
            << (pt.defined ? 1 : 0) << "\n";
    }
}

void write_diag_trace_csv(const std::vector<MapTracePoint>& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("trace csv: cannot write '" + path + "'");
    out << "drive_mhz,cavity_at_max_mhz,defined\n";
    for (const auto& pt : trace) {
        out << format_double(pt.at_mhz) << ',' << format_double(pt.max_position_mhz) << ','
            << (pt.defined ? 1 : 0) << "\n";
    }
}

MaximaTrace read_maxima_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("trace csv: cannot open '" + path + "'");
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("trace csv: empty file " + path);
    if (header != "cavity_mhz,drive_at_max_mhz,defined") {
        throw std::runtime_error("trace csv: unexpected header '" + header + "' in " + path);
    }
    MaximaTrace tr;
    std::string line;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 3) {
            throw std::runtime_error("trace csv: wrong column count at row " + std::to_string(row));
        }
        try {
            tr.cavity_mhz.push_back(std::stod(cells[0]));
            tr.drive_at_max_mhz.push_back(std::stod(cells[1]));
            tr.defined.push_back(std::stoi(cells[2]) != 0);
        } catch (const std::exception&) {
            throw std::runtime_error("trace csv: bad value at row " + std::to_string(row));
        }
    }
    return tr;
}

}  // namespace cavmagic
