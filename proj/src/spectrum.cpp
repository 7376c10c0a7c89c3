#include "cavmagic/spectrum.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cavmagic {

void Spectrum::validate() const {
    const std::size_t n = detuning_mhz.size();
    if (n == 0) throw std::invalid_argument("spectrum: empty grid");
    if (rate_y.size() != n || rate_z.size() != n) {
        throw std::invalid_argument("spectrum: column length mismatch");
    }
    if (!sigma_y.empty() && (sigma_y.size() != n || sigma_z.size() != n)) {
        throw std::invalid_argument("spectrum: sigma column length mismatch");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && detuning_mhz[i] <= detuning_mhz[i - 1]) {
            throw std::invalid_argument("spectrum: grid not strictly increasing at row " +
                                        std::to_string(i));
        }
        if (rate_y[i] < 0.0 || rate_z[i] < 0.0) {
            throw std::invalid_argument("spectrum: negative rate at row " + std::to_string(i));
        }
    }
}

std::vector<double> make_grid(double lo_mhz, double hi_mhz, double step_mhz) {
    if (!(step_mhz > 0.0)) throw std::invalid_argument("grid: step must be positive");
    if (!(lo_mhz < hi_mhz)) throw std::invalid_argument("grid: require lo < hi");
    std::vector<double> grid;
    // relative slack keeps the inclusive endpoint when (hi-lo)/step rounds
    // just below an integer
    const double count = (hi_mhz - lo_mhz) / step_mhz * (1.0 + 1e-12) + 1e-9;
    const auto n = static_cast<std::size_t>(std::floor(count)) + 1;
    grid.reserve(n);
    for (std::size_t i = 0; i < n; ++i) grid.push_back(lo_mhz + static_cast<double>(i) * step_mhz);
    return grid;
}

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_row(const std::string& line, std::size_t row) {
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t pos = 0;
            vals.push_back(std::stod(cell, &pos));
            if (pos != cell.size()) throw std::invalid_argument(cell);
        } catch (const std::exception&) {
            throw std::runtime_error("spectrum csv: bad number '" + cell + "' at row " +
                                     std::to_string(row));
        }
    }
    return vals;
}

}  // namespace

void write_spectrum_csv(const Spectrum& spectrum, const std::string& path) {
    spectrum.validate();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("spectrum csv: cannot write '" + path + "'");
    out << "detuning_mhz,rate_y,rate_z";
    if (spectrum.has_sigma()) out << ",sigma_y,sigma_z";
    out << "\n";
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        out << format_double(spectrum.detuning_mhz[i]) << ',' << format_double(spectrum.rate_y[i])
            << ',' << format_double(spectrum.rate_z[i]);
        if (spectrum.has_sigma()) {
            out << ',' << format_double(spectrum.sigma_y[i]) << ','
                << format_double(spectrum.sigma_z[i]);
        }
        out << "\n";
    }
}

Spectrum read_spectrum_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("spectrum csv: cannot open '" + path + "'");
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("spectrum csv: empty file " + path);
    bool with_sigma = false;
    if (header == "detuning_mhz,rate_y,rate_z") {
        with_sigma = false;
    } else if (header == "detuning_mhz,rate_y,rate_z,sigma_y,sigma_z") {
        with_sigma = true;
    } else {
        throw std::runtime_error("spectrum csv: unexpected header '" + header + "' in " + path);
    }

    Spectrum s;
    std::string line;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto vals = parse_row(line, row);
        if (vals.size() != (with_sigma ? 5u : 3u)) {
            throw std::runtime_error("spectrum csv: wrong column count at row " +
                                     std::to_string(row));
        }
        s.detuning_mhz.push_back(vals[0]);
        s.rate_y.push_back(vals[1]);
        s.rate_z.push_back(vals[2]);
        if (with_sigma) {
            s.sigma_y.push_back(vals[3]);
            s.sigma_z.push_back(vals[4]);
        }
    }
    s.validate();
    return s;
}

}  // namespace cavmagic
