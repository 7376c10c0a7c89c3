#include "cavmagic/scattering.hpp"

#include <cmath>
#include <stdexcept>

namespace cavmagic {

namespace {
constexpr double inv_sqrt2 = 0.70710678118654752440;
}

void DriveParams::validate() const {
    if (eta_plus < 0.0 || eta_minus < 0.0) {
        throw std::invalid_argument("drive: amplitudes must be nonnegative");
    }
}

std::complex<double> scattering_amplitude(HalfInteger m, int delta_m, Polarization pol,
                                          double detuning_mhz, const LevelScheme& scheme,
                                          const TransitionTable& table,
                                          const DriveParams& drive) {
    drive.validate();
    if (!valid_projection(scheme.ground_f, m)) {
        throw std::invalid_argument("scattering_amplitude: |m| > F");
    }
    const HalfInteger m_final = m + HalfInteger::from_int(delta_m);
    if (!valid_projection(scheme.ground_f, m_final)) return {0.0, 0.0};

    const HalfInteger one = HalfInteger::from_int(1);
    std::complex<double> sum = 0.0;
    for (std::size_t e = 0; e < scheme.num_levels(); ++e) {
        const std::complex<double> denom(detuning_mhz - scheme.levels[e].omega_offset_mhz,
                                         scheme.levels[e].gamma_mhz);
        double numer = 0.0;
        if (pol == Polarization::z) {
            // z emission returns the atom to the intermediate sublevel: m' = m + delta_m
            if (delta_m == 1) {
                numer = drive.eta_plus * table.coefficient(e, m_final, m_final) *
                        table.coefficient(e, m, m + one);
            } else if (delta_m == -1) {
                numer = drive.eta_minus * table.coefficient(e, m_final, m_final) *
                        table.coefficient(e, m, m - one);
            } else {
                return {0.0, 0.0};
            }
        } else {
            // y emission carries the 1/sqrt(2) circular-basis weight
            if (delta_m == 0) {
                const double cp = table.coefficient(e, m, m + one);
                const double cm = table.coefficient(e, m, m - one);
                numer = inv_sqrt2 * (drive.eta_plus * cp * cp + drive.eta_minus * cm * cm);
            } else if (delta_m == 2) {
                numer = inv_sqrt2 * drive.eta_plus * table.coefficient(e, m_final, m + one) *
                        table.coefficient(e, m, m + one);
            } else if (delta_m == -2) {
                numer = inv_sqrt2 * drive.eta_minus * table.coefficient(e, m_final, m - one) *
                        table.coefficient(e, m, m - one);
            } else {
                return {0.0, 0.0};
            }
        }
        sum += numer / denom;
    }
    return sum;
}

double scattering_rate(HalfInteger m, Polarization pol, double detuning_mhz,
                       const LevelScheme& scheme, const TransitionTable& table,
                       const DriveParams& drive) {
    double rate = 0.0;
    const auto add = [&](int dm) {
        const auto amp = scattering_amplitude(m, dm, pol, detuning_mhz, scheme, table, drive);
        rate += std::norm(amp);
    };
    if (pol == Polarization::z) {
        add(1);
        add(-1);
    } else {
        add(0);
        add(2);
        add(-2);
    }
    return rate;
}

Spectrum averaged_spectrum(const ZeemanDistribution& dist, const std::vector<double>& grid_mhz,
                           const LevelScheme& scheme, const TransitionTable& table,
                           const DriveParams& drive) {
    if (grid_mhz.empty()) throw std::invalid_argument("averaged_spectrum: empty grid");
    if (dist.f() != scheme.ground_f) {
        throw std::invalid_argument("averaged_spectrum: distribution F does not match scheme");
    }

    Spectrum s;
    s.detuning_mhz = grid_mhz;
    s.rate_y.resize(grid_mhz.size());
    s.rate_z.resize(grid_mhz.size());
    for (std::size_t i = 0; i < grid_mhz.size(); ++i) {
        double ry = 0.0;
        double rz = 0.0;
        for (std::size_t k = 0; k < dist.size(); ++k) {
            const double p = dist.populations()[k];
            if (p == 0.0) continue;
            const HalfInteger m = dist.m_at(k);
            ry += p * scattering_rate(m, Polarization::y, grid_mhz[i], scheme, table, drive);
            rz += p * scattering_rate(m, Polarization::z, grid_mhz[i], scheme, table, drive);
        }
        s.rate_y[i] = drive.prefactor * ry;
        s.rate_z[i] = drive.prefactor * rz;
    }
    s.validate();
    return s;
}

}  // namespace cavmagic
