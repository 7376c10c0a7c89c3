#include <doctest.h>

#include <cmath>

#include "cavmagic/scattering.hpp"

using namespace cavmagic;

namespace {
HalfInteger hi(int v) { return HalfInteger::from_int(v); }

const LevelScheme& scheme() { return default_level_scheme(); }
const TransitionTable& table() {
    static const TransitionTable t = coupling_table(scheme());
    return t;
}

LevelScheme single_level_scheme() {
    LevelScheme s = scheme();
    s.levels = {s.levels[2]};  // only F'=3
    return s;
}
}  // namespace

TEST_CASE("channels without a two-photon path give exactly zero") {
    CHECK(scattering_amplitude(hi(0), 3, Polarization::y, -100.0, scheme(), table()) ==
          std::complex<double>(0.0, 0.0));
    CHECK(scattering_amplitude(hi(0), 0, Polarization::z, -100.0, scheme(), table()) ==
          std::complex<double>(0.0, 0.0));
    CHECK(scattering_amplitude(hi(0), 2, Polarization::z, -100.0, scheme(), table()) ==
          std::complex<double>(0.0, 0.0));
    CHECK(scattering_amplitude(hi(0), 1, Polarization::y, -100.0, scheme(), table()) ==
          std::complex<double>(0.0, 0.0));
    // final sublevel outside the manifold
    CHECK(scattering_amplitude(hi(2), 1, Polarization::z, -100.0, scheme(), table()) ==
          std::complex<double>(0.0, 0.0));
    CHECK_THROWS_AS(scattering_amplitude(hi(3), 0, Polarization::y, -100.0, scheme(), table()),
                    std::invalid_argument);
}

TEST_CASE("single-level amplitude has a pure Lorentzian modulus") {
    const LevelScheme s = single_level_scheme();
    const TransitionTable t = coupling_table(s);
    const double g3 = s.levels[0].gamma_mhz;
    const auto mod = [&](double w) {
        return std::abs(scattering_amplitude(hi(0), 1, Polarization::z, w, s, t));
    };
    const auto lorentz = [&](double w) { return 1.0 / std::sqrt(w * w + g3 * g3); };
    const double r1 = mod(-120.0) / mod(-350.0);
    const double r2 = lorentz(-120.0) / lorentz(-350.0);
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-12));
}

TEST_CASE("rate bounds the Rayleigh amplitude from below") {
    for (double w : {-600.0, -300.0, -150.0, -20.0, 50.0}) {
        for (int m = -2; m <= 2; ++m) {
            const double rate =
                scattering_rate(hi(m), Polarization::y, w, scheme(), table());
            const double a0 =
                std::norm(scattering_amplitude(hi(m), 0, Polarization::y, w, scheme(), table()));
            CHECK(rate >= a0);
        }
    }
}

TEST_CASE("every amplitude is finite for real detunings") {
    for (double w : {-423.597, -266.650, 0.0, -506.0}) {  // exactly on resonance too
        for (int dm : {-2, -1, 0, 1, 2}) {
            for (int m = -2; m <= 2; ++m) {
                const auto ay =
                    scattering_amplitude(hi(m), dm, Polarization::y, w, scheme(), table());
                const auto az =
                    scattering_amplitude(hi(m), dm, Polarization::z, w, scheme(), table());
                CHECK(std::isfinite(std::abs(ay)));
                CHECK(std::isfinite(std::abs(az)));
            }
        }
    }
}

TEST_CASE("polarization bookkeeping by brute-force path enumeration") {
    // z gets only delta_m = +-1; y only 0, +-2
    for (int m = -2; m <= 2; ++m) {
        for (int dm = -3; dm <= 3; ++dm) {
            const auto az =
                scattering_amplitude(hi(m), dm, Polarization::z, -77.0, scheme(), table());
            const auto ay =
                scattering_amplitude(hi(m), dm, Polarization::y, -77.0, scheme(), table());
            if (dm != 1 && dm != -1) CHECK(az == std::complex<double>(0.0, 0.0));
            if (dm != 0 && dm != 2 && dm != -2) CHECK(ay == std::complex<double>(0.0, 0.0));
        }
    }
}

TEST_CASE("uniform-averaged z rate dips deeply between F'=1 and F'=2") {
    const auto dist = ZeemanDistribution::uniform(hi(2));
    const auto grid = make_grid(-560.0, -460.0, 0.25);
    const Spectrum s = averaged_spectrum(dist, grid, scheme(), table());
    std::size_t imin = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.rate_z[i] < s.rate_z[imin]) imin = i;
    }
    CHECK(s.detuning_mhz[imin] == doctest::Approx(-509.0).epsilon(2e-3));
    // the dip is orders of magnitude below the Raman rate outside it
    CHECK(s.rate_z[imin] * 20.0 < s.rate_z.back());
}

TEST_CASE("far-detuned rates scale as 1/Delta^2") {
    const auto dist = ZeemanDistribution::uniform(hi(2));
    const double w1 = -2000.0;
    const double w2 = -2000.0 * std::sqrt(2.0);
    const auto total = [&](double w) {
        double r = 0.0;
        for (int m = -2; m <= 2; ++m) {
            r += 0.2 * scattering_rate(hi(m), Polarization::y, w, scheme(), table());
            r += 0.2 * scattering_rate(hi(m), Polarization::z, w, scheme(), table());
        }
        return r;
    };
    (void)dist;
    CHECK(total(w1) / total(w2) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("spectrum peaks sit at the three hyperfine resonances") {
    const auto dist = ZeemanDistribution::uniform(hi(2));
    const auto grid = make_grid(-450.0, 20.0, 1.0);
    const Spectrum s = averaged_spectrum(dist, grid, scheme(), table());
    for (double offset : {-423.597, -266.650, 0.0}) {
        std::size_t icenter = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (std::abs(s.detuning_mhz[i] - offset) < std::abs(s.detuning_mhz[icenter] - offset))
                icenter = i;
        }
        std::size_t ipeak = icenter >= 5 ? icenter - 5 : 0;
        for (std::size_t i = ipeak; i <= icenter + 5 && i < s.size(); ++i) {
            if (s.rate_y[i] > s.rate_y[ipeak]) ipeak = i;
        }
        CHECK(std::abs(s.detuning_mhz[ipeak] - offset) <= 2.0);
    }
}

TEST_CASE("doubling the prefactor doubles every rate") {
    const auto dist = ZeemanDistribution::uniform(hi(2));
    const auto grid = make_grid(-300.0, -100.0, 10.0);
    DriveParams d1;
    DriveParams d2;
    d2.prefactor = 2.0;
    const Spectrum a = averaged_spectrum(dist, grid, scheme(), table(), d1);
    const Spectrum b = averaged_spectrum(dist, grid, scheme(), table(), d2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(b.rate_y[i] == doctest::Approx(2.0 * a.rate_y[i]).epsilon(1e-14));
        CHECK(b.rate_z[i] == doctest::Approx(2.0 * a.rate_z[i]).epsilon(1e-14));
    }
}

TEST_CASE("mirror sublevels give identical spectra for balanced drives") {
    const auto grid = make_grid(-460.0, 30.0, 7.0);
    for (int m : {1, 2}) {
        const Spectrum a =
            averaged_spectrum(ZeemanDistribution::delta(hi(2), hi(m)), grid, scheme(), table());
        const Spectrum b =
            averaged_spectrum(ZeemanDistribution::delta(hi(2), hi(-m)), grid, scheme(), table());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a.rate_y[i] == doctest::Approx(b.rate_y[i]).epsilon(1e-12));
            CHECK(a.rate_z[i] == doctest::Approx(b.rate_z[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("rates are invariant under a global sign flip of the couplings") {
    // flip every coefficient: build a table from the same scheme and negate
    TransitionTable flipped = table();
    for (std::size_t e = 0; e < 3; ++e) {
        for (int m = -2; m <= 2; ++m) {
            for (int q = -1; q <= 1; ++q) {
                flipped.set(e, hi(m), q, -table().coefficient(e, hi(m), hi(m + q)));
            }
        }
    }
    for (double w : {-300.0, -50.0}) {
        for (int m = -2; m <= 2; ++m) {
            CHECK(scattering_rate(hi(m), Polarization::z, w, scheme(), table()) ==
                  doctest::Approx(scattering_rate(hi(m), Polarization::z, w, scheme(), flipped))
                      .epsilon(1e-14));
        }
    }
}

TEST_CASE("empty grid is rejected") {
    CHECK_THROWS_AS(
        averaged_spectrum(ZeemanDistribution::uniform(hi(2)), {}, scheme(), table()),
        std::invalid_argument);
}
