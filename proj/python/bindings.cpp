#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cavmagic/coupling.hpp"
#include "cavmagic/ensemble.hpp"
#include "cavmagic/fitting.hpp"
#include "cavmagic/manifest.hpp"
#include "cavmagic/polariton.hpp"
#include "cavmagic/scattering.hpp"

namespace py = pybind11;
using namespace cavmagic;

namespace {

HalfInteger half(double v) { return HalfInteger::from_double(v); }

Polarization pol_from(const std::string& s) {
    if (s == "y") return Polarization::y;
    if (s == "z") return Polarization::z;
    throw std::invalid_argument("polarization must be 'y' or 'z'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Scattering of a laser-driven multilevel atomic ensemble into a two-mode cavity: "
              "exact angular-momentum algebra, perturbative rates, the collective polariton "
              "model with its magic frequency, ensemble geometry and spectrum fits.";

    m.attr("__version__") = std::string(tool_version);
    m.attr("OBSERVED_DIP_MHZ") = observed_dip_mhz;

    m.def(
        "wigner3j",
        [](double j1, double j2, double j3, double m1, double m2, double m3) {
            return wigner3j(half(j1), half(j2), half(j3), half(m1), half(m2), half(m3))
                .to_double();
        },
        py::arg("j1"), py::arg("j2"), py::arg("j3"), py::arg("m1"), py::arg("m2"), py::arg("m3"),
        "Wigner 3j symbol (evaluated exactly, returned as float)");
    m.def(
        "wigner6j",
        [](double j1, double j2, double j3, double j4, double j5, double j6) {
            return wigner6j(half(j1), half(j2), half(j3), half(j4), half(j5), half(j6))
                .to_double();
        },
        py::arg("j1"), py::arg("j2"), py::arg("j3"), py::arg("j4"), py::arg("j5"), py::arg("j6"),
        "Wigner 6j symbol (evaluated exactly, returned as float)");

    py::class_<LevelScheme>(m, "LevelScheme")
        .def_static("default", []() { return default_level_scheme(); })
        .def_static("load", &load_level_scheme, py::arg("path"))
        .def_static("from_json", &parse_level_scheme, py::arg("text"))
        .def_property_readonly("name", [](const LevelScheme& s) { return s.name; })
        .def_property_readonly("ground_f",
                               [](const LevelScheme& s) { return s.ground_f.value(); })
        .def_property_readonly("levels",
                               [](const LevelScheme& s) {
                                   py::list out;
                                   for (const auto& lv : s.levels) {
                                       out.append(py::make_tuple(lv.f.value(),
                                                                 lv.omega_offset_mhz,
                                                                 lv.gamma_mhz));
                                   }
                                   return out;
                               })
        .def("__repr__", [](const LevelScheme& s) {
            return "<LevelScheme '" + s.name + "', " + std::to_string(s.num_levels()) +
                   " excited levels>";
        });
    m.def("default_level_scheme_text", []() { return default_level_scheme_text(); });

    py::class_<TransitionTable>(m, "TransitionTable")
        .def_property_readonly("num_levels", &TransitionTable::num_levels)
        .def_property_readonly("rejected_levels", &TransitionTable::rejected_levels)
        .def(
            "coefficient",
            [](const TransitionTable& t, std::size_t level, double m_ground, double m_excited) {
                return t.coefficient(level, half(m_ground), half(m_excited));
            },
            py::arg("level_index"), py::arg("m_ground"), py::arg("m_excited"))
        .def(
            "total_strength",
            [](const TransitionTable& t, double m) { return t.total_strength(half(m)); },
            py::arg("m"));
    m.def("coupling_table", &coupling_table, py::arg("scheme"));

    py::class_<ZeemanDistribution>(m, "ZeemanDistribution")
        .def_static(
            "uniform", [](double f) { return ZeemanDistribution::uniform(half(f)); },
            py::arg("f"))
        .def_static(
            "delta",
            [](double f, double m) { return ZeemanDistribution::delta(half(f), half(m)); },
            py::arg("f"), py::arg("m"))
        .def_static(
            "from_weights",
            [](double f, const std::vector<double>& w) {
                return ZeemanDistribution::from_weights(half(f), w);
            },
            py::arg("f"), py::arg("weights"))
        .def_property_readonly("populations",
                               [](const ZeemanDistribution& d) { return d.populations(); });

    m.def(
        "zeeman_average",
        [](const TransitionTable& t, const ZeemanDistribution& d) {
            return zeeman_average(t, d).c2;
        },
        py::arg("table"), py::arg("dist"),
        "Per-level sigma-averaged strengths <c^2_F'> as a list");

    m.def(
        "scattering_amplitude",
        [](double m, int delta_m, const std::string& pol, double detuning,
           const LevelScheme& scheme, const TransitionTable& table, double eta_plus,
           double eta_minus) {
            DriveParams drive;
            drive.eta_plus = eta_plus;
            drive.eta_minus = eta_minus;
            return scattering_amplitude(half(m), delta_m, pol_from(pol), detuning, scheme, table,
                                        drive);
        },
        py::arg("m"), py::arg("delta_m"), py::arg("pol"), py::arg("detuning_mhz"),
        py::arg("scheme"), py::arg("table"), py::arg("eta_plus") = 1.0,
        py::arg("eta_minus") = 1.0);
    m.def(
        "scattering_rate",
        [](double m, const std::string& pol, double detuning, const LevelScheme& scheme,
           const TransitionTable& table, double eta_plus, double eta_minus) {
            DriveParams drive;
            drive.eta_plus = eta_plus;
            drive.eta_minus = eta_minus;
            return scattering_rate(half(m), pol_from(pol), detuning, scheme, table, drive);
        },
        py::arg("m"), py::arg("pol"), py::arg("detuning_mhz"), py::arg("scheme"),
        py::arg("table"), py::arg("eta_plus") = 1.0, py::arg("eta_minus") = 1.0);

    py::class_<Spectrum>(m, "Spectrum")
        .def(py::init<>())
        .def_readwrite("detuning_mhz", &Spectrum::detuning_mhz)
        .def_readwrite("rate_y", &Spectrum::rate_y)
        .def_readwrite("rate_z", &Spectrum::rate_z)
        .def_readwrite("sigma_y", &Spectrum::sigma_y)
        .def_readwrite("sigma_z", &Spectrum::sigma_z)
        .def("validate", &Spectrum::validate)
        .def("__len__", &Spectrum::size);
    m.def("read_spectrum_csv", &read_spectrum_csv, py::arg("path"));
    m.def("write_spectrum_csv", &write_spectrum_csv, py::arg("spectrum"), py::arg("path"));
    m.def("make_grid", &make_grid, py::arg("lo_mhz"), py::arg("hi_mhz"), py::arg("step_mhz"));

    m.def(
        "averaged_spectrum",
        [](const ZeemanDistribution& dist, const std::vector<double>& grid,
           const LevelScheme& scheme, const TransitionTable& table, double prefactor,
           double eta_plus, double eta_minus) {
            DriveParams drive;
            drive.prefactor = prefactor;
            drive.eta_plus = eta_plus;
            drive.eta_minus = eta_minus;
            return averaged_spectrum(dist, grid, scheme, table, drive);
        },
        py::arg("dist"), py::arg("grid_mhz"), py::arg("scheme"), py::arg("table"),
        py::arg("prefactor") = 1.0, py::arg("eta_plus") = 1.0, py::arg("eta_minus") = 1.0);

    py::class_<CavityDriveParams>(m, "CavityDriveParams")
        .def(py::init([](double kappa, double g, double delta_c, double n_eff, double eta,
                         double spatial_factor) {
                 CavityDriveParams p;
                 p.kappa_mhz = kappa;
                 p.g_mhz = g;
                 p.delta_c_mhz = delta_c;
                 p.n_eff = n_eff;
                 p.eta = eta;
                 p.spatial_factor = spatial_factor;
                 p.validate();
                 return p;
             }),
             py::arg("kappa_mhz") = 4.0, py::arg("g_mhz") = 0.33, py::arg("delta_c_mhz") = 0.0,
             py::arg("n_eff") = 6.0e4, py::arg("eta") = 1.0, py::arg("spatial_factor") = 1.0)
        .def_readwrite("kappa_mhz", &CavityDriveParams::kappa_mhz)
        .def_readwrite("g_mhz", &CavityDriveParams::g_mhz)
        .def_readwrite("delta_c_mhz", &CavityDriveParams::delta_c_mhz)
        .def_readwrite("n_eff", &CavityDriveParams::n_eff)
        .def_readwrite("eta", &CavityDriveParams::eta)
        .def_readwrite("spatial_factor", &CavityDriveParams::spatial_factor);

    py::class_<AveragedStrengths>(m, "AveragedStrengths")
        .def(py::init([](std::vector<double> c2) { return AveragedStrengths{std::move(c2)}; }),
             py::arg("c2"))
        .def_readwrite("c2", &AveragedStrengths::c2);

    m.def(
        "polarizability",
        [](double detuning, const std::vector<double>& strengths, const LevelScheme& scheme) {
            return polarizability(detuning, AveragedStrengths{strengths}, scheme);
        },
        py::arg("detuning_mhz"), py::arg("strengths"), py::arg("scheme"));
    m.def(
        "coherent_photon_number",
        [](double detuning, const CavityDriveParams& p, const std::vector<double>& strengths,
           const LevelScheme& scheme) {
            return coherent_photon_number(detuning, p, AveragedStrengths{strengths}, scheme);
        },
        py::arg("detuning_mhz"), py::arg("params"), py::arg("strengths"), py::arg("scheme"));

    py::class_<MagicFrequency>(m, "MagicFrequency")
        .def_readonly("omega_star_mhz", &MagicFrequency::omega_star_mhz)
        .def_readonly("p1_per_mhz2", &MagicFrequency::p1_per_mhz2)
        .def_readonly("kappa_eff_mhz", &MagicFrequency::kappa_eff_mhz)
        .def("__repr__", [](const MagicFrequency& mf) {
            return "<MagicFrequency omega*=" + std::to_string(mf.omega_star_mhz) +
                   " MHz, kappa_eff=" + std::to_string(mf.kappa_eff_mhz) + " MHz>";
        });
    m.def(
        "find_magic_frequency",
        [](const std::vector<double>& strengths, const LevelScheme& scheme,
           const CavityDriveParams& params) {
            return find_magic_frequency(AveragedStrengths{strengths}, scheme, params);
        },
        py::arg("strengths"), py::arg("scheme"), py::arg("params") = CavityDriveParams{});
    m.def(
        "polarizability_minimum",
        [](const std::vector<double>& strengths, const LevelScheme& scheme) {
            return polarizability_minimum(AveragedStrengths{strengths}, scheme);
        },
        py::arg("strengths"), py::arg("scheme"));
    m.def("dip_shape_approx", &dip_shape_approx, py::arg("delta_mhz"), py::arg("magic"));

    py::class_<MapTracePoint>(m, "MapTracePoint")
        .def_readonly("at_mhz", &MapTracePoint::at_mhz)
        .def_readonly("max_position_mhz", &MapTracePoint::max_position_mhz)
        .def_readonly("defined", &MapTracePoint::defined)
        .def_readonly("prominence", &MapTracePoint::prominence);
    py::class_<Map2d>(m, "Map2d")
        .def_readonly("drive_mhz", &Map2d::drive_mhz)
        .def_readonly("cavity_mhz", &Map2d::cavity_mhz)
        .def_readonly("photon_number", &Map2d::photon_number)
        .def_readonly("ridge", &Map2d::ridge)
        .def_readonly("diag", &Map2d::diag);
    m.def(
        "map_2d",
        [](const std::vector<double>& drive, const std::vector<double>& cavity,
           const CavityDriveParams& params, const std::vector<double>& strengths,
           const LevelScheme& scheme, double ridge_threshold, double diag_threshold) {
            Map2dOptions opt;
            opt.ridge_threshold = ridge_threshold;
            opt.diag_threshold = diag_threshold;
            return map_2d(drive, cavity, params, AveragedStrengths{strengths}, scheme, opt);
        },
        py::arg("drive_grid_mhz"), py::arg("cavity_grid_mhz"), py::arg("params"),
        py::arg("strengths"), py::arg("scheme"), py::arg("ridge_threshold") = 2.0,
        py::arg("diag_threshold") = 0.5);

    py::class_<AtomCloud>(m, "AtomCloud")
        .def_readonly("phase_x_rad", &AtomCloud::phase_x_rad)
        .def_readonly("phase_z_rad", &AtomCloud::phase_z_rad)
        .def_readonly("seed", &AtomCloud::seed)
        .def_readonly("rng_name", &AtomCloud::rng_name)
        .def("__len__", &AtomCloud::size);
    m.def(
        "sample_cloud",
        [](std::size_t n, std::uint64_t seed, double extent_x, double extent_z) {
            return sample_cloud(n, CloudGeometry::uniform(extent_x, extent_z), seed);
        },
        py::arg("n"), py::arg("seed") = 0, py::arg("extent_x") = 100.0,
        py::arg("extent_z") = 100.0);
    m.def(
        "explicit_cloud",
        [](const std::vector<std::array<double, 2>>& phases) {
            return sample_cloud(phases.size(), CloudGeometry::explicit_phases(phases), 0);
        },
        py::arg("phases"));
    m.def("effective_atom_number", &effective_atom_number, py::arg("cloud"));
    m.def("spatial_factor", &spatial_factor, py::arg("cloud"));

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("parameters", &FitResult::parameters)
        .def_readonly("residual", &FitResult::residual)
        .def_readonly("n_points", &FitResult::n_points)
        .def_readonly("converged", &FitResult::converged)
        .def_readonly("weighting", &FitResult::weighting)
        .def("to_json", &FitResult::to_json);
    m.def(
        "fit_prefactor",
        [](const Spectrum& model, const Spectrum& data, double lo, double hi,
           const std::string& channel) {
            return fit_prefactor(model, data, {lo, hi}, pol_from(channel));
        },
        py::arg("model"), py::arg("data"), py::arg("window_lo_mhz"), py::arg("window_hi_mhz"),
        py::arg("channel") = "y");
    m.def(
        "fit_dip",
        [](const Spectrum& data, const CavityDriveParams& fixed,
           const std::vector<double>& strengths, const LevelScheme& scheme, double neff_lo,
           double neff_hi, double offset_bound) {
            DipFitConfig config;
            config.fixed = fixed;
            config.neff_lo = neff_lo;
            config.neff_hi = neff_hi;
            config.freq_offset_bound_mhz = offset_bound;
            return fit_dip(data, config, AveragedStrengths{strengths}, scheme);
        },
        py::arg("data"), py::arg("fixed"), py::arg("strengths"), py::arg("scheme"),
        py::arg("neff_lo") = 1.0e3, py::arg("neff_hi") = 1.0e6,
        py::arg("offset_bound_mhz") = 15.0);
    m.def(
        "fit_maxima_trace",
        [](const std::vector<double>& cavity, const std::vector<double>& drive_at_max,
           const std::vector<bool>& defined, const CavityDriveParams& fixed,
           const std::vector<double>& strengths, const LevelScheme& scheme, double neff_lo,
           double neff_hi, double ridge_threshold) {
            MaximaTrace trace;
            trace.cavity_mhz = cavity;
            trace.drive_at_max_mhz = drive_at_max;
            trace.defined = defined;
            TraceFitConfig config;
            config.fixed = fixed;
            config.neff_lo = neff_lo;
            config.neff_hi = neff_hi;
            config.map_options.ridge_threshold = ridge_threshold;
            return fit_maxima_trace(trace, config, AveragedStrengths{strengths}, scheme);
        },
        py::arg("cavity_mhz"), py::arg("drive_at_max_mhz"), py::arg("defined"), py::arg("fixed"),
        py::arg("strengths"), py::arg("scheme"), py::arg("neff_lo") = 1.0e3,
        py::arg("neff_hi") = 1.0e6, py::arg("ridge_threshold") = 2.0);
}
