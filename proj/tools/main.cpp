// cavmagic: polarization-resolved scattering of a driven atomic ensemble
// into a two-mode cavity. Subcommands emit plot-ready CSV/JSON plus a run
// manifest sufficient to reproduce every output bit for bit.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cavmagic/coupling.hpp"
#include "cavmagic/ensemble.hpp"
#include "cavmagic/fitting.hpp"
#include "cavmagic/manifest.hpp"
#include "cavmagic/polariton.hpp"
#include "cavmagic/scattering.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cavmagic;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CommonOptions {
    std::string levels_path;
    std::string dist_spec = "uniform";
    std::string out_dir = ".";

    std::string levels_text() const {
        return levels_path.empty() ? default_level_scheme_text() : slurp(levels_path);
    }
    LevelScheme scheme() const {
        return levels_path.empty() ? default_level_scheme() : load_level_scheme(levels_path);
    }
    std::string path_for(const std::string& name) const {
        fs::create_directories(out_dir);
        return (fs::path(out_dir) / name).string();
    }
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_dist = true) {
    cmd->add_option("--levels", opt.levels_path, "Level-scheme JSON document (default: built-in)");
    if (with_dist) {
        cmd->add_option("--dist", opt.dist_spec,
                        "Zeeman distribution: 'uniform' or 'm=<m>:<w>[,m=<m>:<w>...]'");
    }
    cmd->add_option("--out-dir", opt.out_dir, "Output directory")->capture_default_str();
}

ZeemanDistribution parse_dist(const std::string& spec, HalfInteger f) {
    if (spec == "uniform") return ZeemanDistribution::uniform(f);
    std::vector<double> weights(static_cast<std::size_t>(f.twice() + 1), 0.0);
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double m_value = 0.0;
        double weight = 0.0;
        if (std::sscanf(item.c_str(), "m=%lf:%lf", &m_value, &weight) != 2) {
            throw std::runtime_error("bad --dist entry '" + item +
                                     "', expected m=<sublevel>:<weight>");
        }
        const HalfInteger m = HalfInteger::from_double(m_value);
        if (!valid_projection(f, m)) {
            throw std::runtime_error("--dist sublevel m=" + m.str() + " invalid for F=" + f.str());
        }
        weights[static_cast<std::size_t>((m.twice() + f.twice()) / 2)] += weight;
    }
    return ZeemanDistribution::from_weights(f, weights);
}

json dist_json(const ZeemanDistribution& dist) {
    json j;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        j["m=" + dist.m_at(i).str()] = dist.populations()[i];
    }
    return j;
}

void write_manifest(const CommonOptions& opt, const std::string& name, json params,
                    std::optional<std::uint64_t> seed = std::nullopt,
                    const std::string& rng = "") {
    RunManifest manifest;
    manifest.subcommand = name;
    params["levels"] = opt.levels_path.empty() ? "builtin" : opt.levels_path;
    manifest.parameters = std::move(params);
    manifest.level_scheme_checksum = fnv1a64_hex(opt.levels_text());
    manifest.seed = seed;
    manifest.rng_name = rng;
    manifest.write(opt.path_for(name + "_manifest.json"));
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

struct GridFlags {
    double from = 0.0;
    double to = 0.0;
    double step = 0.0;
};

int run_spectrum(const CommonOptions& opt, const GridFlags& grid, const DriveParams& drive) {
    const LevelScheme scheme = opt.scheme();
    const auto dist = parse_dist(opt.dist_spec, scheme.ground_f);
    const auto table = coupling_table(scheme);
    const Spectrum s =
        averaged_spectrum(dist, make_grid(grid.from, grid.to, grid.step), scheme, table, drive);
    write_spectrum_csv(s, opt.path_for("spectrum.csv"));
    write_manifest(opt, "spectrum",
                   json{{"from_mhz", grid.from},
                        {"to_mhz", grid.to},
                        {"step_mhz", grid.step},
                        {"rows", s.size()},
                        {"dist", dist_json(dist)},
                        {"eta_plus", drive.eta_plus},
                        {"eta_minus", drive.eta_minus},
                        {"prefactor", drive.prefactor}});
    return 0;
}

int run_magic(const CommonOptions& opt, const CavityDriveParams& params) {
    const LevelScheme scheme = opt.scheme();
    const auto dist = parse_dist(opt.dist_spec, scheme.ground_f);
    const auto strengths = zeeman_average(coupling_table(scheme), dist);
    const MagicFrequency mf = find_magic_frequency(strengths, scheme, params);
    json out{{"omega_star_mhz", mf.omega_star_mhz},
             {"p1_per_mhz2", mf.p1_per_mhz2},
             {"kappa_eff_mhz", mf.kappa_eff_mhz},
             {"pol_min_mhz", polarizability_minimum(strengths, scheme)},
             {"observed_dip_mhz", observed_dip_mhz}};
    write_json_file(opt.path_for("magic.json"), out);
    write_manifest(opt, "magic",
                   json{{"kappa_mhz", params.kappa_mhz},
                        {"g_mhz", params.g_mhz},
                        {"n_eff", params.n_eff},
                        {"dist", dist_json(dist)}});
    return 0;
}

int run_dip(const CommonOptions& opt, CavityDriveParams params, GridFlags grid) {
    const LevelScheme scheme = opt.scheme();
    const auto dist = parse_dist(opt.dist_spec, scheme.ground_f);
    const auto strengths = zeeman_average(coupling_table(scheme), dist);
    if (std::isnan(grid.from) || std::isnan(grid.to)) {
        const double wstar = find_magic_frequency(strengths, scheme, params).omega_star_mhz;
        grid.from = wstar - 40.0;
        grid.to = wstar + 40.0;
    }
    Spectrum s;
    s.detuning_mhz = make_grid(grid.from, grid.to, grid.step);
    for (double w : s.detuning_mhz) {
        s.rate_y.push_back(coherent_photon_number(w, params, strengths, scheme));
        s.rate_z.push_back(0.0);  // the coherent channel drives only the y mode
    }
    write_spectrum_csv(s, opt.path_for("dip.csv"));
    write_manifest(opt, "dip",
                   json{{"from_mhz", grid.from},
                        {"to_mhz", grid.to},
                        {"step_mhz", grid.step},
                        {"kappa_mhz", params.kappa_mhz},
                        {"g_mhz", params.g_mhz},
                        {"n_eff", params.n_eff},
                        {"delta_c_mhz", params.delta_c_mhz},
                        {"eta", params.eta},
                        {"spatial_factor", params.spatial_factor},
                        {"dist", dist_json(dist)}});
    return 0;
}

int run_map(const CommonOptions& opt, CavityDriveParams params, GridFlags drive, GridFlags cavity,
            const Map2dOptions& map_options) {
    const LevelScheme scheme = opt.scheme();
    const auto dist = parse_dist(opt.dist_spec, scheme.ground_f);
    const auto strengths = zeeman_average(coupling_table(scheme), dist);
    if (std::isnan(drive.from) || std::isnan(drive.to)) {
        const double wstar = find_magic_frequency(strengths, scheme, params).omega_star_mhz;
        drive.from = wstar - 20.0;
        drive.to = wstar + 20.0;
    }
    if (std::isnan(cavity.from) || std::isnan(cavity.to)) {
        cavity.from = drive.from;
        cavity.to = drive.to;
    }
    const Map2d map = map_2d(make_grid(drive.from, drive.to, drive.step),
                             make_grid(cavity.from, cavity.to, cavity.step), params, strengths,
                             scheme, map_options);
    write_map_matrix_csv(map, opt.path_for("map_matrix.csv"));
    write_ridge_trace_csv(map.ridge, opt.path_for("map_ridge_trace.csv"));
    write_diag_trace_csv(map.diag, opt.path_for("map_diag_trace.csv"));
    write_manifest(opt, "map",
                   json{{"drive", {{"from_mhz", drive.from},
                                   {"to_mhz", drive.to},
                                   {"step_mhz", drive.step}}},
                        {"cavity", {{"from_mhz", cavity.from},
                                    {"to_mhz", cavity.to},
                                    {"step_mhz", cavity.step}}},
                        {"kappa_mhz", params.kappa_mhz},
                        {"g_mhz", params.g_mhz},
                        {"n_eff", params.n_eff},
                        {"eta", params.eta},
                        {"spatial_factor", params.spatial_factor},
                        {"ridge_threshold", map_options.ridge_threshold},
                        {"diag_threshold", map_options.diag_threshold},
                        {"dist", dist_json(dist)}});
    return 0;
}

int run_ensemble(const CommonOptions& opt, std::size_t n, std::uint64_t seed, double extent_x,
                 double extent_z, const std::string& phases_path) {
    AtomCloud cloud;
    if (!phases_path.empty()) {
        const AtomCloud given = read_cloud_csv(phases_path);
        std::vector<std::array<double, 2>> phases;
        for (std::size_t i = 0; i < given.size(); ++i) {
            phases.push_back({given.phase_x_rad[i], given.phase_z_rad[i]});
        }
        cloud = sample_cloud(phases.size(), CloudGeometry::explicit_phases(std::move(phases)),
                             seed);
    } else {
        cloud = sample_cloud(n, CloudGeometry::uniform(extent_x, extent_z), seed);
    }
    write_cloud_csv(cloud, opt.path_for("cloud.csv"));
    write_json_file(opt.path_for("ensemble.json"),
                    json{{"n", cloud.size()},
                         {"n_eff", effective_atom_number(cloud)},
                         {"spatial_factor", spatial_factor(cloud)},
                         {"geometry", cloud.geometry},
                         {"rng", cloud.rng_name},
                         {"seed", cloud.seed}});
    write_manifest(opt, "ensemble",
                   json{{"n", cloud.size()},
                        {"geometry", cloud.geometry},
                        {"phases_file", phases_path}},
                   cloud.seed, cloud.rng_name);
    return 0;
}

int run_fit_prefactor(const CommonOptions& opt, const std::string& model_path,
                      const std::string& data_path, const std::string& window_spec,
                      const std::string& channel) {
    double lo = 0.0;
    double hi = 0.0;
    if (std::sscanf(window_spec.c_str(), "%lf:%lf", &lo, &hi) != 2) {
        throw std::runtime_error("bad --window '" + window_spec + "', expected <lo>:<hi>");
    }
    const Polarization pol = channel == "z" ? Polarization::z : Polarization::y;
    FitResult fit = fit_prefactor(read_spectrum_csv(model_path), read_spectrum_csv(data_path),
                                  {lo, hi}, pol);
    fit.input_checksums["model"] = fnv1a64_hex(slurp(model_path));
    fit.input_checksums["data"] = fnv1a64_hex(slurp(data_path));
    std::ofstream out(opt.path_for("fit_prefactor.json"));
    out << fit.to_json() << "\n";
    write_manifest(opt, "fit_prefactor",
                   json{{"model", model_path},
                        {"data", data_path},
                        {"window_mhz", {lo, hi}},
                        {"channel", channel}});
    return fit.converged ? 0 : 1;
}

int run_fit_dip(const CommonOptions& opt, const std::string& data_path, DipFitConfig config) {
    const LevelScheme scheme = opt.scheme();
    const auto dist = parse_dist(opt.dist_spec, scheme.ground_f);
    const auto strengths = zeeman_average(coupling_table(scheme), dist);
    FitResult fit = fit_dip(read_spectrum_csv(data_path), config, strengths, scheme);
    fit.input_checksums["data"] = fnv1a64_hex(slurp(data_path));
    std::ofstream out(opt.path_for("fit_dip.json"));
    out << fit.to_json() << "\n";
    write_manifest(opt, "fit_dip",
                   json{{"data", data_path},
                        {"kappa_mhz", config.fixed.kappa_mhz},
                        {"g_mhz", config.fixed.g_mhz},
                        {"delta_c_mhz", config.fixed.delta_c_mhz},
                        {"neff_bounds", {config.neff_lo, config.neff_hi}},
                        {"freq_offset_bound_mhz", config.freq_offset_bound_mhz},
                        {"neff_starts", config.neff_starts},
                        {"dist", dist_json(dist)}});
    if (!fit.converged) {
        std::cerr << R"({"error": "fit dip did not converge"})" << "\n";
        return 1;
    }
    return 0;
}

int run_fit_trace(const CommonOptions& opt, const std::string& trace_path,
                  TraceFitConfig config) {
    const LevelScheme scheme = opt.scheme();
    const auto dist = parse_dist(opt.dist_spec, scheme.ground_f);
    const auto strengths = zeeman_average(coupling_table(scheme), dist);
    FitResult fit = fit_maxima_trace(read_maxima_trace_csv(trace_path), config, strengths, scheme);
    fit.input_checksums["trace"] = fnv1a64_hex(slurp(trace_path));
    std::ofstream out(opt.path_for("fit_trace.json"));
    out << fit.to_json() << "\n";
    write_manifest(opt, "fit_trace",
                   json{{"trace", trace_path},
                        {"kappa_mhz", config.fixed.kappa_mhz},
                        {"g_mhz", config.fixed.g_mhz},
                        {"neff_bounds", {config.neff_lo, config.neff_hi}},
                        {"ridge_threshold", config.map_options.ridge_threshold},
                        {"dist", dist_json(dist)}});
    return fit.converged ? 0 : 1;
}

void add_cavity_flags(CLI::App* cmd, CavityDriveParams& p, bool with_neff_default) {
    cmd->add_option("--kappa", p.kappa_mhz, "Cavity HWHM linewidth [MHz]")->capture_default_str();
    cmd->add_option("--g", p.g_mhz, "Atom-cavity coupling, cycling normalized [MHz]")
        ->capture_default_str();
    if (with_neff_default) {
        cmd->add_option("--neff", p.n_eff, "Effective atom number")->capture_default_str();
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polarization-resolved scattering into a two-mode cavity: single-atom rates, "
                 "collective polariton dip, magic frequencies, ensembles and fits"};
    app.require_subcommand(1);

    // spectrum
    CommonOptions spectrum_opt;
    GridFlags spectrum_grid{-700.0, 100.0, 1.0};
    DriveParams spectrum_drive;
    auto* spectrum_cmd =
        app.add_subcommand("spectrum", "Zeeman-averaged perturbative rates over a detuning grid");
    add_common(spectrum_cmd, spectrum_opt);
    spectrum_cmd->add_option("--from", spectrum_grid.from, "Grid start [MHz]")
        ->capture_default_str();
    spectrum_cmd->add_option("--to", spectrum_grid.to, "Grid end [MHz]")->capture_default_str();
    spectrum_cmd->add_option("--step", spectrum_grid.step, "Grid step [MHz]")
        ->capture_default_str();
    spectrum_cmd->add_option("--prefactor", spectrum_drive.prefactor, "Overall rate scale")
        ->capture_default_str();
    spectrum_cmd->add_option("--eta-plus", spectrum_drive.eta_plus, "sigma+ drive amplitude")
        ->capture_default_str();
    spectrum_cmd->add_option("--eta-minus", spectrum_drive.eta_minus, "sigma- drive amplitude")
        ->capture_default_str();

    // magic
    CommonOptions magic_opt;
    CavityDriveParams magic_params;
    auto* magic_cmd =
        app.add_subcommand("magic", "Collective magic frequency, p1, kappa_eff and |P| minimum");
    add_common(magic_cmd, magic_opt);
    add_cavity_flags(magic_cmd, magic_params, true);

    // dip
    CommonOptions dip_opt;
    CavityDriveParams dip_params;
    GridFlags dip_grid{std::nan(""), std::nan(""), 0.1};
    auto* dip_cmd = app.add_subcommand(
        "dip", "Coherent intracavity photon number around the magic frequency");
    add_common(dip_cmd, dip_opt);
    add_cavity_flags(dip_cmd, dip_params, true);
    dip_cmd->add_option("--delta-c", dip_params.delta_c_mhz, "Drive-cavity detuning [MHz]")
        ->capture_default_str();
    dip_cmd->add_option("--eta", dip_params.eta, "Effective y drive amplitude")
        ->capture_default_str();
    dip_cmd->add_option("--spatial-factor", dip_params.spatial_factor, "Geometric factor S")
        ->capture_default_str();
    dip_cmd->add_option("--from", dip_grid.from, "Grid start [MHz] (default: magic - 40)");
    dip_cmd->add_option("--to", dip_grid.to, "Grid end [MHz] (default: magic + 40)");
    dip_cmd->add_option("--step", dip_grid.step, "Grid step [MHz]")->capture_default_str();

    // map
    CommonOptions map_opt;
    CavityDriveParams map_params;
    map_params.n_eff = 3.0e4;
    GridFlags map_drive{std::nan(""), std::nan(""), 0.5};
    GridFlags map_cavity{std::nan(""), std::nan(""), 0.5};
    Map2dOptions map_options;
    auto* map_cmd = app.add_subcommand(
        "map", "2D photon-number map over drive and cavity frequencies with maxima traces");
    add_common(map_cmd, map_opt);
    add_cavity_flags(map_cmd, map_params, true);
    map_cmd->add_option("--eta", map_params.eta, "Effective y drive amplitude")
        ->capture_default_str();
    map_cmd->add_option("--spatial-factor", map_params.spatial_factor, "Geometric factor S")
        ->capture_default_str();
    map_cmd->add_option("--drive-from", map_drive.from, "Drive grid start [MHz] (default: magic - 20)");
    map_cmd->add_option("--drive-to", map_drive.to, "Drive grid end [MHz] (default: magic + 20)");
    map_cmd->add_option("--drive-step", map_drive.step, "Drive grid step [MHz]")
        ->capture_default_str();
    map_cmd->add_option("--cavity-from", map_cavity.from, "Cavity grid start [MHz] (default: drive window)");
    map_cmd->add_option("--cavity-to", map_cavity.to, "Cavity grid end [MHz]");
    map_cmd->add_option("--cavity-step", map_cavity.step, "Cavity grid step [MHz]")
        ->capture_default_str();
    map_cmd->add_option("--ridge-threshold", map_options.ridge_threshold,
                        "Prominence threshold for per-cavity maxima")
        ->capture_default_str();
    map_cmd->add_option("--diag-threshold", map_options.diag_threshold,
                        "Prominence threshold for per-drive maxima")
        ->capture_default_str();

    // ensemble
    CommonOptions ensemble_opt;
    std::size_t ensemble_n = 100000;
    std::uint64_t ensemble_seed = 0;
    double ensemble_extent_x = 100.0;
    double ensemble_extent_z = 100.0;
    std::string ensemble_phases;
    auto* ensemble_cmd =
        app.add_subcommand("ensemble", "Sample atom positions; report N_eff and S");
    add_common(ensemble_cmd, ensemble_opt, /*with_dist=*/false);
    ensemble_cmd->add_option("--n", ensemble_n, "Number of atoms")->capture_default_str();
    ensemble_cmd->add_option("--seed", ensemble_seed, "RNG seed")->capture_default_str();
    ensemble_cmd->add_option("--extent-x", ensemble_extent_x, "Box extent along the cavity axis [wavelengths]")
        ->capture_default_str();
    ensemble_cmd->add_option("--extent-z", ensemble_extent_z, "Box extent along the drive axis [wavelengths]")
        ->capture_default_str();
    ensemble_cmd->add_option("--phases", ensemble_phases,
                             "Explicit phases CSV (phase_x_rad,phase_z_rad) instead of sampling");

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "Least-squares fits against measured data");
    fit_cmd->require_subcommand(1);

    CommonOptions fitpre_opt;
    std::string fitpre_model;
    std::string fitpre_data;
    std::string fitpre_window;
    std::string fitpre_channel = "y";
    auto* fitpre_cmd =
        fit_cmd->add_subcommand("prefactor", "Single multiplicative scale, closed form");
    add_common(fitpre_cmd, fitpre_opt, /*with_dist=*/false);
    fitpre_cmd->add_option("--model", fitpre_model, "Model spectrum CSV")->required();
    fitpre_cmd->add_option("--data", fitpre_data, "Data spectrum CSV")->required();
    fitpre_cmd->add_option("--window", fitpre_window, "Calibration window <lo>:<hi> [MHz]")
        ->required();
    fitpre_cmd->add_option("--channel", fitpre_channel, "Channel: y or z")->capture_default_str();

    CommonOptions fitdip_opt;
    std::string fitdip_data;
    DipFitConfig fitdip_config;
    auto* fitdip_cmd =
        fit_cmd->add_subcommand("dip", "(prefactor, n_eff, freq offset) of the collective dip");
    add_common(fitdip_cmd, fitdip_opt);
    fitdip_cmd->add_option("--data", fitdip_data, "Measured dip spectrum CSV")->required();
    add_cavity_flags(fitdip_cmd, fitdip_config.fixed, false);
    fitdip_cmd->add_option("--delta-c", fitdip_config.fixed.delta_c_mhz,
                           "Drive-cavity detuning [MHz]")
        ->capture_default_str();
    fitdip_cmd->add_option("--neff-min", fitdip_config.neff_lo, "Lower n_eff bound")
        ->capture_default_str();
    fitdip_cmd->add_option("--neff-max", fitdip_config.neff_hi, "Upper n_eff bound")
        ->capture_default_str();
    fitdip_cmd->add_option("--offset-bound", fitdip_config.freq_offset_bound_mhz,
                           "Frequency-offset bound [MHz]")
        ->capture_default_str();

    CommonOptions fittrace_opt;
    std::string fittrace_path;
    TraceFitConfig fittrace_config;
    fittrace_config.fixed.n_eff = 3.0e4;
    auto* fittrace_cmd = fit_cmd->add_subcommand("trace", "n_eff from a maxima-vs-cavity trace");
    add_common(fittrace_cmd, fittrace_opt);
    fittrace_cmd->add_option("--trace", fittrace_path, "Maxima trace CSV")->required();
    add_cavity_flags(fittrace_cmd, fittrace_config.fixed, false);
    fittrace_cmd->add_option("--neff-min", fittrace_config.neff_lo, "Lower n_eff bound")
        ->capture_default_str();
    fittrace_cmd->add_option("--neff-max", fittrace_config.neff_hi, "Upper n_eff bound")
        ->capture_default_str();
    fittrace_cmd->add_option("--ridge-threshold", fittrace_config.map_options.ridge_threshold,
                             "Prominence threshold for model maxima")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return e.get_exit_code();
    }

    try {
        if (spectrum_cmd->parsed()) return run_spectrum(spectrum_opt, spectrum_grid, spectrum_drive);
        if (magic_cmd->parsed()) return run_magic(magic_opt, magic_params);
        if (dip_cmd->parsed()) return run_dip(dip_opt, dip_params, dip_grid);
        if (map_cmd->parsed()) return run_map(map_opt, map_params, map_drive, map_cavity, map_options);
        if (ensemble_cmd->parsed()) {
            return run_ensemble(ensemble_opt, ensemble_n, ensemble_seed, ensemble_extent_x,
                                ensemble_extent_z, ensemble_phases);
        }
        if (fitpre_cmd->parsed()) {
            return run_fit_prefactor(fitpre_opt, fitpre_model, fitpre_data, fitpre_window,
                                     fitpre_channel);
        }
        if (fitdip_cmd->parsed()) return run_fit_dip(fitdip_opt, fitdip_data, fitdip_config);
        if (fittrace_cmd->parsed()) return run_fit_trace(fittrace_opt, fittrace_path, fittrace_config);
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
