// eotk — command-line front end for the electro-optic transducer toolkit.
//
// Subcommands:
//   convert    single operating point: efficiency, cooperativity, pump photons
//   sweep      run the scenario's sweep and write CSV/JSON tables
//   fit        infer g0 from a measured efficiency
//   optimize   maximize efficiency over the extrinsic coupling rates
//   calibrate  heterodyne gain arithmetic and on/off-chip decomposition
//   coupling   g0 overlap integral from field-grid files

#include "eotk/calibration.hpp"
#include "eotk/constants.hpp"
#include "eotk/coupling.hpp"
#include "eotk/scenario.hpp"
#include "eotk/transduction.hpp"
#include "eotk/units.hpp"

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

namespace fs = std::filesystem;

std::string default_out_dir() {
    if (const char* env = std::getenv("EOTK_OUT_DIR")) {
        return env;
    }
    return ".";
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write output file: " + path.string());
    }
    out << content;
}

int run_convert(const std::string& scenario_path) {
    const eotk::SweepScenario sc = eotk::load_scenario(scenario_path);
    const eotk::ConversionResult full = eotk::efficiency_full(sc.device, sc.pump, sc.mw);
    const double low_c = eotk::efficiency_low_c(sc.device, sc.pump, sc.mw);
    const double p_uw = sc.pump.power_feed_waveguide * 1e6;

    std::printf("pump_power_uw          %.6g\n", p_uw);
    std::printf("eta_low_c              %.6g\n", low_c);
    std::printf("eta_full               %.6g\n", full.efficiency);
    std::printf("cooperativity          %.6g\n", full.cooperativity);
    std::printf("n_pump_photons         %.6g\n", full.n_pump_photons);
    if (p_uw > 0.0) {
        std::printf("eta_low_c_per_uw       %.6g\n", low_c / p_uw);
        std::printf("cooperativity_per_uw   %.6g\n", full.cooperativity / p_uw);
        std::printf("n_pump_photons_per_uw  %.6g\n", full.n_pump_photons / p_uw);
    }
    const eotk::MicrowaveDrive on_res{sc.device.omega_c, 0.0};
    std::printf("selectivity_db         %.6g\n", eotk::selectivity(sc.device, sc.weighting));
    std::printf("bandwidth_hz           %.6g\n",
                eotk::conversion_bandwidth(sc.device, sc.pump));
    (void)on_res;
    return 0;
}

int run_sweep_cmd(const std::string& scenario_path, const std::string& out_dir,
                  const std::string& format) {
    const eotk::SweepScenario sc = eotk::load_scenario(scenario_path);
    eotk::SweepResult result = eotk::run_sweep(sc);
    result.scenario_echo = fs::path(scenario_path).filename().string();

    const fs::path dir(out_dir);
    fs::create_directories(dir);
    const std::string stem = fs::path(scenario_path).stem().string();
    if (format == "csv" || format == "both") {
        write_file(dir / (stem + ".csv"), eotk::to_csv(result));
        std::printf("wrote %s\n", (dir / (stem + ".csv")).string().c_str());
    }
    if (format == "json" || format == "both") {
        write_file(dir / (stem + ".json"), eotk::to_json(result));
        std::printf("wrote %s\n", (dir / (stem + ".json")).string().c_str());
    }
    return 0;
}

int run_fit(const std::string& scenario_path, double eta_per_uw) {
    const eotk::SweepScenario sc = eotk::load_scenario(scenario_path);
    eotk::FitRequest req;
    req.measured_efficiency_per_watt = eta_per_uw * 1e6;
    req.device = sc.device;
    const double g0 = eotk::fit_g0(req);
    std::printf("g0_hz  %.6g\n", g0 / eotk::constants::two_pi);
    return 0;
}

int run_optimize(const std::string& scenario_path, double bound_scale) {
    const eotk::SweepScenario sc = eotk::load_scenario(scenario_path);
    eotk::Bounds bb{sc.device.kappa_b_e / bound_scale, sc.device.kappa_b_e * bound_scale};
    eotk::Bounds bc{sc.device.kappa_c_e / bound_scale, sc.device.kappa_c_e * bound_scale};
    const eotk::OptimizeResult r = eotk::optimize_coupling(sc.device, sc.pump, bb, bc);
    std::printf("kappa_b_e_hz  %.6g\n", r.kappa_b_e / eotk::constants::two_pi);
    std::printf("kappa_c_e_hz  %.6g\n", r.kappa_c_e / eotk::constants::two_pi);
    std::printf("eta           %.6g\n", r.efficiency);
    std::printf("on_boundary   %s\n", r.on_boundary ? "true" : "false");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Triply-resonant electro-optic transducer design toolkit"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = default_out_dir();
    std::string format = "csv";
    int threads = 0;

    app.add_option("--threads", threads, "OpenMP thread count (0 = runtime default)");

    CLI::App* convert = app.add_subcommand("convert", "Evaluate one operating point");
    convert->add_option("--scenario", scenario_path, "Scenario file")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
    sweep->add_option("--scenario", scenario_path, "Scenario file")->required();
    sweep->add_option("--out", out_dir, "Output directory");
    sweep->add_option("--format", format, "csv|json|both")
        ->check(CLI::IsMember({"csv", "json", "both"}));

    double eta_per_uw = 0.0;
    CLI::App* fit = app.add_subcommand("fit", "Infer g0 from a measured efficiency");
    fit->add_option("--scenario", scenario_path, "Scenario file")->required();
    fit->add_option("--eta-per-uw", eta_per_uw, "Measured efficiency per uW pump")->required();

    double bound_scale = 100.0;
    CLI::App* optimize = app.add_subcommand("optimize", "Optimize extrinsic couplings");
    optimize->add_option("--scenario", scenario_path, "Scenario file")->required();
    optimize->add_option("--bound-scale", bound_scale,
                         "Search each extrinsic rate within [x/scale, x*scale]");

    double p_sideband = -1.0, p_mw = -1.0, p_lo = 0.0, gain = 0.0, eta_offchip = 0.0;
    CLI::App* calibrate = app.add_subcommand("calibrate", "Heterodyne calibration arithmetic");
    calibrate->add_option("--p-lo", p_lo, "LO power (W)");
    calibrate->add_option("--gain", gain, "Heterodyne gain G (1/W)");
    calibrate->add_option("--p-sideband", p_sideband, "Sideband power (W), forward direction");
    calibrate->add_option("--p-mw", p_mw, "Power at the RSA (W), inverse direction");
    calibrate->add_option("--eta-offchip", eta_offchip, "Off-chip efficiency to decompose");
    calibrate->add_option("--scenario", scenario_path,
                          "Scenario file providing the [calibration] section");

    std::string field_a, field_b, field_c;
    double r33 = 30.9e-12, n_e = 2.14;
    bool full_tensor = false;
    CLI::App* coupling = app.add_subcommand("coupling", "g0 from field-grid files");
    coupling->add_option("--field-a", field_a, "Mode a field file")->required();
    coupling->add_option("--field-b", field_b, "Mode b field file")->required();
    coupling->add_option("--field-c", field_c, "Mode c field file")->required();
    coupling->add_option("--r33", r33, "EO coefficient r33 (m/V)");
    coupling->add_option("--n-e", n_e, "Extraordinary refractive index");
    coupling->add_flag("--full", full_tensor,
                       "Use the full r-tensor overlap (r33 entry only) instead of the "
                       "z-component approximation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

#ifdef _OPENMP
    if (threads > 0) {
        omp_set_num_threads(threads);
    }
#endif

    try {
        if (convert->parsed()) {
            return run_convert(scenario_path);
        }
        if (sweep->parsed()) {
            return run_sweep_cmd(scenario_path, out_dir, format);
        }
        if (fit->parsed()) {
            return run_fit(scenario_path, eta_per_uw);
        }
        if (optimize->parsed()) {
            return run_optimize(scenario_path, bound_scale);
        }
        if (calibrate->parsed()) {
            if (p_sideband >= 0.0) {
                std::printf("p_mw_w  %.6g\n",
                            eotk::rsa_power_from_sideband(p_sideband, p_lo, gain));
            }
            if (p_mw >= 0.0) {
                std::printf("p_sideband_w  %.6g\n",
                            eotk::sideband_power_from_rsa(p_mw, p_lo, gain));
            }
            if (eta_offchip > 0.0) {
                eotk::CalibrationChain chain;
                if (!scenario_path.empty()) {
                    const eotk::SweepScenario sc = eotk::load_scenario(scenario_path);
                    if (!sc.calibration) {
                        throw std::runtime_error("scenario has no [calibration] section");
                    }
                    chain = *sc.calibration;
                }
                const eotk::EfficiencyDecomposition d =
                    eotk::efficiency_decomposition(eta_offchip, chain);
                std::printf("eta_onchip_nominal  %.6g\n", d.on_chip_nominal);
                std::printf("eta_onchip_low      %.6g\n", d.on_chip_low);
                std::printf("eta_onchip_high     %.6g\n", d.on_chip_high);
            }
            return 0;
        }
        if (coupling->parsed()) {
            const eotk::FieldGrid a = eotk::read_field_grid(field_a);
            const eotk::FieldGrid b = eotk::read_field_grid(field_b);
            const eotk::FieldGrid c = eotk::read_field_grid(field_c);
            eotk::CouplingRate g;
            if (full_tensor) {
                g = eotk::g0_overlap_full(a, b, c, eotk::EOTensor::r33_only(r33));
            } else {
                g = eotk::g0_overlap_r33(a, b, c, n_e, r33);
            }
            std::printf("g0_hz      %.6g\n", g.magnitude / eotk::constants::two_pi);
            std::printf("phase_rad  %.6g\n", g.phase);
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
