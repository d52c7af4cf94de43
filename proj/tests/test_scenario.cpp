#include "eotk/constants.hpp"
#include "eotk/scenario.hpp"

#include <doctest.h>

#include <stdexcept>
#ifdef _OPENMP
#include <omp.h>
#endif
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

using namespace eotk;

namespace {
constexpr double tau = constants::two_pi;

const char* device_block = R"([device]
freq_a_hz = 193.411e12
freq_b_hz = 193.4178e12
freq_c_hz = 6.801e9
kappa_a_i_hz = 717e6
kappa_a_e_hz = 206e6
kappa_b_i_hz = 466e6
kappa_b_e_hz = 134e6
kappa_c_i_hz = 12.8e6
kappa_c_e_hz = 4.4e6
g0_hz = 1.2e3
mu_hz = 3.4e9
)";

const char* drive_block = R"([pump]
freq_hz = 193.411e12
power_w = 1e-6

[mw]
freq_hz = 6.801e9
power_w = 1e-9
)";

std::string scenario_text(const std::string& sweep_block, const std::string& extra = "") {
    return std::string("schema = 1\n") + extra + device_block + drive_block + sweep_block;
}

DeviceParams published_device() {
    return parse_scenario(scenario_text(""), "inline").device;
}
} // namespace

TEST_CASE("a complete scenario parses into physical units") {
    const SweepScenario sc = parse_scenario(scenario_text(R"([sweep]
axis = pump_power
start = 1e-9
stop = 1e-6
count = 5
outputs = eta_low_c, cooperativity
)"),
                                            "inline");
    CHECK(sc.device.omega_a == doctest::Approx(tau * 193.411e12).epsilon(1e-15));
    CHECK(sc.device.kappa_a() == doctest::Approx(tau * 923e6).epsilon(1e-15));
    CHECK(sc.device.kappa_c() == doctest::Approx(tau * 21.6e6).epsilon(1e-15));
    CHECK(sc.pump.power_feed_waveguide == 1e-6);
    CHECK(sc.mw.power_at_device == 1e-9);
    CHECK(sc.sweep_axis == SweepAxis::pump_power);
    CHECK(sc.axis_range.count == 5);
    REQUIRE(sc.outputs.size() == 2);
    CHECK(sc.outputs[0] == "eta_low_c");
    CHECK(sc.outputs[1] == "cooperativity");
    CHECK(sc.weighting == SidebandWeighting::equal);
    CHECK_FALSE(sc.calibration.has_value());
}

TEST_CASE("parse errors carry the origin, line and field") {
    using doctest::Contains;
    // missing schema
    CHECK_THROWS_WITH_AS(parse_scenario(std::string(device_block) + drive_block, "f.scn"),
                         Contains("schema"), ScenarioError);
    // unsupported schema version
    CHECK_THROWS_WITH_AS(
        parse_scenario(std::string("schema = 2\n") + device_block + drive_block, "f.scn"),
        Contains("unsupported schema version '2'"), ScenarioError);
    // unknown field with its line number: 'bogus' lands on line 14, right
    // after the 11 device keys
    CHECK_THROWS_WITH_AS(
        parse_scenario(std::string("schema = 1\n") + device_block + "bogus = 1\n" +
                           drive_block,
                       "f.scn"),
        Contains("f.scn:14"), ScenarioError);
    CHECK_THROWS_WITH_AS(
        parse_scenario(std::string("schema = 1\n") + device_block + "bogus = 1\n" +
                           drive_block,
                       "f.scn"),
        Contains("device.bogus"), ScenarioError);
    // non-numeric value names the field
    std::string text = scenario_text("");
    const auto pos = text.find("g0_hz = 1.2e3");
    text.replace(pos, std::string("g0_hz = 1.2e3").size(), "g0_hz = twelve");
    CHECK_THROWS_WITH_AS(parse_scenario(text, "f.scn"), Contains("device.g0_hz"),
                         ScenarioError);
    // missing section
    CHECK_THROWS_WITH_AS(parse_scenario(std::string("schema = 1\n") + device_block, "f.scn"),
                         Contains("missing section [pump]"), ScenarioError);
    // malformed line
    CHECK_THROWS_WITH_AS(parse_scenario("schema = 1\nnonsense\n", "f.scn"),
                         Contains("f.scn:2"), ScenarioError);
    // unknown top-level key
    CHECK_THROWS_WITH_AS(parse_scenario(scenario_text("") + "stray = 1\n", "f.scn"),
                         Contains("stray"), ScenarioError);
    // sweep with too few points
    CHECK_THROWS_WITH_AS(parse_scenario(scenario_text(R"([sweep]
axis = pump_power
start = 1e-9
stop = 1e-6
count = 1
outputs = eta_low_c
)"),
                                        "f.scn"),
                         Contains("count"), ScenarioError);
    // unknown axis
    CHECK_THROWS_WITH_AS(parse_scenario(scenario_text(R"([sweep]
axis = magnetic_field
start = 0
stop = 1
count = 3
outputs = eta_low_c
)"),
                                        "f.scn"),
                         Contains("magnetic_field"), ScenarioError);
    // device validation failures point at the scenario
    std::string neg = scenario_text("");
    const auto kpos = neg.find("kappa_b_i_hz = 466e6");
    neg.replace(kpos, std::string("kappa_b_i_hz = 466e6").size(), "kappa_b_i_hz = -1");
    CHECK_THROWS_WITH_AS(parse_scenario(neg, "f.scn"), Contains("kappa_b_i"),
                         ScenarioError);
}

TEST_CASE("unknown sweep outputs list the valid names") {
    SweepScenario sc = parse_scenario(scenario_text(R"([sweep]
axis = pump_power
start = 1e-9
stop = 1e-6
count = 3
outputs = eta_low_c
)"),
                                      "inline");
    sc.outputs = {"voltage_noise"};
    using doctest::Contains;
    CHECK_THROWS_WITH_AS(run_sweep(sc), Contains("valid outputs"), ScenarioError);
    CHECK_THROWS_WITH_AS(run_sweep(sc), Contains("eta_low_c"), ScenarioError);
    const auto names = valid_outputs(SweepAxis::bias_voltage);
    CHECK(std::find(names.begin(), names.end(), "splitting_hz") != names.end());
    CHECK(std::find(names.begin(), names.end(), "eta_low_c") == names.end());
}

TEST_CASE("two-point sweeps hit both endpoints exactly") {
    const SweepScenario sc = parse_scenario(scenario_text(R"([sweep]
axis = pump_power
start = 1e-9
stop = 1e-6
count = 2
outputs = eta_low_c
)"),
                                            "inline");
    const SweepResult r = run_sweep(sc);
    REQUIRE(r.column_names.size() == 2);
    CHECK(r.column_names[0] == "pump_power_w");
    REQUIRE(r.columns[0].size() == 2);
    CHECK(r.columns[0][0] == 1e-9);
    CHECK(r.columns[0][1] == 1e-6);
    // low-C efficiency is linear in pump power
    CHECK(r.columns[1][1] == doctest::Approx(1e3 * r.columns[1][0]).epsilon(1e-12));
}

TEST_CASE("pump-frequency sweep peaks on the supermodes") {
    const SweepScenario sc = parse_scenario(scenario_text(R"([sweep]
axis = pump_frequency
start = 193.400e12
stop = 193.430e12
count = 301
outputs = eta_anti_stokes, eta_stokes
)"),
                                            "inline");
    const SweepResult r = run_sweep(sc);
    const auto& f = r.columns[0];
    const auto& anti = r.columns[1];
    const auto& stokes = r.columns[2];
    const std::size_t i_anti =
        static_cast<std::size_t>(std::max_element(anti.begin(), anti.end()) - anti.begin());
    // anti-Stokes conversion is strongest pumping mode a (mw drive fills b)
    CHECK(std::abs(f[i_anti] - 193.411e12) < 2e8);
    // at that pump the anti-Stokes sideband dominates by the selectivity
    CHECK(10.0 * std::log10(anti[i_anti] / stokes[i_anti]) ==
          doctest::Approx(24.6).epsilon(0.3 / 24.6));
    // pumping mode b reverses the roles
    const std::size_t i_b = static_cast<std::size_t>(
        std::max_element(stokes.begin(), stokes.end()) - stokes.begin());
    CHECK(std::abs(f[i_b] - 193.4178e12) < 2e8);
    CHECK(stokes[i_b] > anti[i_b]);
}

TEST_CASE("bias sweep tracks the avoided crossing") {
    const SweepScenario sc = parse_scenario(scenario_text(R"([sweep]
axis = bias_voltage
start = -10
stop = 10
count = 201
outputs = freq_a_hz, freq_b_hz, splitting_hz
)",
                                                          R"([bare_modes]
freq_a_hz = 193.4144e12
freq_b_hz = 193.4144e12
mu_hz = 3.4e9
g_v_dc_hz_per_v = 1e9
)"),
                                            "inline");
    const SweepResult r = run_sweep(sc);
    const auto& split = r.columns[3];
    const double min_split = *std::min_element(split.begin(), split.end());
    // degenerate bare modes: the gap closes to 2*mu at zero bias
    CHECK(min_split == doctest::Approx(6.8e9).epsilon(1e-9));
    for (std::size_t i = 0; i < split.size(); ++i) {
        CHECK(r.columns[2][i] - r.columns[1][i] == doctest::Approx(split[i]).epsilon(1e-9));
        CHECK(split[i] >= min_split * (1.0 - 1e-12));
    }
    // without [bare_modes] the sweep is rejected
    SweepScenario no_bare = sc;
    no_bare.bare_modes.reset();
    CHECK_THROWS_WITH_AS(run_sweep(no_bare), doctest::Contains("bare_modes"), ScenarioError);
}

TEST_CASE("temperature sweep of the thermal occupancy") {
    const SweepScenario sc = parse_scenario(scenario_text(R"([sweep]
axis = temperature
start = 0.01
stop = 4.0
count = 50
outputs = thermal_occupancy
)"),
                                            "inline");
    const SweepResult r = run_sweep(sc);
    const auto& n = r.columns[1];
    CHECK(std::is_sorted(n.begin(), n.end()));
    CHECK(n.front() < 1e-13);
    CHECK(n.back() > 1.0);
}

TEST_CASE("sweep output bytes do not depend on the schedule") {
    const SweepScenario sc = parse_scenario(scenario_text(R"([sweep]
axis = microwave_frequency
start = 6.701e9
stop = 6.901e9
count = 401
outputs = eta_low_c, eta_full
)"),
                                            "inline");
    const std::string serial = to_csv(run_sweep(sc, 1 << 30));
    const std::string parallel = to_csv(run_sweep(sc, 1));
    CHECK(serial == parallel);
#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
    for (int threads : {1, 2, 3}) {
        omp_set_num_threads(threads);
        CHECK(to_csv(run_sweep(sc, 1)) == serial);
    }
    omp_set_num_threads(max_threads);
#endif
}

TEST_CASE("fitting the coupling rate from a measured efficiency") {
    FitRequest req;
    req.device = published_device();
    req.measured_efficiency_per_watt = 9.5e-8 / 1e-6; // 9.5e-8 per uW
    const double g0 = fit_g0(req);
    CHECK(g0 / tau == doctest::Approx(1.187e3).epsilon(1e-3));
    // exact roundtrip through the forward model on a perfectly
    // triply-resonant device (the fit inverts the zero-detuning peak)
    DeviceParams with_g0 = req.device;
    with_g0.omega_b = with_g0.omega_a + with_g0.omega_c;
    with_g0.g0 = g0;
    const double eta =
        efficiency_low_c(with_g0, {with_g0.omega_a, 1e-6}, {with_g0.omega_c, 1e-9});
    CHECK(eta == doctest::Approx(9.5e-8).epsilon(1e-12));
    CHECK_THROWS_AS(fit_g0(FitRequest{0.0, published_device()}), std::domain_error);
}

TEST_CASE("coupling optimization finds the matched extrinsic rates") {
    const DeviceParams dev = published_device();
    const PumpDrive pump{dev.omega_a, 1e-6};
    const OptimizeResult r = optimize_coupling(dev, pump, {tau * 1e6, tau * 5e9},
                                               {tau * 0.1e6, tau * 100e6});
    // matched extraction: kappa_b_e = kappa_b_i, kappa_c_e = kappa_c_i / 2
    CHECK(r.kappa_b_e / tau == doctest::Approx(466e6).epsilon(1e-6));
    CHECK(r.kappa_c_e / tau == doctest::Approx(6.4e6).epsilon(1e-6));
    CHECK_FALSE(r.on_boundary);
    // stationarity by central differences
    auto eta_at = [&](double kbe, double kce) {
        DeviceParams d = dev;
        d.kappa_b_e = kbe;
        d.kappa_c_e = kce;
        return efficiency_low_c(d, pump, {dev.omega_c, 1e-9});
    };
    const double h = 1e-6;
    const double db = (eta_at(r.kappa_b_e * (1 + h), r.kappa_c_e) -
                       eta_at(r.kappa_b_e * (1 - h), r.kappa_c_e)) /
                      (2 * h * r.efficiency);
    const double dc = (eta_at(r.kappa_b_e, r.kappa_c_e * (1 + h)) -
                       eta_at(r.kappa_b_e, r.kappa_c_e * (1 - h))) /
                      (2 * h * r.efficiency);
    CHECK(std::abs(db) < 1e-5);
    CHECK(std::abs(dc) < 1e-5);
    // the optimizer's own efficiency matches the forward model at its point
    CHECK(r.efficiency == doctest::Approx(eta_at(r.kappa_b_e, r.kappa_c_e)).epsilon(1e-9));
    // bounds that exclude the optimum pin the result to an edge
    const OptimizeResult clipped = optimize_coupling(dev, pump, {tau * 1e6, tau * 100e6},
                                                     {tau * 0.1e6, tau * 1e6});
    CHECK(clipped.on_boundary);
    CHECK(clipped.kappa_b_e == doctest::Approx(tau * 100e6).epsilon(1e-4));
    CHECK_THROWS_AS(optimize_coupling(dev, pump, {0.0, 1.0}, {tau * 1e6, tau * 2e6}),
                    std::invalid_argument);
}

TEST_CASE("csv serialization") {
    SweepResult r;
    r.column_names = {"x", "eta, raw", "with\"quote"};
    r.columns = {{1.0, 0.5}, {1e-300, 9.7149999999999993e-08}, {0.0, -2.5}};
    r.toolkit_version = toolkit_version;
    const std::string csv = to_csv(r);
    CHECK(csv.substr(0, csv.find('\n')) == "x,\"eta, raw\",\"with\"\"quote\"");
    // 17 significant digits survive a print/scan roundtrip bit-exactly
    std::istringstream rows(csv.substr(csv.find('\n') + 1));
    std::string line;
    for (std::size_t row = 0; std::getline(rows, line); ++row) {
        std::istringstream fields(line);
        std::string field;
        for (std::size_t col = 0; std::getline(fields, field, ','); ++col) {
            if (field.empty() || field.front() == '"') {
                continue;
            }
            CHECK(std::stod(field) == r.columns[col][row]);
        }
    }
    // byte-for-byte repeatable
    CHECK(to_csv(r) == csv);
}

TEST_CASE("json serialization carries the metadata") {
    const SweepScenario sc = parse_scenario(scenario_text(R"([sweep]
axis = pump_power
start = 1e-9
stop = 1e-6
count = 3
outputs = eta_low_c
)"),
                                            "inline");
    SweepResult r = run_sweep(sc);
    r.scenario_echo = "inline";
    const std::string text = to_json(r);
    const nlohmann::json j = nlohmann::json::parse(text);
    CHECK(j["metadata"]["toolkit_version"] == "0.1.0");
    CHECK(j["metadata"]["scenario"] == "inline");
    REQUIRE(j["columns"]["pump_power_w"].size() == 3);
    CHECK(j["columns"]["pump_power_w"][2] == 1e-6);
    CHECK(to_json(r) == text);
}

TEST_CASE("weighting switch is parsed and rejected when unknown") {
    const SweepScenario sc =
        parse_scenario(scenario_text("", "weighting = interaction\n"), "inline");
    CHECK(sc.weighting == SidebandWeighting::interaction);
    CHECK_THROWS_WITH_AS(parse_scenario(scenario_text("", "weighting = fancy\n"), "inline"),
                         doctest::Contains("weighting"), ScenarioError);
}
