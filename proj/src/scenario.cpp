#include "eotk/scenario.hpp"
#include "eotk/constants.hpp"
#include "eotk/units.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace eotk {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
        return "";
    }
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

struct KeyValue {
    std::string value;
    int line = 0;
    mutable bool used = false;
};

using Section = std::map<std::string, KeyValue>;

double to_double(const std::string& origin, const std::string& key, const KeyValue& kv) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(kv.value, &pos);
        if (pos != kv.value.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw ScenarioError(origin + ":" + std::to_string(kv.line) + ": field '" + key +
                            "': cannot parse number '" + kv.value + "'");
    }
}

class SectionReader {
  public:
    SectionReader(const std::string& origin, const std::string& name, const Section* sec)
        : origin_(origin), name_(name), sec_(sec) {}

    bool present() const { return sec_ != nullptr; }

    double number(const std::string& key) const {
        const KeyValue& kv = find(key);
        kv.used = true;
        return to_double(origin_, name_ + "." + key, kv);
    }

    double number_or(const std::string& key, double fallback) const {
        if (!sec_ || !sec_->count(key)) {
            return fallback;
        }
        return number(key);
    }

    std::string text(const std::string& key) const {
        const KeyValue& kv = find(key);
        kv.used = true;
        return kv.value;
    }

    bool has(const std::string& key) const { return sec_ && sec_->count(key) > 0; }

    void reject_unused() const {
        if (!sec_) {
            return;
        }
        for (const auto& [key, kv] : *sec_) {
            if (!kv.used) {
                throw ScenarioError(origin_ + ":" + std::to_string(kv.line) +
                                    ": unknown field '" + name_ + "." + key + "'");
            }
        }
    }

  private:
    const KeyValue& find(const std::string& key) const {
        if (!sec_) {
            throw ScenarioError(origin_ + ": missing section [" + name_ + "]");
        }
        auto it = sec_->find(key);
        if (it == sec_->end()) {
            throw ScenarioError(origin_ + ": missing field '" + name_ + "." + key + "'");
        }
        return it->second;
    }

    std::string origin_;
    std::string name_;
    const Section* sec_;
};

SweepAxis parse_axis(const std::string& origin, const std::string& s) {
    if (s == "pump_frequency") return SweepAxis::pump_frequency;
    if (s == "bias_voltage") return SweepAxis::bias_voltage;
    if (s == "microwave_frequency") return SweepAxis::microwave_frequency;
    if (s == "pump_power") return SweepAxis::pump_power;
    if (s == "temperature") return SweepAxis::temperature;
    throw ScenarioError(origin + ": unknown sweep axis '" + s +
                        "' (expected pump_frequency, bias_voltage, microwave_frequency, "
                        "pump_power or temperature)");
}

const char* axis_name(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::pump_frequency: return "pump_frequency_hz";
    case SweepAxis::bias_voltage: return "bias_voltage_v";
    case SweepAxis::microwave_frequency: return "microwave_frequency_hz";
    case SweepAxis::pump_power: return "pump_power_w";
    case SweepAxis::temperature: return "temperature_k";
    }
    return "axis";
}

} // namespace

std::vector<std::string> valid_outputs(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::pump_frequency:
        return {"eta_anti_stokes", "eta_stokes", "eta_low_c", "eta_full",
                "cooperativity", "n_pump_photons"};
    case SweepAxis::microwave_frequency:
        return {"eta_low_c", "eta_full", "eta_anti_stokes", "eta_stokes"};
    case SweepAxis::pump_power:
        return {"eta_low_c", "eta_full", "cooperativity", "n_pump_photons"};
    case SweepAxis::bias_voltage:
        return {"freq_a_hz", "freq_b_hz", "splitting_hz"};
    case SweepAxis::temperature:
        return {"thermal_occupancy"};
    }
    return {};
}

SweepScenario parse_scenario(const std::string& text, const std::string& origin) {
    std::map<std::string, Section> sections;
    Section toplevel;
    Section* current = &toplevel;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = trim(line.substr(0, hash));
        }
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ScenarioError(origin + ":" + std::to_string(line_no) +
                                    ": malformed section header");
            }
            current = &sections[trim(line.substr(1, line.size() - 2))];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ScenarioError(origin + ":" + std::to_string(line_no) +
                                ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        (*current)[key] = KeyValue{trim(line.substr(eq + 1)), line_no};
    }

    SectionReader top(origin, "", &toplevel);
    if (!top.has("schema")) {
        throw ScenarioError(origin + ": missing required top-level field 'schema'");
    }
    if (top.text("schema") != "1") {
        throw ScenarioError(origin + ": unsupported schema version '" + top.text("schema") + "'");
    }

    auto section = [&](const char* name) {
        auto it = sections.find(name);
        return SectionReader(origin, name,
                             it == sections.end() ? nullptr : &it->second);
    };

    SweepScenario sc;

    SectionReader dev = section("device");
    const double tau = constants::two_pi;
    sc.device.omega_a = tau * dev.number("freq_a_hz");
    sc.device.omega_b = tau * dev.number("freq_b_hz");
    sc.device.omega_c = tau * dev.number("freq_c_hz");
    sc.device.kappa_a_i = tau * dev.number("kappa_a_i_hz");
    sc.device.kappa_a_e = tau * dev.number("kappa_a_e_hz");
    sc.device.kappa_b_i = tau * dev.number("kappa_b_i_hz");
    sc.device.kappa_b_e = tau * dev.number("kappa_b_e_hz");
    sc.device.kappa_c_i = tau * dev.number("kappa_c_i_hz");
    sc.device.kappa_c_e = tau * dev.number("kappa_c_e_hz");
    sc.device.g0 = tau * dev.number("g0_hz");
    sc.device.mu = tau * dev.number("mu_hz");
    dev.reject_unused();
    try {
        sc.device = validate_device_params(sc.device);
    } catch (const ValidationError& e) {
        throw ScenarioError(origin + ": [device] " + e.what());
    }

    SectionReader pump = section("pump");
    sc.pump.omega_p = tau * pump.number("freq_hz");
    sc.pump.power_feed_waveguide = pump.number("power_w");
    pump.reject_unused();
    sc.pump = validate_pump(sc.pump);

    SectionReader mw = section("mw");
    sc.mw.omega_mu = tau * mw.number("freq_hz");
    sc.mw.power_at_device = mw.number("power_w");
    mw.reject_unused();
    sc.mw = validate_microwave(sc.mw);

    SectionReader cal = section("calibration");
    if (cal.present()) {
        CalibrationChain chain;
        chain.heterodyne_gain = cal.number_or("heterodyne_gain_per_w", 0.0);
        chain.mw_attenuation_db = cal.number_or("mw_attenuation_db", 0.0);
        chain.grating_total_loss_db = cal.number_or("grating_total_loss_db", 0.0);
        chain.grating_split_uncertainty_db = cal.number_or("grating_split_uncertainty_db", 0.0);
        chain.downstream_optical_loss_db = cal.number_or("downstream_optical_loss_db", 0.0);
        cal.reject_unused();
        sc.calibration = validate_chain(chain);
    }

    SectionReader bare = section("bare_modes");
    if (bare.present()) {
        BareOpticalModes bm;
        bm.omega_a_prime = tau * bare.number("freq_a_hz");
        bm.omega_b_prime = tau * bare.number("freq_b_hz");
        bm.mu = tau * bare.number("mu_hz");
        bm.g_v_dc = tau * bare.number_or("g_v_dc_hz_per_v", 0.0);
        bare.reject_unused();
        sc.bare_modes = bm;
    }

    SectionReader sweep = section("sweep");
    if (sweep.present()) {
        sc.sweep_axis = parse_axis(origin, sweep.text("axis"));
        sc.axis_range.start = sweep.number("start");
        sc.axis_range.stop = sweep.number("stop");
        sc.axis_range.count = static_cast<int>(sweep.number("count"));
        if (sc.axis_range.count < 2) {
            throw ScenarioError(origin + ": sweep.count must be at least 2");
        }
        if (sc.axis_range.start == sc.axis_range.stop) {
            throw ScenarioError(origin + ": sweep.start must differ from sweep.stop");
        }
        std::istringstream outs(sweep.text("outputs"));
        std::string name;
        while (std::getline(outs, name, ',')) {
            name = trim(name);
            if (!name.empty()) {
                sc.outputs.push_back(name);
            }
        }
        if (sc.outputs.empty()) {
            throw ScenarioError(origin + ": sweep.outputs is empty");
        }
        sweep.reject_unused();
    }

    if (top.has("weighting")) {
        const std::string w = top.text("weighting");
        if (w == "equal") {
            sc.weighting = SidebandWeighting::equal;
        } else if (w == "interaction") {
            sc.weighting = SidebandWeighting::interaction;
        } else {
            throw ScenarioError(origin + ": unknown weighting '" + w + "'");
        }
    }
    for (const auto& [key, kv] : toplevel) {
        if (key != "schema" && key != "weighting") {
            throw ScenarioError(origin + ":" + std::to_string(kv.line) +
                                ": unknown top-level field '" + key + "'");
        }
    }
    return sc;
}

SweepScenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError("cannot open scenario file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

namespace {

void check_outputs(const SweepScenario& sc) {
    const std::vector<std::string> valid = valid_outputs(sc.sweep_axis);
    for (const std::string& name : sc.outputs) {
        if (std::find(valid.begin(), valid.end(), name) == valid.end()) {
            std::ostringstream oss;
            oss << "unknown output '" << name << "' for this axis; valid outputs:";
            for (const std::string& v : valid) {
                oss << ' ' << v;
            }
            throw ScenarioError(oss.str());
        }
    }
    if (sc.sweep_axis == SweepAxis::bias_voltage && !sc.bare_modes) {
        throw ScenarioError("bias_voltage sweeps require a [bare_modes] section");
    }
}

void evaluate_point(const SweepScenario& sc, double x, std::size_t row,
                    SweepResult& result) {
    DeviceParams dev = sc.device;
    PumpDrive pump = sc.pump;
    MicrowaveDrive mw = sc.mw;
    double temperature = 0.0;
    switch (sc.sweep_axis) {
    case SweepAxis::pump_frequency: pump.omega_p = constants::two_pi * x; break;
    case SweepAxis::microwave_frequency: mw.omega_mu = constants::two_pi * x; break;
    case SweepAxis::pump_power: pump.power_feed_waveguide = x; break;
    case SweepAxis::bias_voltage: break;
    case SweepAxis::temperature: temperature = x; break;
    }

    std::optional<SidebandPoint> sidebands;
    std::optional<HybridizedModes> hyb;
    for (std::size_t c = 0; c < sc.outputs.size(); ++c) {
        const std::string& name = sc.outputs[c];
        double value = 0.0;
        if (name == "eta_anti_stokes" || name == "eta_stokes") {
            if (!sidebands) {
                sidebands = sideband_efficiencies(dev, pump.omega_p, mw,
                                                  pump.power_feed_waveguide, sc.weighting);
            }
            value = (name == "eta_anti_stokes") ? sidebands->eta_anti_stokes
                                                : sidebands->eta_stokes;
        } else if (name == "eta_low_c") {
            value = efficiency_low_c(dev, pump, mw);
        } else if (name == "eta_full") {
            value = efficiency_full(dev, pump, mw).efficiency;
        } else if (name == "cooperativity") {
            value = efficiency_full(dev, pump, mw).cooperativity;
        } else if (name == "n_pump_photons") {
            value = efficiency_full(dev, pump, mw).n_pump_photons;
        } else if (name == "freq_a_hz" || name == "freq_b_hz" || name == "splitting_hz") {
            if (!hyb) {
                hyb = supermode_frequencies(*sc.bare_modes, x);
            }
            if (name == "freq_a_hz") {
                value = hyb->omega_a / constants::two_pi;
            } else if (name == "freq_b_hz") {
                value = hyb->omega_b / constants::two_pi;
            } else {
                value = (hyb->omega_b - hyb->omega_a) / constants::two_pi;
            }
        } else if (name == "thermal_occupancy") {
            value = thermal_occupancy(dev.omega_c / constants::two_pi, temperature);
        }
        result.columns[c + 1][row] = value;
    }
}

} // namespace

SweepResult run_sweep(const SweepScenario& scenario, int parallel_threshold) {
    check_outputs(scenario);
    const int n = scenario.axis_range.count;

    SweepResult result;
    result.toolkit_version = toolkit_version;
    result.column_names.push_back(axis_name(scenario.sweep_axis));
    for (const std::string& name : scenario.outputs) {
        result.column_names.push_back(name);
    }
    result.columns.assign(result.column_names.size(), std::vector<double>(n, 0.0));

    const double step =
        (scenario.axis_range.stop - scenario.axis_range.start) / (n - 1);
    for (int i = 0; i < n; ++i) {
        result.columns[0][i] = scenario.axis_range.start + step * i;
    }
    result.columns[0][n - 1] = scenario.axis_range.stop; // endpoint exact

    if (n >= parallel_threshold) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) {
            evaluate_point(scenario, result.columns[0][i], static_cast<std::size_t>(i),
                           result);
        }
    } else {
        for (int i = 0; i < n; ++i) {
            evaluate_point(scenario, result.columns[0][i], static_cast<std::size_t>(i),
                           result);
        }
    }
    return result;
}

double fit_g0(const FitRequest& request) {
    if (!(request.measured_efficiency_per_watt > 0.0)) {
        throw std::domain_error("fit_g0: measured efficiency must be positive");
    }
    const DeviceParams& d = request.device;
    auto peak = [](double ke, double k) { return ke / (0.25 * k * k); };
    const double shape = peak(d.kappa_a_e, d.kappa_a()) * peak(d.kappa_b_e, d.kappa_b()) *
                         peak(d.kappa_c_e, d.kappa_c()) /
                         (constants::planck_reduced * d.omega_a);
    return std::sqrt(request.measured_efficiency_per_watt / shape);
}

namespace {

// Golden-section maximization of a unimodal function on [lo, hi].
template <typename F>
double golden_max(F f, double lo, double hi) {
    const double phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while ((b - a) > 1e-14 * (std::abs(a) + std::abs(b))) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

OptimizeResult optimize_coupling(const DeviceParams& device, const PumpDrive& pump,
                                 Bounds bounds_b_e, Bounds bounds_c_e) {
    if (!(bounds_b_e.lo > 0.0) || !(bounds_b_e.hi > bounds_b_e.lo) ||
        !(bounds_c_e.lo > 0.0) || !(bounds_c_e.hi > bounds_c_e.lo)) {
        throw std::invalid_argument("optimize_coupling: bounds must be positive and ordered");
    }
    // Zero-detuning low-C efficiency as a function of the extrinsic rates.
    auto eta = [&](double kbe, double kce) {
        auto peak = [](double ke, double k) { return ke / (0.25 * k * k); };
        const double kb = device.kappa_b_i + kbe;
        const double kc = device.kappa_c_i + 2.0 * kce;
        return device.g0 * device.g0 * peak(device.kappa_a_e, device.kappa_a()) *
               peak(kbe, kb) * peak(kce, kc) * pump.power_feed_waveguide /
               (constants::planck_reduced * device.omega_a);
    };

    OptimizeResult out;
    out.kappa_b_e = 0.5 * (bounds_b_e.lo + bounds_b_e.hi);
    out.kappa_c_e = 0.5 * (bounds_c_e.lo + bounds_c_e.hi);
    double best = eta(out.kappa_b_e, out.kappa_c_e);
    for (int cycle = 0; cycle < 100; ++cycle) {
        out.kappa_b_e = golden_max([&](double x) { return eta(x, out.kappa_c_e); },
                                   bounds_b_e.lo, bounds_b_e.hi);
        out.kappa_c_e = golden_max([&](double x) { return eta(out.kappa_b_e, x); },
                                   bounds_c_e.lo, bounds_c_e.hi);
        const double now = eta(out.kappa_b_e, out.kappa_c_e);
        if (now - best <= 1e-10 * std::abs(best)) {
            best = std::max(best, now);
            break;
        }
        best = now;
    }
    out.efficiency = best;
    auto near = [](double x, double edge, double span) {
        return std::abs(x - edge) < 1e-6 * span;
    };
    out.on_boundary = near(out.kappa_b_e, bounds_b_e.lo, bounds_b_e.hi - bounds_b_e.lo) ||
                      near(out.kappa_b_e, bounds_b_e.hi, bounds_b_e.hi - bounds_b_e.lo) ||
                      near(out.kappa_c_e, bounds_c_e.lo, bounds_c_e.hi - bounds_c_e.lo) ||
                      near(out.kappa_c_e, bounds_c_e.hi, bounds_c_e.hi - bounds_c_e.lo);
    return out;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string to_csv(const SweepResult& result) {
    std::ostringstream out;
    for (std::size_t c = 0; c < result.column_names.size(); ++c) {
        if (c) {
            out << ',';
        }
        out << csv_quote(result.column_names[c]);
    }
    out << '\n';
    const std::size_t rows = result.columns.empty() ? 0 : result.columns[0].size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < result.columns.size(); ++c) {
            if (c) {
                out << ',';
            }
            out << format_double(result.columns[c][r]);
        }
        out << '\n';
    }
    return out.str();
}

std::string to_json(const SweepResult& result) {
    nlohmann::ordered_json j;
    j["metadata"]["toolkit_version"] = result.toolkit_version;
    j["metadata"]["scenario"] = result.scenario_echo;
    j["metadata"]["columns"] = result.column_names;
    for (std::size_t c = 0; c < result.column_names.size(); ++c) {
        j["columns"][result.column_names[c]] = result.columns[c];
    }
    return j.dump(2) + "\n";
}

} // namespace eotk
