#pragma once

#include "eotk/calibration.hpp"
#include "eotk/device.hpp"
#include "eotk/hybridization.hpp"
#include "eotk/transduction.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace eotk {

enum class SweepAxis {
    pump_frequency,
    bias_voltage,
    microwave_frequency,
    pump_power,
    temperature,
};

struct AxisRange {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
};

// Declarative description of one run: device + drives + the axis to sweep
// and the output columns to evaluate. Parsed from a sectioned key-value
// file gated by a `schema` version field.
struct SweepScenario {
    DeviceParams device;
    PumpDrive pump;
    MicrowaveDrive mw;
    std::optional<CalibrationChain> calibration;
    std::optional<BareOpticalModes> bare_modes; // needed for bias sweeps
    SweepAxis sweep_axis = SweepAxis::pump_frequency;
    AxisRange axis_range;
    std::vector<std::string> outputs;
    SidebandWeighting weighting = SidebandWeighting::equal;
};

struct SweepResult {
    std::vector<std::string> column_names; // axis column first
    std::vector<std::vector<double>> columns;
    std::string scenario_echo;
    std::string toolkit_version;
};

class ScenarioError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Parses a scenario file; errors carry the line number and field name.
SweepScenario load_scenario(const std::string& path);
SweepScenario parse_scenario(const std::string& text, const std::string& origin);

/// Valid output column names for each axis (diagnostics for usage errors).
std::vector<std::string> valid_outputs(SweepAxis axis);

/// Evaluates the requested quantities at each axis point. Points are
/// evaluated in parallel once the count exceeds `parallel_threshold`;
/// results are stored in axis order so output bytes never depend on the
/// schedule.
SweepResult run_sweep(const SweepScenario& scenario, int parallel_threshold = 64);

struct FitRequest {
    double measured_efficiency_per_watt = 0.0; // 1/W
    DeviceParams device;                       // g0 field ignored
};

/// Inverts the zero-detuning three-Lorentzian efficiency for g₀.
double fit_g0(const FitRequest& request);

struct OptimizeResult {
    double kappa_b_e = 0.0;
    double kappa_c_e = 0.0;
    double efficiency = 0.0;
    bool on_boundary = false;
};

struct Bounds {
    double lo = 0.0;
    double hi = 0.0;
};

/// Maximizes the zero-detuning low-C efficiency over the two extrinsic
/// rates: golden-section search per axis with coordinate cycling until the
/// relative improvement drops below 1e-10.
OptimizeResult optimize_coupling(const DeviceParams& device, const PumpDrive& pump,
                                 Bounds bounds_b_e, Bounds bounds_c_e);

/// CSV serialization: header row, 17-significant-digit floats, RFC-style
/// quoting of names. Byte-deterministic for a given result.
std::string to_csv(const SweepResult& result);
std::string to_json(const SweepResult& result);

inline constexpr const char* toolkit_version = "0.1.0";

} // namespace eotk
