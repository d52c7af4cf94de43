#pragma once

#include "eotk/device.hpp"

#include <vector>

namespace eotk {

// Measurement-chain arithmetic: heterodyne gain calibration, dB power
// budgets, on/off-chip efficiency decomposition and the photon-counting
// detection path.

struct CalibrationChain {
    double heterodyne_gain = 0.0;          // G, 1/W
    double mw_attenuation_db = 0.0;        // generator → device
    double grating_total_loss_db = 0.0;    // both couplers combined
    double grating_split_uncertainty_db = 0.0;
    double downstream_optical_loss_db = 0.0;
};

struct FilterStage {
    double fwhm_hz = 0.0;
    double center_offset_hz = 0.0;
};

struct FilterCascade {
    std::vector<FilterStage> stages;
};

struct DetectorModel {
    double quantum_efficiency = 1.0;
    double background_rate = 0.0; // counts/s
};

struct EfficiencyDecomposition {
    double on_chip_nominal = 0.0;
    double on_chip_low = 0.0;
    double on_chip_high = 0.0;
};

CalibrationChain validate_chain(const CalibrationChain& raw);
FilterCascade validate_cascade(const FilterCascade& raw);

/// Inverse of P_MW = G · P_sideband · P_LO.
double sideband_power_from_rsa(double p_mw_at_rsa, double p_lo, double gain);
double rsa_power_from_sideband(double p_sideband, double p_lo, double gain);

/// Applies the generator→device attenuation budget.
double power_at_device(double p_generator, const CalibrationChain& chain);

/// On-chip efficiency from the off-chip value: the nominal assumes an even
/// split of the total grating loss between input and output couplers; the
/// low/high bounds move the output-coupler share by ∓/± the split
/// uncertainty.
EfficiencyDecomposition efficiency_decomposition(double eta_offchip,
                                                 const CalibrationChain& chain);

/// Cascade transmission at a detuning from the stage centers, in dB
/// (≤ 0). Each stage is Lorentzian: T = 1/(1 + (2Δ/fwhm)²).
double filter_transmission_db(const FilterCascade& cascade, double detuning_hz);

/// Predicted SNSPD count rate for a converted sideband after the output
/// coupler, downstream losses and the filter cascade.
double snspd_count_rate(double eta_onchip, const MicrowaveDrive& mw,
                        const CalibrationChain& chain, const FilterCascade& cascade,
                        const DetectorModel& detector, double filter_detuning_hz);

/// Bulk acoustic standing-wave spacing FSR = v / (2d).
double acoustic_fsr(double shear_velocity, double substrate_thickness);

} // namespace eotk
