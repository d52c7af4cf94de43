#include "eotk/calibration.hpp"
#include "eotk/constants.hpp"
#include "eotk/units.hpp"

#include <cmath>
#include <stdexcept>

namespace eotk {

CalibrationChain validate_chain(const CalibrationChain& raw) {
    if (raw.mw_attenuation_db < 0.0 || raw.grating_total_loss_db < 0.0 ||
        raw.downstream_optical_loss_db < 0.0 || raw.grating_split_uncertainty_db < 0.0) {
        throw ValidationError("calibration chain: losses must be non-negative");
    }
    if (raw.grating_split_uncertainty_db > 0.5 * raw.grating_total_loss_db) {
        throw ValidationError(
            "calibration chain: split uncertainty exceeds half the total grating loss");
    }
    return raw;
}

FilterCascade validate_cascade(const FilterCascade& raw) {
    for (const FilterStage& s : raw.stages) {
        if (!(s.fwhm_hz > 0.0)) {
            throw ValidationError("filter cascade: stage FWHM must be positive");
        }
    }
    return raw;
}

double sideband_power_from_rsa(double p_mw_at_rsa, double p_lo, double gain) {
    if (!(p_lo > 0.0)) {
        throw std::domain_error("sideband_power_from_rsa: LO power must be positive");
    }
    if (!(gain > 0.0)) {
        throw std::domain_error("sideband_power_from_rsa: gain must be positive");
    }
    return p_mw_at_rsa / (gain * p_lo);
}

double rsa_power_from_sideband(double p_sideband, double p_lo, double gain) {
    if (!(p_lo > 0.0)) {
        throw std::domain_error("rsa_power_from_sideband: LO power must be positive");
    }
    if (!(gain > 0.0)) {
        throw std::domain_error("rsa_power_from_sideband: gain must be positive");
    }
    return gain * p_sideband * p_lo;
}

double power_at_device(double p_generator, const CalibrationChain& chain) {
    return p_generator * units::db_to_ratio(-chain.mw_attenuation_db);
}

EfficiencyDecomposition efficiency_decomposition(double eta_offchip,
                                                 const CalibrationChain& chain) {
    if (!(eta_offchip > 0.0)) {
        throw std::domain_error("efficiency_decomposition: off-chip efficiency must be positive");
    }
    // The on-chip number only needs the output-coupler loss undone; the
    // split uncertainty moves that share while the total stays fixed.
    const double out_nominal_db = 0.5 * chain.grating_total_loss_db;
    EfficiencyDecomposition out;
    out.on_chip_nominal = eta_offchip * units::db_to_ratio(out_nominal_db);
    out.on_chip_low = eta_offchip *
                      units::db_to_ratio(out_nominal_db - chain.grating_split_uncertainty_db);
    out.on_chip_high = eta_offchip *
                       units::db_to_ratio(out_nominal_db + chain.grating_split_uncertainty_db);
    return out;
}

double filter_transmission_db(const FilterCascade& cascade, double detuning_hz) {
    double db = 0.0;
    for (const FilterStage& s : cascade.stages) {
        const double d = detuning_hz - s.center_offset_hz;
        const double x = 2.0 * d / s.fwhm_hz;
        db += -10.0 * std::log10(1.0 + x * x);
    }
    return db;
}

double snspd_count_rate(double eta_onchip, const MicrowaveDrive& mw,
                        const CalibrationChain& chain, const FilterCascade& cascade,
                        const DetectorModel& detector, double filter_detuning_hz) {
    const double mw_flux =
        mw.power_at_device / (constants::planck_reduced * mw.omega_mu);
    const double path_loss_db =
        0.5 * chain.grating_total_loss_db + chain.downstream_optical_loss_db;
    const double t_filter = units::db_to_ratio(filter_transmission_db(cascade, filter_detuning_hz));
    return eta_onchip * mw_flux * units::db_to_ratio(-path_loss_db) * t_filter *
               detector.quantum_efficiency +
           detector.background_rate;
}

double acoustic_fsr(double shear_velocity, double substrate_thickness) {
    if (!(shear_velocity > 0.0) || !(substrate_thickness > 0.0)) {
        throw std::domain_error("acoustic_fsr: arguments must be positive");
    }
    return shear_velocity / (2.0 * substrate_thickness);
}

} // namespace eotk
