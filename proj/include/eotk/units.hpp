#pragma once

// Unit conversions used across the toolkit. Internally every rate and
// frequency is angular (rad/s); these helpers cover the user-facing
// conversions (Hz, wavelength, dB, dBm) and photon flux.

namespace eotk::units {

/// λ = c / f. The same expression converts in both directions, so this is
/// its own inverse. Throws std::domain_error for non-positive input.
double frequency_to_wavelength(double frequency_hz);
double wavelength_to_frequency(double wavelength_m);

/// First-order wavelength span of a frequency interval around a carrier:
/// Δλ = λ²·Δf/c. Throws std::domain_error if center_freq_hz <= 0.
double detuning_to_wavelength_span(double center_freq_hz, double delta_freq_hz);

/// Inverse of the above: Δf = c·Δλ/λ².
double wavelength_span_to_detuning(double center_freq_hz, double delta_wavelength_m);

/// P [W] = 10^((dBm − 30)/10).
double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

/// ratio = 10^(dB/10); dB = 10·log10(ratio). ratio <= 0 throws.
double db_to_ratio(double db);
double ratio_to_db(double ratio);

/// Photon flux P/(h·f) [1/s]. power >= 0 and frequency > 0 required.
double photon_flux(double power_w, double frequency_hz);

/// 2π·f — Hz to angular frequency, and back.
double angular(double frequency_hz);
double ordinary(double omega_rad_s);

} // namespace eotk::units
