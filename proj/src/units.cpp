#include "eotk/units.hpp"
#include "eotk/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace eotk::units {

namespace {
void require_positive(double v, const char* what) {
    if (!(v > 0.0)) {
        throw std::domain_error(std::string(what) + " must be positive");
    }
}
void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::domain_error(std::string(what) + " must be finite");
    }
}
} // namespace

double frequency_to_wavelength(double frequency_hz) {
    require_positive(frequency_hz, "frequency");
    return constants::speed_of_light / frequency_hz;
}

double wavelength_to_frequency(double wavelength_m) {
    require_positive(wavelength_m, "wavelength");
    return constants::speed_of_light / wavelength_m;
}

double detuning_to_wavelength_span(double center_freq_hz, double delta_freq_hz) {
    require_positive(center_freq_hz, "center frequency");
    const double lambda = constants::speed_of_light / center_freq_hz;
    return lambda * lambda * delta_freq_hz / constants::speed_of_light;
}

double wavelength_span_to_detuning(double center_freq_hz, double delta_wavelength_m) {
    require_positive(center_freq_hz, "center frequency");
    const double lambda = constants::speed_of_light / center_freq_hz;
    return constants::speed_of_light * delta_wavelength_m / (lambda * lambda);
}

double dbm_to_watt(double dbm) {
    require_finite(dbm, "dBm value");
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watt_to_dbm(double watt) {
    require_positive(watt, "power");
    return 10.0 * std::log10(watt) + 30.0;
}

double db_to_ratio(double db) {
    require_finite(db, "dB value");
    return std::pow(10.0, db / 10.0);
}

double ratio_to_db(double ratio) {
    require_positive(ratio, "ratio");
    return 10.0 * std::log10(ratio);
}

double photon_flux(double power_w, double frequency_hz) {
    require_positive(frequency_hz, "frequency");
    if (power_w < 0.0) {
        throw std::domain_error("power must be non-negative");
    }
    return power_w / (constants::planck * frequency_hz);
}

double angular(double frequency_hz) { return constants::two_pi * frequency_hz; }
double ordinary(double omega_rad_s) { return omega_rad_s / constants::two_pi; }

} // namespace eotk::units
