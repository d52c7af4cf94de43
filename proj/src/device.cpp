#include "eotk/device.hpp"

namespace eotk {

namespace {
void check_rate(double v, const char* name) {
    if (!(v > 0.0)) {
        throw ValidationError(std::string(name) + " must be strictly positive");
    }
}
} // namespace

DeviceParams validate_device_params(const DeviceParams& raw) {
    check_rate(raw.omega_a, "omega_a");
    check_rate(raw.omega_b, "omega_b");
    check_rate(raw.omega_c, "omega_c");
    check_rate(raw.kappa_a_i, "kappa_a_i");
    check_rate(raw.kappa_a_e, "kappa_a_e");
    check_rate(raw.kappa_b_i, "kappa_b_i");
    check_rate(raw.kappa_b_e, "kappa_b_e");
    check_rate(raw.kappa_c_i, "kappa_c_i");
    check_rate(raw.kappa_c_e, "kappa_c_e");
    check_rate(raw.g0, "g0");
    check_rate(raw.mu, "mu");
    if (!(raw.omega_b > raw.omega_a)) {
        throw ValidationError("mode ordering violated: omega_b must exceed omega_a");
    }
    return raw;
}

PumpDrive validate_pump(const PumpDrive& raw) {
    check_rate(raw.omega_p, "omega_p");
    if (raw.power_feed_waveguide < 0.0) {
        throw ValidationError("pump power must be non-negative");
    }
    return raw;
}

MicrowaveDrive validate_microwave(const MicrowaveDrive& raw) {
    check_rate(raw.omega_mu, "omega_mu");
    if (raw.power_at_device < 0.0) {
        throw ValidationError("microwave power must be non-negative");
    }
    return raw;
}

} // namespace eotk
