#pragma once

#include <stdexcept>
#include <string>

namespace eotk {

// Device parameter set for the triply-resonant converter: two optical
// supermodes (a below b) and one microwave mode (c). All frequencies and
// rates are angular (rad/s). Totals follow the coupling topology of the
// device: the optical modes are single-side coupled, the microwave
// resonator is coupled on both sides,
//   κ_m = κ_{m,i} + κ_{m,e}   (m = a, b)
//   κ_c = κ_{c,i} + 2κ_{c,e}
struct DeviceParams {
    double omega_a = 0.0;
    double omega_b = 0.0;
    double omega_c = 0.0;
    double kappa_a_i = 0.0;
    double kappa_a_e = 0.0;
    double kappa_b_i = 0.0;
    double kappa_b_e = 0.0;
    double kappa_c_i = 0.0;
    double kappa_c_e = 0.0;
    double g0 = 0.0;
    double mu = 0.0;

    double kappa_a() const { return kappa_a_i + kappa_a_e; }
    double kappa_b() const { return kappa_b_i + kappa_b_e; }
    double kappa_c() const { return kappa_c_i + 2.0 * kappa_c_e; }
};

struct PumpDrive {
    double omega_p = 0.0;            // rad/s
    double power_feed_waveguide = 0.0; // W
};

struct MicrowaveDrive {
    double omega_mu = 0.0;      // rad/s
    double power_at_device = 0.0; // W
};

/// Thrown when a parameter set fails validation; message names the field.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Checks positivity of every rate, g0 and mu, mode ordering ω_b > ω_a,
/// and returns the params unchanged (totals are derived on demand).
DeviceParams validate_device_params(const DeviceParams& raw);

PumpDrive validate_pump(const PumpDrive& raw);
MicrowaveDrive validate_microwave(const MicrowaveDrive& raw);

} // namespace eotk
