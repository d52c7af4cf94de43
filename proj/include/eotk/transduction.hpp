#pragma once

#include "eotk/device.hpp"

#include <complex>
#include <vector>

namespace eotk {

// Steady-state coupled-mode conversion physics. All closed forms and the
// iterative solver reference the pump photon flux to ħω_a, matching the
// convention of the driven-coupling expression G² = g₀²·κ_{a,e}/|D_a|²·P_p/ħω_a;
// the pump frequency only enters through the detunings.

struct DetuningSet {
    double delta_a = 0.0; // ω_a − ω_p
    double delta_b = 0.0; // ω_b − ω_p − ω_µ
    double delta_c = 0.0; // ω_c − ω_µ
};

DetuningSet detunings(const DeviceParams& p, const PumpDrive& pump, const MicrowaveDrive& mw);

struct ConversionResult {
    double efficiency = 0.0;     // photon number conversion efficiency
    double cooperativity = 0.0;  // C = 4g₀²n_a/κ_bκ_c
    double big_g_squared = 0.0;  // G² = g₀²n_a, (rad/s)²
    double n_pump_photons = 0.0; // intracavity pump photons in mode a
};

/// n_a = κ_{a,e}/(Δ_a² + (κ_a/2)²) · P_p/ħω_a.
double intracavity_pump_photons(const PumpDrive& pump, const DeviceParams& params,
                                double delta_a);

double cooperativity(double g0, double n_a, double kappa_b, double kappa_c);

/// Full steady-state efficiency with the backaction denominator:
/// η = G²/|1 + G²/(D_b D_c)|² · κ_{b,e}κ_{c,e}/(|D_b|²|D_c|²).
ConversionResult efficiency_full(const DeviceParams& params, const PumpDrive& pump,
                                 const MicrowaveDrive& mw);

/// Low-cooperativity limit: the three-Lorentzian product, linear in P_p.
double efficiency_low_c(const DeviceParams& params, const PumpDrive& pump,
                        const MicrowaveDrive& mw);

/// Low-C efficiency at zero detunings and critical coupling of all three
/// modes (κ_m = 2κ_{m,i}; for the double-sided microwave mode this means
/// κ_{c,e} = κ_{c,i}/2). Exact substitution limit of the three-Lorentzian
/// form: η = g₀²/(2 κ_{a,i}κ_{b,i}κ_{c,i}) · P_p/ħω_a.
double efficiency_critical_coupling(double g0, double kappa_a_i, double kappa_b_i,
                                    double kappa_c_i, const PumpDrive& pump,
                                    double omega_a);

enum class BackactionModel {
    none,          // microwave mode undepleted; matches efficiency_low_c
    full,          // b–c subsystem solved self-consistently; matches efficiency_full
};

struct SteadyStateSolution {
    std::complex<double> amp_a;
    std::complex<double> amp_b;
    std::complex<double> amp_c;
    bool converged = false;
    double residual = 0.0;
    double efficiency = 0.0; // κ_{b,e}|b̄|² / (|ε_µ|²/κ_{c,e})
};

/// Solves the mean-field equations of motion: the pump mode at its driven
/// amplitude, then the (linear) b–c subsystem directly. The solution is
/// verified against the equations to a normalized residual of 1e-12;
/// failure throws with the residual in the message.
SteadyStateSolution steady_state_solve(const DeviceParams& params, const PumpDrive& pump,
                                       const MicrowaveDrive& mw, BackactionModel model);

enum class SidebandWeighting {
    equal,       // equal-weight Lorentzian sum over both supermodes (default)
    interaction, // Stokes pathway scaled by the (self/cross)² hybridization
                 // coefficient ratio; exposed for exploration, unvalidated
};

struct SidebandPoint {
    double omega_p;
    double eta_anti_stokes; // sideband at ω_p + ω_µ
    double eta_stokes;      // sideband at ω_p − ω_µ
};

/// Both sideband efficiencies at a single pump frequency. The pump
/// enhancement and the sideband extraction each use the two-supermode
/// Lorentzian density of states Σ_m κ_{m,e}/((ω_m−ω)² + (κ_m/2)²).
SidebandPoint sideband_efficiencies(const DeviceParams& params, double omega_p,
                                    const MicrowaveDrive& mw, double pump_power_w,
                                    SidebandWeighting weighting = SidebandWeighting::equal);

std::vector<SidebandPoint>
sideband_spectrum(const DeviceParams& params, const std::vector<double>& pump_range,
                  const MicrowaveDrive& mw, double pump_power_w,
                  SidebandWeighting weighting = SidebandWeighting::equal);

/// Anti-Stokes/Stokes ratio in dB with the pump on mode a and the
/// microwave drive on resonance.
double selectivity(const DeviceParams& params,
                   SidebandWeighting weighting = SidebandWeighting::equal);

/// Pump-enhancement penalty of single-resonance operation, i.e. the pump
/// parked ω_µ below mode a instead of on it:
/// 10·log₁₀((ω_µ² + (κ_a/2)²)/(κ_a/2)²).
double single_resonance_penalty(double omega_mu, double kappa_a);

/// FWHM (Hz, ordinary frequency) of η(Δ_c) at zero optical detunings,
/// located by bisection to 1 kHz resolution. Analytically κ_c/2π.
double conversion_bandwidth(const DeviceParams& params, const PumpDrive& pump);

/// R = 4C·κ_{b,e}κ_{c,e}/κ_b [1/s], valid at low cooperativity.
double pair_generation_rate(double cooperativity_value, double kappa_b_e,
                            double kappa_c_e, double kappa_b);

/// Bose–Einstein occupancy n = 1/(exp(hf/k_BT) − 1).
double thermal_occupancy(double frequency_hz, double temperature_k);

/// Intracavity pump-photon gain of the triply-resonant design over a
/// detuned single-mode pump: 4ω_µ²/κ_opt².
double resonant_pump_advantage(double omega_mu, double kappa_opt);

} // namespace eotk
