#pragma once

#include <vector>

namespace eotk {

// Two evanescently coupled racetrack modes before diagonalization.
// g_v_dc is the DC-bias tuning rate of the bare detuning Δ' = ω_b' − ω_a'
// (rad/s per volt); the bias is applied symmetrically so the mean bare
// frequency stays fixed while Δ'(V) = Δ'₀ + g_v_dc·V.
struct BareOpticalModes {
    double omega_a_prime = 0.0;
    double omega_b_prime = 0.0;
    double mu = 0.0;
    double g_v_dc = 0.0;
};

struct HybridizedModes {
    double omega_a = 0.0; // lower supermode (rad/s)
    double omega_b = 0.0; // upper supermode (rad/s)
    double theta = 0.0;   // mixing angle, in (0, π/2)
};

struct InteractionCoefficients {
    double self_a = 0.0; // 2cos²θ − sin²θ
    double self_b = 0.0; // 2sin²θ − cos²θ
    double cross = 0.0;  // 3 sinθ cosθ
};

/// θ = ½·atan2(2µ, Δ'); continuous through Δ' = 0 with θ ∈ (0, π/2).
double mixing_angle(double delta_prime, double mu);

/// Supermode frequencies at a given bias voltage: the exact eigenvalues
/// (ω_a'+ω_b')/2 ∓ √(µ² + Δ'²/4) of the 2×2 coupling matrix, so that
/// ω_b − ω_a = 2√(µ² + Δ'²/4) holds for every Δ'.
HybridizedModes supermode_frequencies(const BareOpticalModes& bare, double bias_v);

InteractionCoefficients interaction_coefficients(double theta);

struct AvoidedCrossingRow {
    double bias_v;
    double omega_a;
    double omega_b;
};

std::vector<AvoidedCrossingRow>
avoided_crossing_spectrum(const BareOpticalModes& bare, const std::vector<double>& bias_range);

// Fig.-3a-style rendering: product of two independent single-side-coupled
// resonator responses |1 − κ_e/(i(ω_m−ω) + κ_m/2)|². Interference between
// the supermode pathways is ignored; this is a plotting model, not a
// scattering calculation.
struct TransmissionRow {
    double omega_probe;
    double transmission; // |t|²
};

std::vector<TransmissionRow>
optical_transmission_spectrum(const HybridizedModes& modes,
                              double kappa_a_e, double kappa_a,
                              double kappa_b_e, double kappa_b,
                              const std::vector<double>& probe_range);

/// Single-mode |t(ω)|² for one side-coupled resonator.
double lorentzian_transmission(double omega_probe, double omega_mode,
                               double kappa_e, double kappa);

} // namespace eotk
