#include "eotk/hybridization.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace eotk {

double mixing_angle(double delta_prime, double mu) {
    if (!(mu > 0.0)) {
        throw std::domain_error("mixing_angle: mu must be positive");
    }
    // atan2(2µ, Δ') lands in (0, π) for µ > 0, so θ stays in (0, π/2)
    // and passes continuously through the fully hybridized point θ = π/4.
    return 0.5 * std::atan2(2.0 * mu, delta_prime);
}

HybridizedModes supermode_frequencies(const BareOpticalModes& bare, double bias_v) {
    if (!(bare.mu > 0.0)) {
        throw std::domain_error("supermode_frequencies: mu must be positive");
    }
    const double delta0 = bare.omega_b_prime - bare.omega_a_prime;
    const double delta = delta0 + bare.g_v_dc * bias_v;
    const double mean = 0.5 * (bare.omega_a_prime + bare.omega_b_prime);
    const double half_split = std::sqrt(bare.mu * bare.mu + 0.25 * delta * delta);
    HybridizedModes out;
    out.omega_a = mean - half_split;
    out.omega_b = mean + half_split;
    out.theta = mixing_angle(delta, bare.mu);
    return out;
}

InteractionCoefficients interaction_coefficients(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    InteractionCoefficients out;
    out.self_a = 2.0 * c * c - s * s;
    out.self_b = 2.0 * s * s - c * c;
    out.cross = 3.0 * s * c;
    return out;
}

std::vector<AvoidedCrossingRow>
avoided_crossing_spectrum(const BareOpticalModes& bare, const std::vector<double>& bias_range) {
    if (bias_range.empty()) {
        throw std::invalid_argument("avoided_crossing_spectrum: empty bias range");
    }
    std::vector<AvoidedCrossingRow> rows;
    rows.reserve(bias_range.size());
    for (double v : bias_range) {
        const HybridizedModes m = supermode_frequencies(bare, v);
        rows.push_back({v, m.omega_a, m.omega_b});
    }
    return rows;
}

double lorentzian_transmission(double omega_probe, double omega_mode,
                               double kappa_e, double kappa) {
    const std::complex<double> denom(0.5 * kappa, omega_mode - omega_probe);
    const std::complex<double> t = 1.0 - kappa_e / denom;
    return std::norm(t);
}

std::vector<TransmissionRow>
optical_transmission_spectrum(const HybridizedModes& modes,
                              double kappa_a_e, double kappa_a,
                              double kappa_b_e, double kappa_b,
                              const std::vector<double>& probe_range) {
    if (!(kappa_a > 0.0) || !(kappa_b > 0.0)) {
        throw std::domain_error("optical_transmission_spectrum: loss rates must be positive");
    }
    std::vector<TransmissionRow> rows;
    rows.reserve(probe_range.size());
    for (double w : probe_range) {
        const double t = lorentzian_transmission(w, modes.omega_a, kappa_a_e, kappa_a) *
                         lorentzian_transmission(w, modes.omega_b, kappa_b_e, kappa_b);
        rows.push_back({w, t});
    }
    return rows;
}

} // namespace eotk
