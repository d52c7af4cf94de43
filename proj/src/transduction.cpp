#include "eotk/transduction.hpp"
#include "eotk/constants.hpp"
#include "eotk/hybridization.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace eotk {

namespace {

using cplx = std::complex<double>;

// D_m = -iΔ_m - κ_m/2
cplx dterm(double delta, double kappa) { return cplx(-0.5 * kappa, -delta); }

double lorentzian_peak(double kappa_e, double delta, double kappa) {
    return kappa_e / (delta * delta + 0.25 * kappa * kappa);
}

} // namespace

DetuningSet detunings(const DeviceParams& p, const PumpDrive& pump, const MicrowaveDrive& mw) {
    DetuningSet d;
    d.delta_a = p.omega_a - pump.omega_p;
    d.delta_b = p.omega_b - pump.omega_p - mw.omega_mu;
    d.delta_c = p.omega_c - mw.omega_mu;
    return d;
}

double intracavity_pump_photons(const PumpDrive& pump, const DeviceParams& params,
                                double delta_a) {
    return lorentzian_peak(params.kappa_a_e, delta_a, params.kappa_a()) *
           pump.power_feed_waveguide / (constants::planck_reduced * params.omega_a);
}

double cooperativity(double g0, double n_a, double kappa_b, double kappa_c) {
    if (!(kappa_b > 0.0) || !(kappa_c > 0.0)) {
        throw std::domain_error("cooperativity: loss rates must be positive");
    }
    return 4.0 * g0 * g0 * n_a / (kappa_b * kappa_c);
}

ConversionResult efficiency_full(const DeviceParams& params, const PumpDrive& pump,
                                 const MicrowaveDrive& mw) {
    const DetuningSet d = detunings(params, pump, mw);
    ConversionResult out;
    out.n_pump_photons = intracavity_pump_photons(pump, params, d.delta_a);
    out.big_g_squared = params.g0 * params.g0 * out.n_pump_photons;
    out.cooperativity = 4.0 * out.big_g_squared / (params.kappa_b() * params.kappa_c());

    const cplx db = dterm(d.delta_b, params.kappa_b());
    const cplx dc = dterm(d.delta_c, params.kappa_c());
    const double denom = std::norm(1.0 + out.big_g_squared / (db * dc));
    out.efficiency = out.big_g_squared / denom * params.kappa_b_e * params.kappa_c_e /
                     (std::norm(db) * std::norm(dc));
    return out;
}

double efficiency_low_c(const DeviceParams& params, const PumpDrive& pump,
                        const MicrowaveDrive& mw) {
    const DetuningSet d = detunings(params, pump, mw);
    return params.g0 * params.g0 *
           lorentzian_peak(params.kappa_a_e, d.delta_a, params.kappa_a()) *
           lorentzian_peak(params.kappa_b_e, d.delta_b, params.kappa_b()) *
           lorentzian_peak(params.kappa_c_e, d.delta_c, params.kappa_c()) *
           pump.power_feed_waveguide / (constants::planck_reduced * params.omega_a);
}

double efficiency_critical_coupling(double g0, double kappa_a_i, double kappa_b_i,
                                    double kappa_c_i, const PumpDrive& pump,
                                    double omega_a) {
    if (!(kappa_a_i > 0.0) || !(kappa_b_i > 0.0) || !(kappa_c_i > 0.0)) {
        throw std::domain_error("efficiency_critical_coupling: intrinsic rates must be positive");
    }
    return g0 * g0 / (2.0 * kappa_a_i * kappa_b_i * kappa_c_i) *
           pump.power_feed_waveguide / (constants::planck_reduced * omega_a);
}

SteadyStateSolution steady_state_solve(const DeviceParams& params, const PumpDrive& pump,
                                       const MicrowaveDrive& mw, BackactionModel model) {
    const DetuningSet d = detunings(params, pump, mw);
    const cplx da = dterm(d.delta_a, params.kappa_a());
    const cplx db = dterm(d.delta_b, params.kappa_b());
    const cplx dc = dterm(d.delta_c, params.kappa_c());
    const double eps_p = std::sqrt(params.kappa_a_e * pump.power_feed_waveguide /
                                   (constants::planck_reduced * params.omega_a));
    const double eps_mu = std::sqrt(params.kappa_c_e * mw.power_at_device /
                                    (constants::planck_reduced * mw.omega_mu));
    const cplx i(0.0, 1.0);
    const double g0 = params.g0;

    SteadyStateSolution sol;
    sol.amp_a = i * eps_p / da;

    // Undepleted microwave mode: the b–c chain is a pure linear cascade.
    sol.amp_c = i * eps_mu / dc;
    sol.amp_b = i * g0 * sol.amp_a * sol.amp_c / db;

    const double scale = std::max({eps_p, eps_mu, 1e-300});

    if (model == BackactionModel::full) {
        // With the pump mode pinned at its driven amplitude the b–c
        // subsystem is linear: eliminating b from the c equation gives
        // (D_c + G²/D_b) c = iε_µ. Solving it directly stays exact at any
        // cooperativity; the residual check below still guards the result.
        const cplx backaction = g0 * g0 * std::norm(sol.amp_a) / db;
        sol.amp_c = i * eps_mu / (dc + backaction);
        sol.amp_b = i * g0 * sol.amp_a * sol.amp_c / db;
    }

    const double res_a = std::abs(da * sol.amp_a - i * eps_p);
    const double res_b = std::abs(db * sol.amp_b - i * g0 * sol.amp_a * sol.amp_c);
    const double res_c =
        model == BackactionModel::full
            ? std::abs(dc * sol.amp_c - i * g0 * std::conj(sol.amp_a) * sol.amp_b - i * eps_mu)
            : std::abs(dc * sol.amp_c - i * eps_mu);
    sol.residual = std::max({res_a, res_b, res_c}) / scale;
    sol.converged = sol.residual < 1e-12;
    if (!sol.converged) {
        std::ostringstream oss;
        oss << "steady_state_solve failed to converge, residual = " << sol.residual;
        throw std::runtime_error(oss.str());
    }
    if (eps_mu > 0.0) {
        sol.efficiency = params.kappa_b_e * std::norm(sol.amp_b) /
                         (eps_mu * eps_mu / params.kappa_c_e);
    }
    return sol;
}

namespace {

double two_mode_dos(const DeviceParams& p, double omega) {
    return lorentzian_peak(p.kappa_a_e, p.omega_a - omega, p.kappa_a()) +
           lorentzian_peak(p.kappa_b_e, p.omega_b - omega, p.kappa_b());
}

} // namespace

SidebandPoint sideband_efficiencies(const DeviceParams& params, double omega_p,
                                    const MicrowaveDrive& mw, double pump_power_w,
                                    SidebandWeighting weighting) {
    const double delta_c = params.omega_c - mw.omega_mu;
    const double lc = lorentzian_peak(params.kappa_c_e, delta_c, params.kappa_c());
    const double pump_enh = two_mode_dos(params, omega_p);
    const double flux = pump_power_w / (constants::planck_reduced * omega_p);
    const double g2 = params.g0 * params.g0;

    double stokes_weight = 1.0;
    if (weighting == SidebandWeighting::interaction) {
        // Scale the Stokes pathway by the self:cross modulation ratio at
        // full hybridization. Not validated against measurement.
        const InteractionCoefficients ic = interaction_coefficients(0.25 * 3.141592653589793);
        const double r = ic.self_a / ic.cross;
        stokes_weight = r * r;
    }

    SidebandPoint pt;
    pt.omega_p = omega_p;
    pt.eta_anti_stokes = g2 * pump_enh * two_mode_dos(params, omega_p + mw.omega_mu) * lc * flux;
    pt.eta_stokes =
        stokes_weight * g2 * pump_enh * two_mode_dos(params, omega_p - mw.omega_mu) * lc * flux;
    return pt;
}

std::vector<SidebandPoint>
sideband_spectrum(const DeviceParams& params, const std::vector<double>& pump_range,
                  const MicrowaveDrive& mw, double pump_power_w, SidebandWeighting weighting) {
    std::vector<SidebandPoint> out;
    out.reserve(pump_range.size());
    for (double wp : pump_range) {
        out.push_back(sideband_efficiencies(params, wp, mw, pump_power_w, weighting));
    }
    return out;
}

double selectivity(const DeviceParams& params, SidebandWeighting weighting) {
    MicrowaveDrive mw{params.omega_c, 0.0};
    const SidebandPoint pt =
        sideband_efficiencies(params, params.omega_a, mw, 1e-6, weighting);
    return 10.0 * std::log10(pt.eta_anti_stokes / pt.eta_stokes);
}

double single_resonance_penalty(double omega_mu, double kappa_a) {
    if (!(omega_mu > 0.0) || !(kappa_a > 0.0)) {
        throw std::domain_error("single_resonance_penalty: arguments must be positive");
    }
    const double half = 0.5 * kappa_a;
    return 10.0 * std::log10((omega_mu * omega_mu + half * half) / (half * half));
}

double conversion_bandwidth(const DeviceParams& params, const PumpDrive& pump) {
    // η(Δ_c) at zero optical detunings; FWHM located by bisecting the
    // half-max crossing. Robust against non-Lorentzian extensions even
    // though the current lineshape is exactly Lorentzian with FWHM κ_c.
    const double kc = params.kappa_c();
    auto eta_at = [&](double delta_c) {
        return lorentzian_peak(params.kappa_c_e, delta_c, kc);
    };
    const double half_max = 0.5 * eta_at(0.0);
    double lo = 0.0;
    double hi = 10.0 * kc;
    while (eta_at(hi) > half_max) {
        hi *= 2.0;
    }
    const double resolution = constants::two_pi * 1e3; // 1 kHz
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        (eta_at(mid) > half_max ? lo : hi) = mid;
    }
    (void)pump; // bandwidth is pump-power independent in the low-C regime
    return 2.0 * 0.5 * (lo + hi) / constants::two_pi;
}

double pair_generation_rate(double cooperativity_value, double kappa_b_e,
                            double kappa_c_e, double kappa_b) {
    if (cooperativity_value < 0.0) {
        throw std::domain_error("pair_generation_rate: cooperativity must be non-negative");
    }
    return 4.0 * cooperativity_value * kappa_b_e * kappa_c_e / kappa_b;
}

double thermal_occupancy(double frequency_hz, double temperature_k) {
    if (!(temperature_k > 0.0)) {
        throw std::domain_error("thermal_occupancy: temperature must be positive");
    }
    if (!(frequency_hz > 0.0)) {
        throw std::domain_error("thermal_occupancy: frequency must be positive");
    }
    const double x = constants::planck * frequency_hz /
                     (constants::boltzmann * temperature_k);
    return 1.0 / std::expm1(x);
}

double resonant_pump_advantage(double omega_mu, double kappa_opt) {
    if (!(omega_mu > 0.0) || !(kappa_opt > 0.0)) {
        throw std::domain_error("resonant_pump_advantage: arguments must be positive");
    }
    return 4.0 * omega_mu * omega_mu / (kappa_opt * kappa_opt);
}

} // namespace eotk
