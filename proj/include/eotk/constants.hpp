#pragma once

// Fundamental physical constants (CODATA 2018, SI units).
// All formulas in the toolkit work in angular frequency internally; the
// constants here are the only place dimensional prefactors enter.

namespace eotk::constants {

/// h — Planck constant [J·s] (exact since the 2019 SI redefinition).
inline constexpr double planck = 6.62607015e-34;

/// ħ = h / 2π [J·s].
inline constexpr double planck_reduced = 1.054571817e-34;

/// k_B — Boltzmann constant [J/K] (exact).
inline constexpr double boltzmann = 1.380649e-23;

/// ε₀ — vacuum permittivity [F/m].
inline constexpr double vacuum_permittivity = 8.8541878128e-12;

/// c — speed of light in vacuum [m/s] (exact).
inline constexpr double speed_of_light = 299792458.0;

inline constexpr double two_pi = 6.283185307179586476925286766559;

} // namespace eotk::constants
