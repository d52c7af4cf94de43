#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace eotk {

using cvec3 = std::array<std::complex<double>, 3>;
using mat3 = std::array<std::array<double, 3>, 3>;

// Discretized 3D mode profile over the nonlinear volume. One grid per
// mode; the three grids fed to an overlap integral must share shape and
// voxel volume. Permittivity tensors are relative and symmetric positive
// definite. The mask marks the electro-optic (LN) region; normalization
// integrates over the whole grid, the overlap only over masked voxels.
struct FieldGrid {
    std::array<int, 3> shape{0, 0, 0};
    double voxel_volume = 0.0; // m³, uniform
    double omega = 0.0;        // mode angular frequency (rad/s)
    std::vector<cvec3> field;  // row-major over (i, j, k)
    std::vector<mat3> permittivity;
    std::vector<unsigned char> mask;

    std::size_t size() const { return field.size(); }
};

// Rank-3 electro-optic tensor r_ijk [m/V] with the r_ijk = r_jik symmetry
// of the inverse-permittivity perturbation.
struct EOTensor {
    std::array<double, 27> r{}; // r[(i*3 + j)*3 + k]

    double operator()(int i, int j, int k) const { return r[(i * 3 + j) * 3 + k]; }
    void set(int i, int j, int k, double value); // sets r_ijk and r_jik

    /// Tensor with only r₃₃₃ (contracted r₃₃) populated.
    static EOTensor r33_only(double r33);
};

// Rank-3 χ⁽²⁾ tensor [m/V] for the polarization form of the overlap.
struct Chi2Tensor {
    std::array<double, 27> chi{};
    double operator()(int i, int j, int k) const { return chi[(i * 3 + j) * 3 + k]; }
    void set(int i, int j, int k, double value) { chi[(i * 3 + j) * 3 + k] = value; }
};

struct CircuitParams {
    double c_total = 0.0;  // F
    double impedance = 0.0; // Ω
    double omega_c = 0.0;  // rad/s
};

struct CouplingRate {
    double magnitude = 0.0; // |g₀|, rad/s
    double phase = 0.0;     // arg g₀, rad
};

/// Zero-point normalization N_m = √(ħω_m / (2ε₀ ∫dV Σ_ij ε_ij e_i e*_j)).
double normalization_constant(const FieldGrid& field);

/// Full r-tensor overlap, ħg₀ = ε₀ ∫_LN Σ_ijk ε_ii ε_jj r_ijk e_ai e*_bj e_ck
/// with the optical permittivity taken from mode a's grid.
CouplingRate g0_overlap_full(const FieldGrid& a, const FieldGrid& b, const FieldGrid& c,
                             const EOTensor& r);

/// r₃₃ approximation: ħg₀ = ε₀ n_e⁴ r₃₃ ∫_LN e_az e*_bz e_cz.
CouplingRate g0_overlap_r33(const FieldGrid& a, const FieldGrid& b, const FieldGrid& c,
                            double n_e, double r33);

/// Polarization form: ħg₀ = 2ε₀ ∫_LN Σ_ijk χ⁽²⁾_ijk e_ai e*_bj e_ck.
CouplingRate g0_overlap_chi2(const FieldGrid& a, const FieldGrid& b, const FieldGrid& c,
                             const Chi2Tensor& chi2);

/// χ⁽²⁾_ijk = ε_ii ε_jj r_ijk / 2 for a spatially uniform permittivity.
Chi2Tensor chi2_from_r(const EOTensor& r, const mat3& relative_permittivity);

/// V_zp = √(ħω_c / 2C_tot). Flags (via returned bool through exception-free
/// check_consistency) when |Z − 1/(ω_c C_tot)| deviates by more than 10%.
double zero_point_voltage(const CircuitParams& circuit);
bool circuit_is_consistent(const CircuitParams& circuit);

/// Lumped-circuit route: g₀ = (3/2)·g_V·V_zp.
double g0_from_gv(double g_v, double v_zp);

// Self-describing columnar text format. Header: format tag, grid shape,
// voxel volume, mode frequency; one row per voxel with the index triple,
// six field components (Re/Im pairs), nine permittivity entries and the
// mask bit.
FieldGrid read_field_grid(const std::string& path);
void write_field_grid(const std::string& path, const FieldGrid& grid);

namespace detail {

/// Deterministic blocked reduction: per-block Neumaier partial sums are
/// evaluated in parallel, block results combined serially in index order.
/// The result is bit-identical for any thread count.
std::complex<double> blocked_sum(std::size_t n,
                                 const std::complex<double>* terms);

/// Serial Neumaier reference used by the tests and benchmark.
std::complex<double> serial_sum(std::size_t n, const std::complex<double>* terms);

/// Evaluates the per-voxel overlap integrand (r-tensor form) into `terms`.
void overlap_terms_full(const FieldGrid& a, const FieldGrid& b, const FieldGrid& c,
                        const EOTensor& r, std::vector<std::complex<double>>& terms);

} // namespace detail

} // namespace eotk
