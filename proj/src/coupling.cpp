#include "eotk/coupling.hpp"
#include "eotk/constants.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eotk {

namespace {

void check_same_grid(const FieldGrid& a, const FieldGrid& b, const char* who) {
    if (a.shape != b.shape || a.voxel_volume != b.voxel_volume ||
        a.size() != b.size()) {
        throw std::invalid_argument(std::string(who) + ": field grids do not match");
    }
}

void check_grid(const FieldGrid& g, const char* who) {
    const std::size_t n = static_cast<std::size_t>(g.shape[0]) * g.shape[1] * g.shape[2];
    if (g.shape[0] <= 0 || g.shape[1] <= 0 || g.shape[2] <= 0 || n != g.size() ||
        g.permittivity.size() != n || g.mask.size() != n) {
        throw std::invalid_argument(std::string(who) + ": malformed field grid");
    }
    if (!(g.voxel_volume > 0.0)) {
        throw std::invalid_argument(std::string(who) + ": voxel volume must be positive");
    }
}

} // namespace

void EOTensor::set(int i, int j, int k, double value) {
    r[(i * 3 + j) * 3 + k] = value;
    r[(j * 3 + i) * 3 + k] = value;
}

EOTensor EOTensor::r33_only(double r33) {
    EOTensor t;
    t.set(2, 2, 2, r33);
    return t;
}

double normalization_constant(const FieldGrid& field) {
    check_grid(field, "normalization_constant");
    if (!(field.omega > 0.0)) {
        throw std::domain_error("normalization_constant: mode frequency must be positive");
    }
    // ∫dV Σ_ij ε_ij e_i e*_j over the full grid; Hermitian form, real by
    // symmetry of ε.
    std::vector<std::complex<double>> terms(field.size());
    for (std::size_t v = 0; v < field.size(); ++v) {
        std::complex<double> s = 0.0;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                s += field.permittivity[v][i][j] * field.field[v][i] *
                     std::conj(field.field[v][j]);
            }
        }
        terms[v] = s;
    }
    const double energy =
        detail::blocked_sum(terms.size(), terms.data()).real() * field.voxel_volume;
    if (!(energy > 0.0)) {
        throw std::domain_error("normalization_constant: zero-energy field");
    }
    return std::sqrt(constants::planck_reduced * field.omega /
                     (2.0 * constants::vacuum_permittivity * energy));
}

namespace detail {

std::complex<double> serial_sum(std::size_t n, const std::complex<double>* terms) {
    double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        const double xr = terms[v].real();
        double t = sr + xr;
        cr += (std::abs(sr) >= std::abs(xr)) ? (sr - t) + xr : (xr - t) + sr;
        sr = t;
        const double xi = terms[v].imag();
        t = si + xi;
        ci += (std::abs(si) >= std::abs(xi)) ? (si - t) + xi : (xi - t) + si;
        si = t;
    }
    return {sr + cr, si + ci};
}

std::complex<double> blocked_sum(std::size_t n, const std::complex<double>* terms) {
    constexpr std::size_t block = 4096;
    const std::size_t nblocks = (n + block - 1) / block;
    if (nblocks <= 1) {
        return serial_sum(n, terms);
    }
    std::vector<std::complex<double>> partial(nblocks);
#pragma omp parallel for schedule(static)
    for (long long bi = 0; bi < static_cast<long long>(nblocks); ++bi) {
        const std::size_t lo = static_cast<std::size_t>(bi) * block;
        const std::size_t hi = std::min(lo + block, n);
        partial[static_cast<std::size_t>(bi)] = serial_sum(hi - lo, terms + lo);
    }
    // Block partials combined in index order: value independent of the
    // number of threads.
    return serial_sum(nblocks, partial.data());
}

void overlap_terms_full(const FieldGrid& a, const FieldGrid& b, const FieldGrid& c,
                        const EOTensor& r, std::vector<std::complex<double>>& terms) {
    terms.assign(a.size(), {0.0, 0.0});
#pragma omp parallel for schedule(static)
    for (long long v = 0; v < static_cast<long long>(a.size()); ++v) {
        if (!a.mask[static_cast<std::size_t>(v)]) {
            continue;
        }
        const std::size_t u = static_cast<std::size_t>(v);
        std::complex<double> s = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double eii = a.permittivity[u][i][i];
            for (int j = 0; j < 3; ++j) {
                const double ejj = a.permittivity[u][j][j];
                const std::complex<double> opt = a.field[u][i] * std::conj(b.field[u][j]);
                for (int k = 0; k < 3; ++k) {
                    const double rijk = r(i, j, k);
                    if (rijk != 0.0) {
                        s += eii * ejj * rijk * opt * c.field[u][k];
                    }
                }
            }
        }
        terms[u] = s;
    }
}

} // namespace detail

namespace {

CouplingRate finish_overlap(std::complex<double> integral_sum, double prefactor,
                            const FieldGrid& a, const FieldGrid& b, const FieldGrid& c) {
    const double na = normalization_constant(a);
    const double nb = normalization_constant(b);
    const double nc = normalization_constant(c);
    const std::complex<double> hbar_g0 =
        prefactor * integral_sum * a.voxel_volume * na * nb * nc;
    const std::complex<double> g0 = hbar_g0 / constants::planck_reduced;
    return {std::abs(g0), std::arg(g0)};
}

} // namespace

CouplingRate g0_overlap_full(const FieldGrid& a, const FieldGrid& b, const FieldGrid& c,
                             const EOTensor& r) {
    check_grid(a, "g0_overlap_full");
    check_same_grid(a, b, "g0_overlap_full");
    check_same_grid(a, c, "g0_overlap_full");
    std::vector<std::complex<double>> terms;
    detail::overlap_terms_full(a, b, c, r, terms);
    const std::complex<double> s = detail::blocked_sum(terms.size(), terms.data());
    return finish_overlap(s, constants::vacuum_permittivity, a, b, c);
}

CouplingRate g0_overlap_r33(const FieldGrid& a, const FieldGrid& b, const FieldGrid& c,
                            double n_e, double r33) {
    check_grid(a, "g0_overlap_r33");
    check_same_grid(a, b, "g0_overlap_r33");
    check_same_grid(a, c, "g0_overlap_r33");
    std::vector<std::complex<double>> terms(a.size(), {0.0, 0.0});
#pragma omp parallel for schedule(static)
    for (long long v = 0; v < static_cast<long long>(a.size()); ++v) {
        const std::size_t u = static_cast<std::size_t>(v);
        if (a.mask[u]) {
            terms[u] = a.field[u][2] * std::conj(b.field[u][2]) * c.field[u][2];
        }
    }
    const std::complex<double> s = detail::blocked_sum(terms.size(), terms.data());
    const double n2 = n_e * n_e;
    return finish_overlap(s, constants::vacuum_permittivity * n2 * n2 * r33, a, b, c);
}

CouplingRate g0_overlap_chi2(const FieldGrid& a, const FieldGrid& b, const FieldGrid& c,
                             const Chi2Tensor& chi2) {
    check_grid(a, "g0_overlap_chi2");
    check_same_grid(a, b, "g0_overlap_chi2");
    check_same_grid(a, c, "g0_overlap_chi2");
    std::vector<std::complex<double>> terms(a.size(), {0.0, 0.0});
#pragma omp parallel for schedule(static)
    for (long long v = 0; v < static_cast<long long>(a.size()); ++v) {
        const std::size_t u = static_cast<std::size_t>(v);
        if (!a.mask[u]) {
            continue;
        }
        std::complex<double> s = 0.0;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const std::complex<double> opt = a.field[u][i] * std::conj(b.field[u][j]);
                for (int k = 0; k < 3; ++k) {
                    const double x = chi2(i, j, k);
                    if (x != 0.0) {
                        s += x * opt * c.field[u][k];
                    }
                }
            }
        }
        terms[u] = s;
    }
    const std::complex<double> s = detail::blocked_sum(terms.size(), terms.data());
    return finish_overlap(s, 2.0 * constants::vacuum_permittivity, a, b, c);
}

Chi2Tensor chi2_from_r(const EOTensor& r, const mat3& relative_permittivity) {
    Chi2Tensor chi;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) {
                chi.set(i, j, k, 0.5 * relative_permittivity[i][i] *
                                     relative_permittivity[j][j] * r(i, j, k));
            }
        }
    }
    return chi;
}

double zero_point_voltage(const CircuitParams& circuit) {
    if (!(circuit.c_total > 0.0) || !(circuit.omega_c > 0.0)) {
        throw std::domain_error("zero_point_voltage: capacitance and frequency must be positive");
    }
    return std::sqrt(constants::planck_reduced * circuit.omega_c / (2.0 * circuit.c_total));
}

bool circuit_is_consistent(const CircuitParams& circuit) {
    if (!(circuit.impedance > 0.0)) {
        return true; // impedance not specified
    }
    const double z_implied = 1.0 / (circuit.omega_c * circuit.c_total);
    return std::abs(circuit.impedance - z_implied) <= 0.10 * z_implied;
}

double g0_from_gv(double g_v, double v_zp) {
    if (g_v < 0.0 || v_zp < 0.0) {
        throw std::domain_error("g0_from_gv: inputs must be non-negative");
    }
    return 1.5 * g_v * v_zp;
}

// ---------------------------------------------------------------------------
// Field-grid file format
// ---------------------------------------------------------------------------

FieldGrid read_field_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open field file: " + path);
    }
    std::string tag;
    int version = 0;
    in >> tag >> version;
    if (tag != "eotk-field" || version != 1) {
        throw std::runtime_error(path + ": not an eotk-field v1 file");
    }
    FieldGrid g;
    std::string key;
    for (int h = 0; h < 3; ++h) {
        in >> key;
        if (key == "shape") {
            in >> g.shape[0] >> g.shape[1] >> g.shape[2];
        } else if (key == "voxel_volume") {
            in >> g.voxel_volume;
        } else if (key == "omega") {
            in >> g.omega;
        } else {
            throw std::runtime_error(path + ": unexpected header key '" + key + "'");
        }
    }
    if (!in) {
        throw std::runtime_error(path + ": malformed header");
    }
    const std::size_t n =
        static_cast<std::size_t>(g.shape[0]) * g.shape[1] * g.shape[2];
    g.field.resize(n);
    g.permittivity.resize(n);
    g.mask.resize(n);
    for (std::size_t row = 0; row < n; ++row) {
        int i, j, k;
        in >> i >> j >> k;
        const std::size_t v =
            (static_cast<std::size_t>(i) * g.shape[1] + j) * g.shape[2] + k;
        if (!in || i < 0 || i >= g.shape[0] || j < 0 || j >= g.shape[1] || k < 0 ||
            k >= g.shape[2]) {
            throw std::runtime_error(path + ": bad voxel index at data row " +
                                     std::to_string(row));
        }
        for (int comp = 0; comp < 3; ++comp) {
            double re, im;
            in >> re >> im;
            g.field[v][comp] = {re, im};
        }
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                in >> g.permittivity[v][a][b];
            }
        }
        int m;
        in >> m;
        g.mask[v] = static_cast<unsigned char>(m != 0);
        if (!in) {
            throw std::runtime_error(path + ": malformed data row " + std::to_string(row));
        }
    }
    check_grid(g, path.c_str());
    return g;
}

void write_field_grid(const std::string& path, const FieldGrid& grid) {
    check_grid(grid, "write_field_grid");
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write field file: " + path);
    }
    out.precision(17);
    out << "eotk-field 1\n";
    out << "shape " << grid.shape[0] << ' ' << grid.shape[1] << ' ' << grid.shape[2] << '\n';
    out << "voxel_volume " << grid.voxel_volume << '\n';
    out << "omega " << grid.omega << '\n';
    for (int i = 0; i < grid.shape[0]; ++i) {
        for (int j = 0; j < grid.shape[1]; ++j) {
            for (int k = 0; k < grid.shape[2]; ++k) {
                const std::size_t v =
                    (static_cast<std::size_t>(i) * grid.shape[1] + j) * grid.shape[2] + k;
                out << i << ' ' << j << ' ' << k;
                for (int comp = 0; comp < 3; ++comp) {
                    out << ' ' << grid.field[v][comp].real() << ' '
                        << grid.field[v][comp].imag();
                }
                for (int a = 0; a < 3; ++a) {
                    for (int b = 0; b < 3; ++b) {
                        out << ' ' << grid.permittivity[v][a][b];
                    }
                }
                out << ' ' << int(grid.mask[v]) << '\n';
            }
        }
    }
}

} // namespace eotk
