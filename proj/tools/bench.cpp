// Benchmark: parallel kernels against their serial references.
#include "eotk/constants.hpp"
#include "eotk/coupling.hpp"
#include "eotk/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace eotk;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

template <typename F>
double time_best_of(int reps, F f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, seconds(t0, t1));
    }
    return best;
}

void bench_reduction(std::size_t n) {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::complex<double>> terms(n);
    for (auto& t : terms) {
        t = {u(rng), u(rng)};
    }
    std::complex<double> serial, blocked;
    const double ts = time_best_of(5, [&] { serial = detail::serial_sum(n, terms.data()); });
    const double tb = time_best_of(5, [&] { blocked = detail::blocked_sum(n, terms.data()); });
    const double err = std::abs(blocked - serial) / std::abs(serial);
    std::printf("reduction  n=%-9zu serial %8.3f ms   blocked %8.3f ms   speedup %5.2fx"
                "   rel. diff %.2e\n",
                n, 1e3 * ts, 1e3 * tb, ts / tb, err);
}

void bench_overlap(int n_side) {
    std::mt19937_64 rng(999);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const mat3 eps{{{4.58, 0, 0}, {0, 4.58, 0}, {0, 0, 4.58}}};
    auto grid = [&](double omega) {
        FieldGrid g;
        g.shape = {n_side, n_side, n_side};
        g.voxel_volume = 1e-22;
        g.omega = omega;
        const std::size_t n = static_cast<std::size_t>(n_side) * n_side * n_side;
        g.field.resize(n);
        for (auto& f : g.field) {
            for (auto& c : f) {
                c = {u(rng), u(rng)};
            }
        }
        g.permittivity.assign(n, eps);
        g.mask.assign(n, 1);
        return g;
    };
    const double tau = constants::two_pi;
    const FieldGrid a = grid(tau * 193.411e12);
    const FieldGrid b = grid(tau * 193.4178e12);
    const FieldGrid c = grid(tau * 6.801e9);
    const EOTensor r = EOTensor::r33_only(30.9e-12);

    std::vector<std::complex<double>> terms;
    CouplingRate result;
    const double t_terms = time_best_of(3, [&] {
        detail::overlap_terms_full(a, b, c, r, terms);
    });
    const double t_serial = time_best_of(3, [&] {
        detail::serial_sum(terms.size(), terms.data());
    });
    const double t_full = time_best_of(3, [&] { result = g0_overlap_full(a, b, c, r); });
    std::printf("overlap    %d^3 voxels: integrand %8.3f ms   serial sum %8.3f ms   "
                "full pipeline %8.3f ms   |g0|/2pi = %.6g Hz\n",
                n_side, 1e3 * t_terms, 1e3 * t_serial, 1e3 * t_full,
                result.magnitude / tau);
}

void bench_sweep(int points) {
    SweepScenario sc;
    const double tau = constants::two_pi;
    sc.device.omega_a = tau * 193.411e12;
    sc.device.omega_b = tau * 193.4178e12;
    sc.device.omega_c = tau * 6.801e9;
    sc.device.kappa_a_i = tau * 717e6;
    sc.device.kappa_a_e = tau * 206e6;
    sc.device.kappa_b_i = tau * 466e6;
    sc.device.kappa_b_e = tau * 134e6;
    sc.device.kappa_c_i = tau * 12.8e6;
    sc.device.kappa_c_e = tau * 4.4e6;
    sc.device.g0 = tau * 1.2e3;
    sc.device.mu = tau * 3.4e9;
    sc.pump = {sc.device.omega_a, 1e-6};
    sc.mw = {sc.device.omega_c, 1e-9};
    sc.sweep_axis = SweepAxis::pump_frequency;
    sc.axis_range = {193.40e12, 193.43e12, points};
    sc.outputs = {"eta_anti_stokes", "eta_stokes", "eta_full"};

    std::string serial_csv, parallel_csv;
    const double ts =
        time_best_of(3, [&] { serial_csv = to_csv(run_sweep(sc, 1 << 30)); });
    const double tp = time_best_of(3, [&] { parallel_csv = to_csv(run_sweep(sc, 1)); });
    std::printf("sweep      %d points:  serial %8.3f ms   parallel %8.3f ms   "
                "speedup %5.2fx   bytes identical: %s\n",
                points, 1e3 * ts, 1e3 * tp, ts / tp,
                serial_csv == parallel_csv ? "yes" : "NO");
}

} // namespace

int main(int argc, char** argv) {
    int scale = 1;
    if (argc > 1) {
        scale = std::max(1, std::atoi(argv[1]));
    }
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available, serial build\n");
#endif
    bench_reduction(1u << 20);
    bench_reduction(static_cast<std::size_t>(scale) << 24);
    bench_overlap(32 * scale);
    bench_sweep(20001 * scale);
    return 0;
}
