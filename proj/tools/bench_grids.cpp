// Benchmark: OpenMP grid kernels against the serial reference loops.
// Verifies bit-for-bit agreement (the contract of grids.hpp) and reports the
// speedup. Usage: bench_grids [n]  with n the heatmap edge (default 160).
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "wavepack/continuum_1d.hpp"
#include "wavepack/grids.hpp"

using namespace wavepack;
using c1d::cdouble;

namespace {

double seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

template <typename T>
bool bitwise_equal(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] == b[i])) return false; // exact, no tolerance
    }
    return true;
}

struct Timing {
    double serial = 0.0, parallel = 0.0;
    bool identical = false;
};

void print_row(const char* name, const Timing& t) {
    std::printf("%-22s %10.3f s %10.3f s %8.2fx   %s\n", name, t.serial, t.parallel,
                t.serial / t.parallel, t.identical ? "bitwise-identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 160;
    if (n < 8) {
        std::fprintf(stderr, "usage: bench_grids [n >= 8]\n");
        return 2;
    }
    std::printf("grid kernels, %d OpenMP thread(s), n = %d\n", grids::max_threads(), n);
    std::printf("%-22s %12s %12s %9s\n", "kernel", "serial", "parallel", "speedup");

    const auto model = c1d::PotentialModel1D::delta(1.0, 1.0);
    const auto k1s = linspace(0.3, 2.5, n);
    const auto k2s = linspace(0.3, 2.5, n);
    bool all_ok = true;

    {
        Timing t;
        auto t0 = std::chrono::steady_clock::now();
        const auto serial = grids::delta_heatmap(model, k1s, k2s, false, false);
        t.serial = seconds(t0);
        t0 = std::chrono::steady_clock::now();
        const auto par = grids::delta_heatmap(model, k1s, k2s, false, true);
        t.parallel = seconds(t0);
        t.identical = bitwise_equal(serial, par);
        all_ok = all_ok && t.identical;
        print_row("delta_heatmap", t);
    }

    const auto alpha = c1d::gaussian_alpha(1.0, 0.2);
    c1d::NormDriftKernel kernel;
    {
        Timing t;
        auto t0 = std::chrono::steady_clock::now();
        const auto serial = grids::norm_drift_assemble(alpha, model, 0.1, 2.0, n, false);
        t.serial = seconds(t0);
        t0 = std::chrono::steady_clock::now();
        kernel = grids::norm_drift_assemble(alpha, model, 0.1, 2.0, n, true);
        t.parallel = seconds(t0);
        t.identical = bitwise_equal(serial.mat, kernel.mat) &&
                      bitwise_equal(serial.k, kernel.k) &&
                      bitwise_equal(serial.energy, kernel.energy);
        all_ok = all_ok && t.identical;
        print_row("norm_drift_assemble", t);
    }

    {
        const auto ts = linspace(0.0, 200.0, 64 * n);
        Timing t;
        auto t0 = std::chrono::steady_clock::now();
        const auto serial = grids::norm_drift_sweep(kernel, ts, false);
        t.serial = seconds(t0);
        t0 = std::chrono::steady_clock::now();
        const auto par = grids::norm_drift_sweep(kernel, ts, true);
        t.parallel = seconds(t0);
        t.identical = bitwise_equal(serial, par);
        all_ok = all_ok && t.identical;
        print_row("norm_drift_sweep", t);
    }

    if (!all_ok) {
        std::fprintf(stderr, "serial/parallel results differ\n");
        return 1;
    }
    return 0;
}
