// Timing comparison of the serial reference kernels against the OpenMP paths.
// Usage: bench_kernels [threads]  (default: hardware count when OpenMP is in)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "confsurf/compressed_fluid.hpp"
#include "confsurf/field.hpp"
#include "confsurf/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace confsurf;

namespace {

double seconds(const std::function<void()>& fn, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-28s %12.6f ms %12.6f ms %8.2fx\n", name, serial * 1e3, parallel * 1e3,
                parallel > 0 ? serial / parallel : 0.0);
}

} // namespace

int main(int argc, char** argv) {
    int threads = 2;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    if (argc > 1) threads = std::atoi(argv[1]);
    std::printf("kernel benchmark, serial vs %d threads (OpenMP %s)\n", threads,
                kernels::openmp_available() ? "on" : "off");
    std::printf("%-28s %15s %15s %9s\n", "kernel", "serial", "parallel", "speedup");

    const std::size_t n = 1 << 20;
    std::vector<Complex> data(n);
    for (std::size_t i = 0; i < n; ++i)
        data[i] = Complex(std::sin(0.001 * (double)i), std::cos(0.0017 * (double)i));

    auto bench_pair = [&](const char* name, const std::function<void()>& fn) {
        kernels::set_thread_count(1);
        const double ts = seconds(fn, 5);
        kernels::set_thread_count(threads);
        const double tp = seconds(fn, 5);
        kernels::set_thread_count(1);
        row(name, ts, tp);
    };

    bench_pair("fft 2^20", [&] {
        std::vector<Complex> d = data;
        kernels::fft(d, false);
    });
    bench_pair("blocked_sum 2^20", [&] { (void)kernels::blocked_sum(data); });
    bench_pair("pointwise product 2^20", [&] {
        std::vector<Complex> out(n);
        kernels::parallel_fill(out, [&](std::size_t i) { return data[i] * data[i]; });
    });

    const PoleFamilyParams pf{1.0, 0.2};
    bench_pair("fold scan 2000x2000", [&] {
        (void)kernels::scan_min(2000, 2000, [&](std::size_t i, std::size_t j) {
            const double u = -3.0 + 6.0 * (double)i / 1999.0;
            const double t = 1.0 + 3.0 * (double)j / 1999.0;
            return std::abs(pole_family_xu(pf, u, t));
        });
    });

    Grid g;
    g.n = 2048;
    ComplexField f = ComplexField::sample(g, [](double u) {
        return 1.0 / (u - Complex(0.0, 3.0));
    });
    bench_pair("project_minus 2048", [&] { (void)project_minus(f).samples(); });

    return 0;
}
