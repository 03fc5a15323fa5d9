#ifndef CONFSURF_KERNELS_HPP
#define CONFSURF_KERNELS_HPP

// Data-parallel inner loops used throughout the solver. Every kernel has a
// serial reference path and an OpenMP path; results are bit-identical for any
// thread count (maps touch disjoint elements, reductions accumulate fixed-size
// blocks that are always combined in index order). Thread count comes from
// CONFSURF_THREADS and defaults to 1, i.e. the serial reference.

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace confsurf {

using Complex = std::complex<double>;

namespace kernels {

int thread_count();
void set_thread_count(int n);   // n >= 1; overrides the environment setting
bool openmp_available();

// y[i] = f(i) for i in [0, n). The callable must be safe to invoke
// concurrently for distinct i.
void parallel_fill(std::vector<Complex>& y, const std::function<Complex(std::size_t)>& f);
void parallel_fill(std::vector<double>& y, const std::function<double(std::size_t)>& f);

// Deterministic blocked sums: identical result for any thread count.
double blocked_sum(const double* x, std::size_t n);
Complex blocked_sum(const Complex* x, std::size_t n);
double blocked_sum(const std::vector<double>& x);
Complex blocked_sum(const std::vector<Complex>& x);

double max_abs(const Complex* x, std::size_t n);
double max_abs(const std::vector<Complex>& x);

// Argmin of a scalar field sampled on an ni x nj lattice, value(i, j) must be
// concurrently evaluable. Ties break toward the smallest flat index.
struct ScanMin {
    double value;
    std::size_t i;
    std::size_t j;
};
ScanMin scan_min(std::size_t ni, std::size_t nj,
                 const std::function<double(std::size_t, std::size_t)>& value);

// In-place radix-2 FFT, unnormalized: X[k] = sum_j x[j] exp(-2*pi*i*j*k/n).
// n must be a power of two. The inverse is unnormalized as well.
void fft(std::vector<Complex>& data, bool inverse);

} // namespace kernels

} // namespace confsurf

#endif
