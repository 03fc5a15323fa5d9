#include "confsurf/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace confsurf {
namespace kernels {

namespace {

int env_thread_count() {
    const char* s = std::getenv("CONFSURF_THREADS");
    if (!s) return 1;
    int n = std::atoi(s);
    return n >= 1 ? n : 1;
}

std::atomic<int> g_threads{0}; // 0 = uninitialized

inline bool use_parallel(std::size_t n) {
#ifdef _OPENMP
    return thread_count() > 1 && n >= 4096;
#else
    (void)n;
    return false;
#endif
}

constexpr std::size_t kBlock = 1024; // reduction block, fixed regardless of threads

} // namespace

int thread_count() {
    int t = g_threads.load(std::memory_order_relaxed);
    if (t == 0) {
        t = env_thread_count();
        g_threads.store(t, std::memory_order_relaxed);
    }
    return t;
}

void set_thread_count(int n) {
    g_threads.store(n >= 1 ? n : 1, std::memory_order_relaxed);
}

bool openmp_available() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

void parallel_fill(std::vector<Complex>& y, const std::function<Complex(std::size_t)>& f) {
    const std::size_t n = y.size();
    if (use_parallel(n)) {
#ifdef _OPENMP
#pragma omp parallel for num_threads(thread_count()) schedule(static)
        for (long long i = 0; i < (long long)n; ++i) y[(std::size_t)i] = f((std::size_t)i);
#endif
    } else {
        for (std::size_t i = 0; i < n; ++i) y[i] = f(i);
    }
}

void parallel_fill(std::vector<double>& y, const std::function<double(std::size_t)>& f) {
    const std::size_t n = y.size();
    if (use_parallel(n)) {
#ifdef _OPENMP
#pragma omp parallel for num_threads(thread_count()) schedule(static)
        for (long long i = 0; i < (long long)n; ++i) y[(std::size_t)i] = f((std::size_t)i);
#endif
    } else {
        for (std::size_t i = 0; i < n; ++i) y[i] = f(i);
    }
}

namespace {

template <class T>
T blocked_sum_impl(const T* x, std::size_t n) {
    if (n == 0) return T{};
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<T> partial(nblocks, T{});
    auto block = [&](std::size_t b) {
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(lo + kBlock, n);
        T s{};
        for (std::size_t i = lo; i < hi; ++i) s += x[i];
        return s;
    };
    if (use_parallel(n)) {
#ifdef _OPENMP
#pragma omp parallel for num_threads(thread_count()) schedule(static)
        for (long long b = 0; b < (long long)nblocks; ++b)
            partial[(std::size_t)b] = block((std::size_t)b);
#endif
    } else {
        for (std::size_t b = 0; b < nblocks; ++b) partial[b] = block(b);
    }
    T total{};
    for (std::size_t b = 0; b < nblocks; ++b) total += partial[b]; // fixed order
    return total;
}

} // namespace

double blocked_sum(const double* x, std::size_t n) { return blocked_sum_impl(x, n); }
Complex blocked_sum(const Complex* x, std::size_t n) { return blocked_sum_impl(x, n); }
double blocked_sum(const std::vector<double>& x) { return blocked_sum_impl(x.data(), x.size()); }
Complex blocked_sum(const std::vector<Complex>& x) { return blocked_sum_impl(x.data(), x.size()); }

double max_abs(const Complex* x, std::size_t n) {
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(nblocks, 0.0);
    auto block = [&](std::size_t b) {
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(lo + kBlock, n);
        double m = 0.0;
        for (std::size_t i = lo; i < hi; ++i) m = std::max(m, std::abs(x[i]));
        return m;
    };
    if (use_parallel(n)) {
#ifdef _OPENMP
#pragma omp parallel for num_threads(thread_count()) schedule(static)
        for (long long b = 0; b < (long long)nblocks; ++b)
            partial[(std::size_t)b] = block((std::size_t)b);
#endif
    } else {
        for (std::size_t b = 0; b < nblocks; ++b) partial[b] = block(b);
    }
    double m = 0.0;
    for (double v : partial) m = std::max(m, v);
    return m;
}

double max_abs(const std::vector<Complex>& x) { return max_abs(x.data(), x.size()); }

ScanMin scan_min(std::size_t ni, std::size_t nj,
                 const std::function<double(std::size_t, std::size_t)>& value) {
    if (ni == 0 || nj == 0) throw std::invalid_argument("scan_min: empty lattice");
    auto row_min = [&](std::size_t i) {
        ScanMin best{value(i, 0), i, 0};
        for (std::size_t j = 1; j < nj; ++j) {
            double v = value(i, j);
            if (v < best.value) best = ScanMin{v, i, j};
        }
        return best;
    };
    std::vector<ScanMin> per_row(ni);
    if (thread_count() > 1 && ni * nj >= 4096) {
#ifdef _OPENMP
#pragma omp parallel for num_threads(thread_count()) schedule(static)
        for (long long i = 0; i < (long long)ni; ++i)
            per_row[(std::size_t)i] = row_min((std::size_t)i);
#else
        for (std::size_t i = 0; i < ni; ++i) per_row[i] = row_min(i);
#endif
    } else {
        for (std::size_t i = 0; i < ni; ++i) per_row[i] = row_min(i);
    }
    ScanMin best = per_row[0];
    for (std::size_t i = 1; i < ni; ++i)
        if (per_row[i].value < best.value) best = per_row[i]; // first row wins ties
    return best;
}

// ---------------------------------------------------------------------------
// FFT

namespace {

struct FftPlan {
    std::size_t n = 0;
    std::vector<std::size_t> bitrev;
    std::vector<Complex> twiddle; // twiddle[half + j] ordering per stage, forward sign
};

const FftPlan& plan_for(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, FftPlan> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft: size must be a power of two");

    FftPlan p;
    p.n = n;
    p.bitrev.resize(n);
    std::size_t logn = 0;
    while ((std::size_t(1) << logn) < n) ++logn;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < logn; ++b)
            if (i & (std::size_t(1) << b)) r |= std::size_t(1) << (logn - 1 - b);
        p.bitrev[i] = r;
    }
    // Twiddles for each stage, concatenated: stage with half-size h stores h
    // factors exp(-i*pi*j/h) starting at offset h (so offsets 1,2,4,... pack
    // into a length-n array).
    p.twiddle.assign(n, Complex(1.0, 0.0));
    const double pi = 3.14159265358979323846;
    for (std::size_t h = 1; h < n; h <<= 1)
        for (std::size_t j = 0; j < h; ++j)
            p.twiddle[h + j] = std::polar(1.0, -pi * (double)j / (double)h);
    auto res = cache.emplace(n, std::move(p));
    return res.first->second;
}

} // namespace

void fft(std::vector<Complex>& data, bool inverse) {
    const std::size_t n = data.size();
    if (n <= 1) return;
    const FftPlan& p = plan_for(n);

    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = p.bitrev[i];
        if (i < j) std::swap(data[i], data[j]);
    }

    const bool par = use_parallel(n);
    for (std::size_t h = 1; h < n; h <<= 1) {
        const std::size_t ngroups = n / (2 * h);
        auto butterfly_group = [&](std::size_t g) {
            const std::size_t base = g * 2 * h;
            for (std::size_t j = 0; j < h; ++j) {
                Complex w = p.twiddle[h + j];
                if (inverse) w = std::conj(w);
                Complex& a = data[base + j];
                Complex& b = data[base + j + h];
                const Complex t = w * b;
                b = a - t;
                a = a + t;
            }
        };
        if (par && ngroups >= 2) {
#ifdef _OPENMP
#pragma omp parallel for num_threads(thread_count()) schedule(static)
            for (long long g = 0; g < (long long)ngroups; ++g)
                butterfly_group((std::size_t)g);
#endif
        } else {
            for (std::size_t g = 0; g < ngroups; ++g) butterfly_group(g);
        }
    }
}

} // namespace kernels
} // namespace confsurf
