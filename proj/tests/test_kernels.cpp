#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "confsurf/kernels.hpp"

using namespace confsurf;

namespace {

std::vector<Complex> make_data(std::size_t n, unsigned seed) {
    std::vector<Complex> v(n);
    unsigned long long s = seed;
    for (auto& z : v) {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        const double a = (double)(s >> 11) * 0x1.0p-53;
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        const double b = (double)(s >> 11) * 0x1.0p-53;
        z = Complex(2.0 * a - 1.0, 2.0 * b - 1.0);
    }
    return v;
}

std::vector<Complex> dft_reference(const std::vector<Complex>& x, bool inverse) {
    const std::size_t n = x.size();
    std::vector<Complex> out(n, Complex(0, 0));
    const double sgn = inverse ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
            out[k] += x[j] *
                      std::polar(1.0, sgn * 2.0 * 3.14159265358979323846 * (double)(j * k % n) / (double)n);
    return out;
}

} // namespace

TEST_CASE("fft matches the direct transform") {
    for (std::size_t n : {16u, 64u, 256u}) {
        auto x = make_data(n, 42 + (unsigned)n);
        auto ref = dft_reference(x, false);
        auto got = x;
        kernels::fft(got, false);
        for (std::size_t k = 0; k < n; ++k)
            CHECK(std::abs(got[k] - ref[k]) < 1e-10 * (double)n);
    }
}

TEST_CASE("fft inverse round trip") {
    auto x = make_data(1024, 7);
    auto y = x;
    kernels::fft(y, false);
    kernels::fft(y, true);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(std::abs(y[i] / 1024.0 - x[i]) < 1e-12);
}

TEST_CASE("parallel kernels are bit-identical to the serial reference") {
    auto x = make_data(1 << 14, 3);

    kernels::set_thread_count(1);
    auto serial = x;
    kernels::fft(serial, false);
    const Complex sum_serial = kernels::blocked_sum(x);
    const double max_serial = kernels::max_abs(x);

    kernels::set_thread_count(4);
    auto parallel = x;
    kernels::fft(parallel, false);
    const Complex sum_parallel = kernels::blocked_sum(x);
    const double max_parallel = kernels::max_abs(x);
    kernels::set_thread_count(1);

    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(serial[i].real() == parallel[i].real());
        CHECK(serial[i].imag() == parallel[i].imag());
    }
    CHECK(sum_serial.real() == sum_parallel.real());
    CHECK(sum_serial.imag() == sum_parallel.imag());
    CHECK(max_serial == max_parallel);
}

TEST_CASE("scan_min finds the lattice argmin with deterministic ties") {
    auto value = [](std::size_t i, std::size_t j) {
        return std::pow((double)i - 37.0, 2) + std::pow((double)j - 91.0, 2);
    };
    const auto m = kernels::scan_min(128, 128, value);
    CHECK(m.i == 37);
    CHECK(m.j == 91);
    CHECK(m.value == 0.0);

    // Constant field: first index wins regardless of thread count.
    kernels::set_thread_count(4);
    const auto tie = kernels::scan_min(64, 64, [](std::size_t, std::size_t) { return 1.0; });
    kernels::set_thread_count(1);
    CHECK(tie.i == 0);
    CHECK(tie.j == 0);
}

TEST_CASE("blocked_sum agrees with a compensated reference") {
    auto x = make_data(100000, 11);
    Complex ref(0, 0);
    for (const auto& z : x) ref += z;
    const Complex got = kernels::blocked_sum(x);
    CHECK(std::abs(got - ref) < 1e-9);
}
