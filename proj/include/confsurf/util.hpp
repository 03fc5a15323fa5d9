#ifndef CONFSURF_UTIL_HPP
#define CONFSURF_UTIL_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace confsurf {

using Complex = std::complex<double>;

// Least-squares line y = a + b*t. residual is the max |y - (a + b*t)|.
struct LineFit {
    Complex intercept;
    Complex slope;
    double residual_max;
};
LineFit fit_line(const std::vector<double>& t, const std::vector<Complex>& y);

// Slope of log|y| against log(t); used for order-of-accuracy fits.
double loglog_slope(const std::vector<double>& t, const std::vector<double>& y);

// Piecewise-linear interpolant of a strictly increasing sampled map x -> y,
// and its inverse. Throws NonMonotone if x is not strictly increasing.
class MonotoneMap {
public:
    MonotoneMap() = default;
    MonotoneMap(std::vector<double> x, std::vector<double> y);
    double operator()(double x) const;
    double inverse(double y) const;
    const std::vector<double>& abscissae() const { return x_; }
    const std::vector<double>& ordinates() const { return y_; }
private:
    std::vector<double> x_, y_;
};

// Centered finite-difference weights on a uniform grid.
// First derivative, fourth order: (-f2 + 8f1 - 8f-1 + f-2) / (12h).
Complex fd_deriv5(const Complex* f, double h); // f points at the center of a 5-sample window

// exp(i*theta) table helpers are not needed; std::polar is used directly.

// Deterministic pseudo-random complex numbers for property tests.
class Rng {
public:
    explicit Rng(unsigned long long seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    double uniform(double lo, double hi);
    Complex complex_in_box(double re_lo, double re_hi, double im_lo, double im_hi);
private:
    unsigned long long state_;
    unsigned long long next();
};

} // namespace confsurf

#endif
