#include "confsurf/util.hpp"
#include "confsurf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace confsurf {

LineFit fit_line(const std::vector<double>& t, const std::vector<Complex>& y) {
    const std::size_t n = t.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("fit_line: need >= 2 samples");
    double st = 0, stt = 0;
    Complex sy = 0, sty = 0;
    for (std::size_t i = 0; i < n; ++i) {
        st += t[i];
        stt += t[i] * t[i];
        sy += y[i];
        sty += t[i] * y[i];
    }
    const double det = (double)n * stt - st * st;
    if (det == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit fit;
    fit.slope = ((double)n * sty - st * sy) / det;
    fit.intercept = (sy * stt - st * sty) / det;
    fit.residual_max = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        fit.residual_max = std::max(fit.residual_max,
                                    std::abs(y[i] - (fit.intercept + fit.slope * t[i])));
    return fit;
}

double loglog_slope(const std::vector<double>& t, const std::vector<double>& y) {
    const std::size_t n = t.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("loglog_slope: need >= 2 samples");
    std::vector<double> lt(n);
    std::vector<Complex> ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (t[i] <= 0 || y[i] <= 0) throw std::invalid_argument("loglog_slope: positive data required");
        lt[i] = std::log(t[i]);
        ly[i] = Complex(std::log(y[i]), 0.0);
    }
    return fit_line(lt, ly).slope.real();
}

MonotoneMap::MonotoneMap(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size() || x_.size() < 2)
        throw std::invalid_argument("MonotoneMap: need >= 2 samples");
    for (std::size_t i = 1; i < x_.size(); ++i)
        if (!(x_[i] > x_[i - 1]))
            throw NonMonotone("MonotoneMap abscissae not strictly increasing");
}

namespace {
double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t hi = (std::size_t)std::distance(xs.begin(), it);
    if (hi == 0) hi = 1;
    if (hi == xs.size()) hi = xs.size() - 1;
    const std::size_t lo = hi - 1;
    const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + w * (ys[hi] - ys[lo]);
}
} // namespace

double MonotoneMap::operator()(double x) const { return interp(x_, y_, x); }

double MonotoneMap::inverse(double y) const {
    for (std::size_t i = 1; i < y_.size(); ++i)
        if (!(y_[i] > y_[i - 1]))
            throw NonMonotone("MonotoneMap ordinates not strictly increasing, inverse undefined");
    return interp(y_, x_, y);
}

Complex fd_deriv5(const Complex* f, double h) {
    return (-f[2] + 8.0 * f[1] - 8.0 * f[-1] + f[-2]) / (12.0 * h);
}

unsigned long long Rng::next() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ull;
    unsigned long long z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
    const double u = (double)(next() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

Complex Rng::complex_in_box(double re_lo, double re_hi, double im_lo, double im_hi) {
    const double re = uniform(re_lo, re_hi);
    const double im = uniform(im_lo, im_hi);
    return Complex(re, im);
}

} // namespace confsurf
