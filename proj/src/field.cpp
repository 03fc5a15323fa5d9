#include "confsurf/field.hpp"
#include "confsurf/ratfn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace confsurf {

namespace {
void check_grid(const Grid& g) {
    if (g.n < 16 || (g.n & (g.n - 1)) != 0)
        throw std::invalid_argument("Grid: n must be a power of two >= 16");
    if (!(g.L > 0.0)) throw std::invalid_argument("Grid: L must be positive");
}
} // namespace

ComplexField::ComplexField(const Grid& g) : grid_(g) {
    check_grid(g);
    samples_.assign(g.n, Complex(0.0, 0.0));
    spectrum_.assign(g.n, Complex(0.0, 0.0));
    samples_ok_ = spectrum_ok_ = true;
}

ComplexField ComplexField::from_samples(const Grid& g, std::vector<Complex> samples) {
    check_grid(g);
    if (samples.size() != g.n) throw std::invalid_argument("from_samples: size mismatch");
    ComplexField f;
    f.grid_ = g;
    f.samples_ = std::move(samples);
    f.samples_ok_ = true;
    f.spectrum_ok_ = false;
    return f;
}

ComplexField ComplexField::from_spectrum(const Grid& g, std::vector<Complex> spectrum) {
    check_grid(g);
    if (spectrum.size() != g.n) throw std::invalid_argument("from_spectrum: size mismatch");
    ComplexField f;
    f.grid_ = g;
    f.spectrum_ = std::move(spectrum);
    f.spectrum_ok_ = true;
    f.samples_ok_ = false;
    return f;
}

ComplexField ComplexField::sample(const Grid& g, const std::function<Complex(double)>& fn) {
    check_grid(g);
    std::vector<Complex> s(g.n);
    kernels::parallel_fill(s, [&](std::size_t i) { return fn(g.u(i)); });
    return from_samples(g, std::move(s));
}

void ComplexField::ensure_samples() const {
    if (samples_ok_) return;
    // samples_j = sum_k c_k e^{i 2 pi k u_j / L} with u_j = -L/2 + j du;
    // the half-box offset is the parity twist (-1)^j.
    std::vector<Complex> d = spectrum_;
    for (std::size_t j = 1; j < d.size(); j += 2) d[j] = -d[j];
    kernels::fft(d, /*inverse=*/true);
    samples_ = std::move(d);
    samples_ok_ = true;
}

void ComplexField::ensure_spectrum() const {
    if (spectrum_ok_) return;
    std::vector<Complex> d = samples_;
    kernels::fft(d, /*inverse=*/false);
    const double inv_n = 1.0 / (double)grid_.n;
    for (std::size_t j = 0; j < d.size(); ++j) {
        d[j] *= inv_n;
        if (j & 1) d[j] = -d[j];
    }
    spectrum_ = std::move(d);
    spectrum_ok_ = true;
}

const std::vector<Complex>& ComplexField::samples() const {
    ensure_samples();
    return samples_;
}

const std::vector<Complex>& ComplexField::spectrum() const {
    ensure_spectrum();
    return spectrum_;
}

Complex ComplexField::mean() const { return spectrum()[0]; }

double ComplexField::max_abs_samples() const { return kernels::max_abs(samples()); }
double ComplexField::max_abs_spectrum() const { return kernels::max_abs(spectrum()); }

double ComplexField::l2_samples() const {
    const auto& s = samples();
    std::vector<double> sq(s.size());
    kernels::parallel_fill(sq, [&](std::size_t i) { return std::norm(s[i]); });
    return std::sqrt(kernels::blocked_sum(sq) / (double)s.size());
}

double ComplexField::l2_spectrum() const {
    const auto& c = spectrum();
    std::vector<double> sq(c.size());
    kernels::parallel_fill(sq, [&](std::size_t i) { return std::norm(c[i]); });
    return std::sqrt(kernels::blocked_sum(sq));
}

double ComplexField::upper_content() const {
    const auto& c = spectrum();
    double up = 0.0, all = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        const double a = std::abs(c[j]);
        all = std::max(all, a);
        if (k_of(j) > 0) up = std::max(up, a);
    }
    return all > 0.0 ? up / all : 0.0;
}

bool ComplexField::lower_analytic(double tol) const { return upper_content() <= tol; }

// ---------------------------------------------------------------------------

namespace {

ComplexField map_spectrum(const ComplexField& f,
                          const std::function<Complex(int, Complex)>& fn) {
    const auto& c = f.spectrum();
    std::vector<Complex> out(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) out[j] = fn(f.k_of(j), c[j]);
    return ComplexField::from_spectrum(f.grid(), std::move(out));
}

} // namespace

ComplexField project_minus(const ComplexField& f) {
    return map_spectrum(f, [](int k, Complex c) {
        if (k > 0) return Complex(0.0, 0.0);
        if (k == 0) return 0.5 * c;
        return c;
    });
}

ComplexField project_plus(const ComplexField& f) {
    return map_spectrum(f, [](int k, Complex c) {
        if (k < 0) return Complex(0.0, 0.0);
        if (k == 0) return 0.5 * c;
        return c;
    });
}

ComplexField hilbert(const ComplexField& f) {
    return map_spectrum(f, [](int k, Complex c) {
        if (k == 0) return Complex(0.0, 0.0);
        return (k > 0) ? Complex(0.0, 1.0) * c : Complex(0.0, -1.0) * c;
    });
}

ComplexField deriv(const ComplexField& f) {
    const Grid& g = f.grid();
    return map_spectrum(f, [&](int k, Complex c) {
        return Complex(0.0, g.wavenumber(k)) * c;
    });
}

ComplexField antideriv(const ComplexField& f) {
    const Grid& g = f.grid();
    const double maxc = f.max_abs_spectrum();
    if (std::abs(f.spectrum()[0]) > 1e-10 * std::max(maxc, 1e-300))
        throw ZeroModeError("antiderivative of a field with nonzero mean is secular");
    return map_spectrum(f, [&](int k, Complex c) {
        if (k == 0) return Complex(0.0, 0.0);
        return c / Complex(0.0, g.wavenumber(k));
    });
}

ComplexField dealias(const ComplexField& f) {
    const int kcut = (int)(f.grid().n / 3);
    return map_spectrum(f, [&](int k, Complex c) {
        return (std::abs(k) > kcut) ? Complex(0.0, 0.0) : c;
    });
}

// ---------------------------------------------------------------------------

ComplexField conj_field(const ComplexField& f) {
    const auto& s = f.samples();
    std::vector<Complex> out(s.size());
    kernels::parallel_fill(out, [&](std::size_t i) { return std::conj(s[i]); });
    return ComplexField::from_samples(f.grid(), std::move(out));
}

namespace {
void check_same_grid(const ComplexField& f, const ComplexField& g) {
    if (!(f.grid() == g.grid())) throw std::invalid_argument("field grids differ");
}
} // namespace

ComplexField multiply(const ComplexField& f, const ComplexField& g) {
    check_same_grid(f, g);
    const auto& a = f.samples();
    const auto& b = g.samples();
    std::vector<Complex> out(a.size());
    kernels::parallel_fill(out, [&](std::size_t i) { return a[i] * b[i]; });
    return ComplexField::from_samples(f.grid(), std::move(out));
}

ComplexField add(const ComplexField& f, const ComplexField& g) {
    check_same_grid(f, g);
    const auto& a = f.samples();
    const auto& b = g.samples();
    std::vector<Complex> out(a.size());
    kernels::parallel_fill(out, [&](std::size_t i) { return a[i] + b[i]; });
    return ComplexField::from_samples(f.grid(), std::move(out));
}

ComplexField sub(const ComplexField& f, const ComplexField& g) {
    check_same_grid(f, g);
    const auto& a = f.samples();
    const auto& b = g.samples();
    std::vector<Complex> out(a.size());
    kernels::parallel_fill(out, [&](std::size_t i) { return a[i] - b[i]; });
    return ComplexField::from_samples(f.grid(), std::move(out));
}

ComplexField scale(Complex s, const ComplexField& f) {
    const auto& a = f.samples();
    std::vector<Complex> out(a.size());
    kernels::parallel_fill(out, [&](std::size_t i) { return s * a[i]; });
    return ComplexField::from_samples(f.grid(), std::move(out));
}

ComplexField add_const(const ComplexField& f, Complex c) {
    const auto& a = f.samples();
    std::vector<Complex> out(a.size());
    kernels::parallel_fill(out, [&](std::size_t i) { return a[i] + c; });
    return ComplexField::from_samples(f.grid(), std::move(out));
}

ComplexField apply(const ComplexField& f, const std::function<Complex(Complex)>& fn) {
    const auto& a = f.samples();
    std::vector<Complex> out(a.size());
    kernels::parallel_fill(out, [&](std::size_t i) { return fn(a[i]); });
    return ComplexField::from_samples(f.grid(), std::move(out));
}

ComplexField mul_coordinate(const ComplexField& f) {
    const Grid& g = f.grid();
    const auto& c = f.spectrum();
    const std::size_t n = g.n;
    const double h = 6.283185307179586477 / g.L; // spacing in kappa

    // Gather the k <= 0 coefficients in increasing-kappa order:
    // k = -n/2, ..., -1, 0  ->  seq[0 .. n/2].
    const std::size_t m = n / 2 + 1;
    std::vector<Complex> seq(m);
    for (std::size_t i = 0; i < m; ++i) {
        const int k = -(int)(n / 2) + (int)i;
        const std::size_t j = (k >= 0) ? (std::size_t)k : n + (std::size_t)k;
        seq[i] = c[j];
    }

    auto d = [&](std::size_t i) -> Complex {
        if (i >= 2 && i + 2 < m) {
            return (-seq[i + 2] + 8.0 * seq[i + 1] - 8.0 * seq[i - 1] + seq[i - 2]) /
                   (12.0 * h);
        }
        if (i + 2 >= m) {
            // right edge (k near 0), backward-biased
            if (i + 1 == m) // i = m-1
                return (3.0 * seq[i - 4] - 16.0 * seq[i - 3] + 36.0 * seq[i - 2] -
                        48.0 * seq[i - 1] + 25.0 * seq[i]) /
                       (12.0 * h);
            return (-seq[i - 3] + 6.0 * seq[i - 2] - 18.0 * seq[i - 1] + 10.0 * seq[i] +
                    3.0 * seq[i + 1]) /
                   (12.0 * h);
        }
        // left edge (k near -n/2), forward-biased
        if (i == 0)
            return (-25.0 * seq[0] + 48.0 * seq[1] - 36.0 * seq[2] + 16.0 * seq[3] -
                    3.0 * seq[4]) /
                   (12.0 * h);
        return (-3.0 * seq[0] - 10.0 * seq[1] + 18.0 * seq[2] - 6.0 * seq[3] + seq[4]) /
               (12.0 * h);
    };

    std::vector<Complex> out(n, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        const int k = -(int)(n / 2) + (int)i;
        const std::size_t j = (k >= 0) ? (std::size_t)k : n + (std::size_t)k;
        out[j] = Complex(0.0, 1.0) * d(i);
    }
    // The transform of w*f jumps at k = 0 (one-sided value 2x the principal
    // value); the k = 0 coefficient of the periodization takes the mean.
    out[0] *= 0.5;
    return ComplexField::from_spectrum(g, std::move(out));
}

double max_abs_diff(const ComplexField& f, const ComplexField& g) {
    check_same_grid(f, g);
    const auto& a = f.samples();
    const auto& b = g.samples();
    std::vector<double> d(a.size());
    kernels::parallel_fill(d, [&](std::size_t i) { return std::abs(a[i] - b[i]); });
    double m = 0.0;
    for (double v : d) m = std::max(m, v);
    return m;
}

// ---------------------------------------------------------------------------
// Off-axis continuation.

namespace {

struct RetainedSpectrum {
    std::vector<std::pair<int, Complex>> modes; // k <= 0 only
    int k_ret = 0;                              // largest |k| retained
    double max_c = 0.0;
};

RetainedSpectrum retained(const ComplexField& f, const OffaxisOptions& opts) {
    RetainedSpectrum r;
    const auto& c = f.spectrum();
    r.max_c = f.max_abs_spectrum();
    const double cut = opts.zero_threshold * r.max_c;
    for (std::size_t j = 0; j < c.size(); ++j) {
        const int k = f.k_of(j);
        if (k > 0) continue;
        if (std::abs(c[j]) <= cut) continue; // exact zeros drop even when cut == 0
        r.modes.emplace_back(k, c[j]);
        r.k_ret = std::max(r.k_ret, -k);
    }
    return r;
}

void check_height(const ComplexField& f, const RetainedSpectrum& r, double h,
                  const OffaxisOptions& opts) {
    if (h <= 0.0 || r.k_ret == 0) return;
    // The coefficients at the retention edge sit at the noise floor
    // ~ zero_threshold * max|c|; their amplification bounds the error.
    const double kappa = 6.283185307179586477 * (double)r.k_ret / f.grid().L;
    if (opts.zero_threshold * std::exp(kappa * h) > opts.tol_eval)
        throw ContinuationUnreliable("amplified noise floor exceeds the error budget");
}

} // namespace

double offaxis_max_height(const ComplexField& f, const OffaxisOptions& opts) {
    const RetainedSpectrum r = retained(f, opts);
    if (r.k_ret == 0) return 1e300; // constant field continues everywhere
    const double kappa = 6.283185307179586477 * (double)r.k_ret / f.grid().L;
    return std::log(opts.tol_eval / opts.zero_threshold) / kappa;
}

Complex eval_offaxis(const ComplexField& f, Complex w, const OffaxisOptions& opts) {
    const RetainedSpectrum r = retained(f, opts);
    check_height(f, r, w.imag(), opts);
    const double two_pi_over_L = 6.283185307179586477 / f.grid().L;
    Complex v = 0.0;
    for (const auto& [k, ck] : r.modes)
        v += ck * std::exp(Complex(0.0, 1.0) * ((double)k * two_pi_over_L) * w);
    return v;
}

Complex eval_offaxis_deriv(const ComplexField& f, Complex w, const OffaxisOptions& opts) {
    const RetainedSpectrum r = retained(f, opts);
    check_height(f, r, w.imag(), opts);
    const double two_pi_over_L = 6.283185307179586477 / f.grid().L;
    Complex v = 0.0;
    for (const auto& [k, ck] : r.modes) {
        const Complex ik(0.0, (double)k * two_pi_over_L);
        v += ck * ik * std::exp(ik * w);
    }
    return v;
}

ComplexField sample_periodized(const RationalFn& f, const Grid& g) {
    return ComplexField::sample(g, [&](double u) { return f.eval_periodized(u, g.L); });
}

} // namespace confsurf
