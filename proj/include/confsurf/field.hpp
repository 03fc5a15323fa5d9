#ifndef CONFSURF_FIELD_HPP
#define CONFSURF_FIELD_HPP

// Periodic pseudospectral discretization of complex functions of a real
// variable u in [-L/2, L/2). Spectrum convention: coefficients c_k of the
// basis exp(i*2*pi*k*u/L) for k = -n/2 .. n/2-1. A function analytic and
// decaying in the lower half-plane has support on k <= 0 (exp(ikw) is bounded
// there iff k <= 0); that identification is load-bearing everywhere.

#include <complex>
#include <functional>
#include <vector>

#include "confsurf/errors.hpp"
#include "confsurf/kernels.hpp"

namespace confsurf {

struct Grid {
    std::size_t n = 1024;            // power of two
    double L = 64.0 * 6.283185307179586477; // box period

    double du() const { return L / (double)n; }
    double u(std::size_t i) const { return -0.5 * L + (double)i * du(); }
    double wavenumber(int k) const { return 6.283185307179586477 * (double)k / L; }
    bool operator==(const Grid& o) const { return n == o.n && L == o.L; }
};

class ComplexField {
public:
    ComplexField() = default;
    explicit ComplexField(const Grid& g); // zero field

    static ComplexField from_samples(const Grid& g, std::vector<Complex> samples);
    static ComplexField from_spectrum(const Grid& g, std::vector<Complex> spectrum);
    static ComplexField sample(const Grid& g, const std::function<Complex(double)>& f);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return grid_.n; }

    const std::vector<Complex>& samples() const;
    const std::vector<Complex>& spectrum() const; // natural FFT order, see k_of

    // Natural-order index <-> wavenumber.
    int k_of(std::size_t j) const {
        return (j < grid_.n / 2) ? (int)j : (int)j - (int)grid_.n;
    }

    Complex mean() const; // k = 0 coefficient

    double max_abs_samples() const;
    double max_abs_spectrum() const;
    double l2_samples() const;   // sqrt(mean |f|^2)
    double l2_spectrum() const;  // sqrt(sum |c_k|^2), equals l2_samples (Parseval)

    // Fraction of spectral mass on k > 0; the analyticity diagnostic.
    double upper_content() const;
    bool lower_analytic(double tol = 1e-10) const;

private:
    Grid grid_;
    mutable std::vector<Complex> samples_, spectrum_;
    mutable bool samples_ok_ = false, spectrum_ok_ = false;

    void ensure_samples() const;
    void ensure_spectrum() const;
};

// --- linear spectral operations -------------------------------------------

ComplexField project_minus(const ComplexField& f); // keep k<0, halve k=0, drop k>0
ComplexField project_plus(const ComplexField& f);  // mirror
ComplexField hilbert(const ComplexField& f);       // c_k -> i*sign(k)*c_k
ComplexField deriv(const ComplexField& f);
ComplexField antideriv(const ComplexField& f);     // ZeroModeError on nonzero mean
ComplexField dealias(const ComplexField& f);       // zero |k| > n/3

// --- pointwise operations --------------------------------------------------

ComplexField conj_field(const ComplexField& f);    // boundary-value conjugate
ComplexField multiply(const ComplexField& f, const ComplexField& g);
ComplexField add(const ComplexField& f, const ComplexField& g);
ComplexField sub(const ComplexField& f, const ComplexField& g);
ComplexField scale(Complex s, const ComplexField& f);
ComplexField add_const(const ComplexField& f, Complex c);
ComplexField apply(const ComplexField& f, const std::function<Complex(Complex)>& fn);

// Multiplication by the coordinate w for a lower-analytic field with an
// o(1/u) tail: the periodization of w*f(w), not the sawtooth product u*f(u)
// (which jumps at the box seam). Acts as i d/dk on the k <= 0 spectrum,
// fourth-order stencils, one-sided at the support edges.
ComplexField mul_coordinate(const ComplexField& f);

double max_abs_diff(const ComplexField& f, const ComplexField& g);

// --- analytic continuation off the axis ------------------------------------

struct OffaxisOptions {
    double zero_threshold = 1e-12; // relative; coefficients below are dropped
    double tol_eval = 1e-8;        // relative error budget for the continuation
};

// Evaluate a lower-analytic field at complex w: sum over k <= 0 of c_k e^{ikw}.
// Always valid for Im w <= 0; for Im w > 0 throws ContinuationUnreliable when
// the noise floor at the largest retained wavenumber, amplified by
// e^{|k| 2 pi Im w / L}, would exceed tol_eval * max|c|.
Complex eval_offaxis(const ComplexField& f, Complex w, const OffaxisOptions& opts = {});
Complex eval_offaxis_deriv(const ComplexField& f, Complex w, const OffaxisOptions& opts = {});
double offaxis_max_height(const ComplexField& f, const OffaxisOptions& opts = {});

// --- sampling rational data -------------------------------------------------

class RationalFn;

// Samples the exact L-periodization of a rational function. Sampling the
// line form instead would leave an O(1/L) mismatch at the box seam whose
// spectral tail destroys the k <= 0 support; all rational initial data and
// oracle comparisons therefore go through this.
ComplexField sample_periodized(const RationalFn& f, const Grid& g);

} // namespace confsurf

#endif
