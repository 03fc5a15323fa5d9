#ifndef CONFSURF_RATFN_HPP
#define CONFSURF_RATFN_HPP

// Exact algebra of rational functions of the form
//     f(w) = constant + sum_j coeff_j / (w - pole_j)^order_j
// with all poles strictly off the real axis. This is the discretization-free
// oracle used to cross-check the spectral projector, the Hilbert transform and
// the solver nonlinearities. Products are expanded by residue-based partial
// fractions, never by sampling.

#include <complex>
#include <optional>
#include <vector>

#include "confsurf/errors.hpp"

namespace confsurf {

using Complex = std::complex<double>;

struct RatTerm {
    Complex pole;
    int order = 1;   // >= 1
    Complex coeff;
};

struct RatDivW; // result of exact division by w, defined below

class RationalFn {
public:
    static constexpr double kMergeTol = 1e-12;
    static constexpr int kOrderCap = 8;

    RationalFn() = default;
    explicit RationalFn(Complex constant) : constant_(constant) {}
    RationalFn(std::vector<RatTerm> terms, Complex constant);

    static RationalFn pole_term(Complex pole, int order, Complex coeff);

    const std::vector<RatTerm>& terms() const { return terms_; }
    Complex constant() const { return constant_; }
    bool is_zero(double tol = 0.0) const;

    // Pointwise evaluation on the line; throws PoleHit within 1e-14 of a pole.
    Complex eval(Complex w) const;

    // Part analytic and decaying in the lower half-plane: terms with poles in
    // the upper half-plane plus half the constant. pplus() is the mirror.
    RationalFn pminus() const;
    RationalFn pplus() const;

    // Reflection f_bar with boundary values conj(f(u)) on the real axis.
    RationalFn conj() const;

    RationalFn derivative() const;     // OrderOverflow beyond the order cap
    RationalFn antiderivative() const; // NotIntegrableToRational on log terms

    // Multiplication by the coordinate w. Requires constant == 0 (otherwise
    // the result grows linearly and leaves the class).
    RationalFn mul_w() const;

    // Exact division by w. The on-axis pole that division creates is returned
    // separately so RationalFn never holds a real-axis pole.
    RatDivW div_w() const;

    // PV integral over the whole line; requires constant == 0.
    Complex line_integral() const;

    // Sum of simple-pole coefficients in the chosen half-plane. This is the
    // 1/w-tail coefficient of the corresponding analytic part.
    Complex simple_coeff_sum(bool upper) const;

    double sup_norm_estimate() const; // crude scale for tolerances

    bool approx_equal(const RationalFn& other, double tol = kMergeTol) const;

    RationalFn& operator+=(const RationalFn& g);
    friend RationalFn operator+(RationalFn f, const RationalFn& g) { f += g; return f; }
    friend RationalFn operator-(const RationalFn& f, const RationalFn& g);
    friend RationalFn operator*(const RationalFn& f, const RationalFn& g);
    friend RationalFn operator*(Complex s, RationalFn f);

    // --- finite-box (period L) evaluation -------------------------------
    // A function sampled on a periodic grid behaves as its L-periodization
    // sum_j f(. + jL); these evaluate that object and the exact action of the
    // discrete projector / Hilbert transform / derivative on it. Simple poles
    // feed the k = 0 mode an extra +-(i*pi/L) per unit coefficient, which the
    // halved-zero-mode convention then splits.
    Complex eval_periodized(Complex w, double L) const;
    Complex pminus_periodized(Complex u, double L) const;
    Complex hilbert_periodized(Complex u, double L) const;
    Complex deriv_periodized(Complex u, double L) const;
    Complex periodized_mean(double L) const; // exact k=0 coefficient

private:
    std::vector<RatTerm> terms_;
    Complex constant_{0.0, 0.0};

    void canonicalize();
};

struct RatDivW {
    RationalFn regular;
    Complex origin_coeff; // equals f(0)
};

// Periodization kernel C_m(x; L) = sum_{j in Z} 1/(x + jL)^m, m in [1, 9].
Complex periodization_kernel(Complex x, int order, double L);

} // namespace confsurf

#endif
