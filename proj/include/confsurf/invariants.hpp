#ifndef CONFSURF_INVARIANTS_HPP
#define CONFSURF_INVARIANTS_HPP

// Zeros of R in the upper half-plane: location by Newton iteration on the
// spectral continuation, the local expansion data a_n = R'(lambda_n) and
// b_n = V(lambda_n), their evolution laws, and closed-contour invariants
//     I = contour integral of 1/R,  J = contour integral of V/R.

#include <vector>

#include "confsurf/dyachenko.hpp"
#include "confsurf/field.hpp"
#include "confsurf/util.hpp"

namespace confsurf {

// Newton iteration for R(lambda) = 0 with R = 1 + continuation of (R-1).
// Throws NoConvergence / LeftValidityRegion.
Complex find_zero(const DyachenkoState& s, Complex guess, int max_iter = 50,
                  double tol = 1e-10);

struct ZeroConstants {
    Complex a; // R'(lambda)
    Complex b; // V(lambda)
};
ZeroConstants zero_constants(const DyachenkoState& s, Complex lambda);

struct ZeroTrack {
    std::vector<double> times;
    std::vector<Complex> lambda;
    std::vector<Complex> a;
    std::vector<Complex> b;
    std::vector<Complex> U_at_zero;
};

struct TrackLawReport {
    // |d lambda/dt - (+-i) U(lambda)| by centered differences; both sign
    // candidates are measured and the better one recorded as fitted.
    double mismatch_plus_iU;
    double mismatch_minus_iU;
    int fitted_sign; // +1 if lambda_dot = +iU fits better, else -1
    double max_a_drift;
    Complex b_slope;      // measured linear slope of b(t)
    double b_fit_residual;
    Complex b0;
};

struct TrackResult {
    ZeroTrack track;
    TrackLawReport report;
};

// Follows one zero through the stored stride states of a trajectory.
TrackResult track_zeros(const std::vector<DyachenkoState>& states, Complex guess,
                        double g);

struct ContourSpec {
    Complex center;
    double radius = 0.5;
    int n_nodes = 256;
};

struct ContourIJ {
    Complex I;
    Complex J;
};

// Trapezoid quadrature on the circle; spectrally accurate for analytic
// integrands. Throws ContourThroughZero / LeftValidityRegion.
ContourIJ contour_IJ(const DyachenkoState& s, const ContourSpec& spec);

// Residue of 1/R at a simple zero lambda equals 1/R'(lambda).
Complex residue_inv_R(const DyachenkoState& s, Complex lambda);

} // namespace confsurf

#endif
