#ifndef CONFSURF_COMPRESSED_FLUID_HPP
#define CONFSURF_COMPRESSED_FLUID_HPP

// Closed-form solutions around the uniformly compressing flow: the flat-surface
// straining solution, the exact one-function perturbation family
//     z(u,t) = u t + alpha(u),  Phi(u,t) = u^2 t / 2 + Phi0(u),  Phi0' = u alpha',
// the explicit single-pole surface family with its bubble/droplet bifurcation,
// and the inverse-time series extension.

#include <optional>
#include <vector>

#include "confsurf/dyachenko.hpp"
#include "confsurf/field.hpp"
#include "confsurf/ratfn.hpp"

namespace confsurf {

// --- flat-surface compressing solution -------------------------------------

struct CompressingFlowParams {
    double t0 = 0.0; // collapse time
};

struct CompressingFlowValue {
    double Phi;
    double P;
    double Phi_t;
    double Phi_x;
    double Phi_y;
};

// Phi = (x^2 - y^2) / (2 (t - t0)), P = -y^2/(t - t0)^2. Throws SingularTime.
CompressingFlowValue compressing_flow(const CompressingFlowParams& p, double x, double y, double t);

// --- exact perturbation family ---------------------------------------------

// Rational function plus explicit logarithm terms; antiderivatives of
// rational functions live here.
struct LogTerm {
    Complex pole;
    Complex coeff; // coeff * log(w - pole)
};

struct LogRational {
    RationalFn rational;
    std::vector<LogTerm> logs;

    Complex eval(Complex w) const;
    RationalFn derivative() const;
    static LogRational antiderivative(const RationalFn& f); // zero constant
};

struct PerturbationSolution {
    RationalFn alpha; // decaying, poles strictly in the upper half-plane
    LogRational phi0; // phi0' = u * alpha'
};

PerturbationSolution make_exact(const RationalFn& alpha);

// --- residual checker for the implicit equations ---------------------------
//
//   z_t zbar_u - zbar_t z_u = -Phi_u + Phibar_u
//   Psi_t z_u - Psi_u z_t + (1/2) Phibar_u^2 / zbar_u = 0   (P^- projected)
//
// Fields carry their linear/quadratic growth as explicit coefficients so all
// assembly is pointwise; only the final projection is spectral.

struct ImplicitFrame {
    double t = 0.0;
    Complex z_lin;                        // z = z_lin * u + z_dev
    ComplexField z_dev;
    std::optional<ComplexField> z_dev_u;  // analytic d/du of z_dev when available
    Complex phiu_lin;                     // Phi_u = phiu_lin * u + phiu_dev
    ComplexField phiu_dev;

    // analytic time derivatives (exact-solution mode)
    std::optional<Complex> zt_lin;
    std::optional<ComplexField> zt_dev;
    std::optional<std::vector<double>> psit; // Psi_t(u_i) including growth parts

    // sampled-potential mode (finite differences in t need Psi itself)
    std::optional<std::vector<double>> psi;  // Psi(u_i) including growth parts
};

struct ImplicitResidual {
    double res1;
    double res2;
};

// Analytic mode requires zt/psit on every frame; otherwise >= 5 uniformly
// spaced frames with psi are differenced (4th order centered).
ImplicitResidual residual_implicit(const std::vector<ImplicitFrame>& frames);

enum class Phi0Reading { derivative, literal }; // Phi0' = u a'  vs  Phi0' = u a

// Frames of the exact family at the given times (analytic derivatives).
std::vector<ImplicitFrame> family_frames(const PerturbationSolution& sol,
                                           const std::vector<double>& times, const Grid& g,
                                           Phi0Reading reading = Phi0Reading::derivative);

// Frames with only sampled Psi, for the finite-difference path.
std::vector<ImplicitFrame> family_frames_sampled(const PerturbationSolution& sol,
                                                   const std::vector<double>& times,
                                                   const Grid& g);

// --- single-pole surface family and bifurcation -----------------------------

struct PoleFamilyParams {
    double A = 1.0; // amplitude; sign selects bubbles (A>0) or droplets (A<0)
    double a = 1.0; // pole height, > 0
};

// x = u + A u t/(u^2 + a^2 t^2), y = -a A t^2/(u^2 + a^2 t^2).
SurfaceShape pole_family_shape(const PoleFamilyParams& p, double t,
                               const std::vector<double>& u_samples);

// d/du of the horizontal coordinate; the surface overturns where this
// vanishes on real (u, t).
double pole_family_xu(const PoleFamilyParams& p, double u, double t);

enum class SurfaceClass { one_valued, bubbles, droplets };

struct CriticalPoint {
    double u;
    double t;
    int branch; // +-1 for the two roots of the fold quadratic
};

struct BifurcationReport {
    SurfaceClass cls = SurfaceClass::one_valued;
    std::vector<CriticalPoint> critical_points; // fold loci inside the t window
};

// Classifier threshold: one-valued iff a^2 > A^2/8 (A = 0 trivially). Fold
// loci are reported from u^2 = (A t/2)(1 +- sqrt(1 - 8 a^2 t / A)) - a^2 t^2,
// the root condition of x_u = 0, scanned over the given t window.
BifurcationReport bifurcation_classify(const PoleFamilyParams& p, double t_min = 1.0,
                                       double t_max = 4.0, int nt = 65);

// --- inverse-time series ------------------------------------------------ --

struct SeriesStep {
    RationalFn phi1; // u z1
    RationalFn z2;   // P^-(z1bar alpha_u - z1 alphabar_u)
    RationalFn phi2; // u z2
    // Residue at the origin that the variant z2 = -P^-(...)/u would need to
    // vanish; reported as a diagnostic, never silently fixed.
    double printed_form_origin_residual;
};

SeriesStep series_next(const RationalFn& alpha, const RationalFn& z1);

// The variant with z2 = -P^-(z1bar alpha_u - z1 alphabar_u)/u, kept for the
// discriminating order-of-accuracy test. The origin pole is returned apart.
struct SeriesStepDivided {
    RationalFn z2_regular;
    Complex origin_coeff;
    bool flagged; // origin_coeff above tolerance
};
SeriesStepDivided series_next_divided(const RationalFn& alpha, const RationalFn& z1);

// Frames of the truncated series z = ut + alpha + z1/t + z2/t^2 with
// Phi_u and Psi_t assembled exactly; used for the 1/t^3 order fit.
std::vector<ImplicitFrame> series_frames(const RationalFn& alpha, const RationalFn& z1,
                                         const SeriesStep& step,
                                         const std::vector<double>& times, const Grid& g,
                                         bool include_second_order = true);

// --- conversion to solver variables ------------------------------------- --
//
// In the unit-scale gauge the family reads R = 1/(1 + alpha'(u/t)/t),
// V = i (1/t) u; the deviation fields decay and strain = 1/t.
DyachenkoState family_to_state(const PerturbationSolution& sol, double t, const Grid& g);

// Closed form of R - 1 in that gauge, exact partial fractions (single-term
// alpha only).
RationalFn family_r_deviation(const PerturbationSolution& sol, double t);

} // namespace confsurf

#endif
