#ifndef CONFSURF_DYACHENKO_HPP
#define CONFSURF_DYACHENKO_HPP

// Time integration of the surface equations in inverse-derivative variables
//     R = 1/z', V = i Phi_w R,
//     R_t = i(U R' - R U'),   V_t = i(U V' - R B') + g (R - 1),
//     U = P^-(R Vbar + Rbar V),  B = P^-(V Vbar).
// The state stores the deviation R - 1 so the R -> 1 asymptote is exact.
//
// An optional uniform-strain background kappa(t) extends the state class to
// V_full = i kappa u + V with kappa' = -kappa^2. That class contains the
// exactly compressing flow and its closed-form perturbations, which are not
// decaying in plain variables. With kappa = 0 the equations above are
// recovered verbatim. The strained form assumes deviations with o(1/u) tails.

#include <functional>
#include <optional>
#include <vector>

#include "confsurf/field.hpp"

namespace confsurf {

struct DyachenkoState {
    ComplexField r;      // R - 1, lower-analytic
    ComplexField v;      // V deviation, lower-analytic
    double t = 0.0;
    double strain = 0.0; // background kappa; 0 for the standard system
};

struct SimConfig {
    double g = 0.0;
    double dt = 1e-3;
    double t_end = 1.0;
    Grid grid;
    bool use_dealias = true;
    int output_stride = 10;
    double cfl_safety = 0.5;
    double blowup_limit = 1e6;
    double analyticity_tol = 1e-8;
};

struct AuxFields {
    ComplexField U;
    ComplexField B; // deviation part when strain != 0 (the u^2 piece is analytic)
};

// U = P^-(R Vbar + Rbar V), B = P^-(V Vbar) for the plain system; the strained
// system adds the derived -i*kappa*u*field corrections.
AuxFields compute_aux(const DyachenkoState& s, bool do_dealias = false);

struct Rhs {
    ComplexField dr;
    ComplexField dv;
    double dstrain = 0.0;
    double upper_leak = 0.0; // pre-projection k>0 content of the rhs, relative
};
Rhs rhs(const DyachenkoState& s, const SimConfig& cfg);

// Classical fixed-step RK4. Throws StepRejected / Blowup / AnalyticityLoss.
DyachenkoState step_rk4(const DyachenkoState& s, const SimConfig& cfg);

double cfl_cap(const DyachenkoState& s, const SimConfig& cfg);

struct SurfaceShape {
    std::vector<double> u, x, y;
    Complex secular_mean{0.0, 0.0};
    bool secular_warned = false;
};
SurfaceShape reconstruct_surface(const DyachenkoState& s);

// Box-regularized conserved line integrals: Ibar = int (1/R - 1) du and
// J = int V/R du. For the plain system dIbar/dt = 0 and dJ/dt = -g*Ibar.
struct ConservedLine {
    Complex Ibar;
    Complex J;
};
ConservedLine conserved_line(const DyachenkoState& s);

struct TrajectoryRecord {
    double t;
    Complex Ibar;
    Complex J;
    double min_abs_R;
    double max_abs_V;
};

struct Trajectory {
    std::vector<TrajectoryRecord> records;      // every accepted step
    std::vector<DyachenkoState> stride_states;  // every output_stride steps, incl. first/last
};

Trajectory run_simulation(DyachenkoState s, const SimConfig& cfg,
                          const std::function<void(const DyachenkoState&)>& on_stride = {});

double min_abs_R(const DyachenkoState& s);

} // namespace confsurf

#endif
