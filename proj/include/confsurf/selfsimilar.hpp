#ifndef CONFSURF_SELFSIMILAR_HPP
#define CONFSURF_SELFSIMILAR_HPP

// Scale-invariant substitution z = t^a z0(u), Phi = t^{2a-1} Phi0(u) and the
// residual check of candidate profiles. No profile boundary-value problem is
// solved here; the module verifies exponent bookkeeping and supplied profiles.

#include <optional>
#include <string>
#include <vector>

#include "confsurf/compressed_fluid.hpp"
#include "confsurf/field.hpp"
#include "confsurf/ratfn.hpp"

namespace confsurf {

struct SelfSimilarProfile {
    double alpha_exp = 1.0;
    Complex z0_lin{1.0, 0.0};   // z0 = z0_lin * u + z0_dev
    RationalFn z0_dev;
    Complex phi0_quad{1.0, 0.0}; // Phi0 = phi0_quad * u^2/2 + phi0_dev
    RationalFn phi0_dev;
};

// Flat compressing flow: z0 = u, Phi0 = u^2/2, exponent +1 in this
// substitution convention (surface-scaling labels differ; residuals decide).
SelfSimilarProfile compressed_fluid_anchor();

struct ProfileResidual {
    double res1; // a (z0 z0bar_u - z0bar z0_u) - (Phi0bar_u - Phi0_u), max norm
    double res2; // P^- of (2a-1) Psi0 z0_u - a Psi0_u z0 + Phi0bar_u^2/(2 z0bar_u)
};

ProfileResidual residual_profile(const SelfSimilarProfile& p, const Grid& g);

// Fields of the substituted solution at time t > 0, as an analytic frame for
// the implicit-equation residual checker.
ImplicitFrame substitute(const SelfSimilarProfile& p, double t, const Grid& g);

struct ExponentReport {
    double g = 0.0;
    std::optional<double> unique_alpha; // 2 when gravity is on, empty when free
    std::vector<std::pair<double, std::string>> labeled_cases;
    std::string note;
};

// Pure exponent arithmetic: with gravity the quadratic-in-time balance
// 2a - 2 = a pins a = 2; without gravity every exponent is admissible.
ExponentReport gravity_exponent_check(double g);

} // namespace confsurf

#endif
