#include "confsurf/compressed_fluid.hpp"

#include <algorithm>
#include <cmath>

namespace confsurf {

CompressingFlowValue compressing_flow(const CompressingFlowParams& p, double x, double y, double t) {
    if (t == p.t0) throw SingularTime("collapse time");
    const double tau = t - p.t0;
    CompressingFlowValue v;
    v.Phi = 0.5 * (x * x - y * y) / tau;
    v.P = -(y * y) / (tau * tau);
    v.Phi_t = -0.5 * (x * x - y * y) / (tau * tau);
    v.Phi_x = x / tau;
    v.Phi_y = -y / tau;
    return v;
}

// ---------------------------------------------------------------------------

Complex LogRational::eval(Complex w) const {
    Complex v = rational.eval(w);
    for (const auto& lt : logs) v += lt.coeff * std::log(w - lt.pole);
    return v;
}

RationalFn LogRational::derivative() const {
    RationalFn d = rational.derivative();
    for (const auto& lt : logs) d += RationalFn::pole_term(lt.pole, 1, lt.coeff);
    return d;
}

LogRational LogRational::antiderivative(const RationalFn& f) {
    if (std::abs(f.constant()) > 1e-13 * std::max(1.0, f.sup_norm_estimate()))
        throw NotIntegrableToRational("antiderivative of a constant is linear");
    LogRational out;
    std::vector<RatTerm> terms;
    for (const auto& t : f.terms()) {
        if (t.order == 1) {
            out.logs.push_back({t.pole, t.coeff});
        } else {
            terms.push_back({t.pole, t.order - 1, -t.coeff / (double)(t.order - 1)});
        }
    }
    out.rational = RationalFn(std::move(terms), Complex(0.0, 0.0));
    return out;
}

PerturbationSolution make_exact(const RationalFn& alpha) {
    for (const auto& t : alpha.terms())
        if (!(t.pole.imag() > 0.0))
            throw std::invalid_argument("make_exact: alpha must have upper half-plane poles");
    if (std::abs(alpha.constant()) != 0.0)
        throw std::invalid_argument("make_exact: alpha must decay");
    PerturbationSolution sol;
    sol.alpha = alpha;
    sol.phi0 = LogRational::antiderivative(alpha.derivative().mul_w());
    return sol;
}

// ---------------------------------------------------------------------------

namespace {

struct AssembledFrame {
    const ImplicitFrame* f;
    std::vector<Complex> zt;   // samples of z_t (with growth)
    std::vector<double> psit;  // samples of Psi_t (with growth)
};

ImplicitResidual residual_one(const ImplicitFrame& fr, const std::vector<Complex>& zt,
                              const std::vector<double>& psit) {
    const Grid& g = fr.z_dev.grid();
    const ComplexField zdu = fr.z_dev_u ? *fr.z_dev_u : deriv(fr.z_dev);
    const auto& zdus = zdu.samples();
    const auto& pds = fr.phiu_dev.samples();

    std::vector<Complex> e2(g.n);
    double r1 = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
        const double u = g.u(i);
        const Complex zu = fr.z_lin + zdus[i];
        const Complex phiu = fr.phiu_lin * u + pds[i];
        const Complex e1 =
            zt[i] * std::conj(zu) - std::conj(zt[i]) * zu + phiu - std::conj(phiu);
        r1 = std::max(r1, std::abs(e1));
        const double psiu = phiu.real();
        e2[i] = psit[i] * zu - psiu * zt[i] + 0.5 * std::conj(phiu) * std::conj(phiu) / std::conj(zu);
    }
    ComplexField proj = project_minus(ComplexField::from_samples(g, std::move(e2)));
    return ImplicitResidual{r1, proj.max_abs_samples()};
}

} // namespace

ImplicitResidual residual_implicit(const std::vector<ImplicitFrame>& frames) {
    if (frames.empty()) throw std::invalid_argument("residual_implicit: no frames");
    const Grid& g = frames.front().z_dev.grid();

    const bool analytic = frames.front().zt_dev.has_value();
    ImplicitResidual worst{0.0, 0.0};

    if (analytic) {
        for (const auto& fr : frames) {
            if (!fr.zt_dev || !fr.zt_lin || !fr.psit)
                throw std::invalid_argument("residual_implicit: incomplete analytic frame");
            std::vector<Complex> zt(g.n);
            const auto& ztd = fr.zt_dev->samples();
            for (std::size_t i = 0; i < g.n; ++i) zt[i] = *fr.zt_lin * g.u(i) + ztd[i];
            const ImplicitResidual r = residual_one(fr, zt, *fr.psit);
            worst.res1 = std::max(worst.res1, r.res1);
            worst.res2 = std::max(worst.res2, r.res2);
        }
        return worst;
    }

    if (frames.size() < 5)
        throw std::invalid_argument("residual_implicit: need >= 5 frames for differencing");
    const double h = frames[1].t - frames[0].t;
    for (std::size_t j = 1; j < frames.size(); ++j)
        if (std::abs((frames[j].t - frames[j - 1].t) - h) > 1e-12 * std::max(1.0, std::abs(h)))
            throw std::invalid_argument("residual_implicit: frames must be uniformly spaced");
    for (const auto& fr : frames)
        if (!fr.psi) throw std::invalid_argument("residual_implicit: sampled frames need psi");

    for (std::size_t j = 2; j + 2 < frames.size(); ++j) {
        std::vector<Complex> zt(g.n);
        std::vector<double> psit(g.n);
        const Complex zlin_t =
            (-(frames[j + 2].z_lin) + 8.0 * frames[j + 1].z_lin - 8.0 * frames[j - 1].z_lin +
             frames[j - 2].z_lin) /
            (12.0 * h);
        for (std::size_t i = 0; i < g.n; ++i) {
            const Complex zd_t =
                (-(frames[j + 2].z_dev.samples()[i]) + 8.0 * frames[j + 1].z_dev.samples()[i] -
                 8.0 * frames[j - 1].z_dev.samples()[i] + frames[j - 2].z_dev.samples()[i]) /
                (12.0 * h);
            zt[i] = zlin_t * g.u(i) + zd_t;
            psit[i] = (-(*frames[j + 2].psi)[i] + 8.0 * (*frames[j + 1].psi)[i] -
                       8.0 * (*frames[j - 1].psi)[i] + (*frames[j - 2].psi)[i]) /
                      (12.0 * h);
        }
        const ImplicitResidual r = residual_one(frames[j], zt, psit);
        worst.res1 = std::max(worst.res1, r.res1);
        worst.res2 = std::max(worst.res2, r.res2);
    }
    return worst;
}

std::vector<ImplicitFrame> family_frames(const PerturbationSolution& sol,
                                           const std::vector<double>& times, const Grid& g,
                                           Phi0Reading reading) {
    const RationalFn alpha_u = sol.alpha.derivative();
    std::vector<ImplicitFrame> frames;
    for (double t : times) {
        ImplicitFrame fr;
        fr.t = t;
        fr.z_lin = t;
        fr.z_dev = ComplexField::sample(g, [&](double u) { return sol.alpha.eval(u); });
        fr.z_dev_u = ComplexField::sample(g, [&](double u) { return alpha_u.eval(u); });
        fr.phiu_lin = t;
        if (reading == Phi0Reading::derivative) {
            fr.phiu_dev = ComplexField::sample(g, [&](double u) { return u * alpha_u.eval(u); });
        } else {
            fr.phiu_dev = ComplexField::sample(g, [&](double u) { return u * sol.alpha.eval(u); });
        }
        fr.zt_lin = Complex(1.0, 0.0);
        fr.zt_dev = ComplexField(g);
        std::vector<double> psit(g.n);
        for (std::size_t i = 0; i < g.n; ++i) psit[i] = 0.5 * g.u(i) * g.u(i);
        fr.psit = std::move(psit);
        frames.push_back(std::move(fr));
    }
    return frames;
}

std::vector<ImplicitFrame> family_frames_sampled(const PerturbationSolution& sol,
                                                   const std::vector<double>& times,
                                                   const Grid& g) {
    const RationalFn alpha_u = sol.alpha.derivative();
    std::vector<ImplicitFrame> frames;
    for (double t : times) {
        ImplicitFrame fr;
        fr.t = t;
        fr.z_lin = t;
        fr.z_dev = ComplexField::sample(g, [&](double u) { return sol.alpha.eval(u); });
        fr.z_dev_u = ComplexField::sample(g, [&](double u) { return alpha_u.eval(u); });
        fr.phiu_lin = t;
        fr.phiu_dev = ComplexField::sample(g, [&](double u) { return u * alpha_u.eval(u); });
        std::vector<double> psi(g.n);
        for (std::size_t i = 0; i < g.n; ++i) {
            const double u = g.u(i);
            psi[i] = 0.5 * u * u * t + sol.phi0.eval(u).real();
        }
        fr.psi = std::move(psi);
        frames.push_back(std::move(fr));
    }
    return frames;
}

// ---------------------------------------------------------------------------

SurfaceShape pole_family_shape(const PoleFamilyParams& p, double t,
                               const std::vector<double>& u_samples) {
    SurfaceShape s;
    s.u = u_samples;
    s.x.resize(u_samples.size());
    s.y.resize(u_samples.size());
    for (std::size_t i = 0; i < u_samples.size(); ++i) {
        const double u = u_samples[i];
        const double den = u * u + p.a * p.a * t * t;
        s.x[i] = u + p.A * u * t / den;
        s.y[i] = -p.a * p.A * t * t / den;
    }
    return s;
}

double pole_family_xu(const PoleFamilyParams& p, double u, double t) {
    const double den = u * u + p.a * p.a * t * t;
    return 1.0 + p.A * t * (p.a * p.a * t * t - u * u) / (den * den);
}

BifurcationReport bifurcation_classify(const PoleFamilyParams& p, double t_min, double t_max,
                                       int nt) {
    BifurcationReport rep;
    if (p.A == 0.0) {
        rep.cls = SurfaceClass::one_valued;
        return rep;
    }
    if (p.a * p.a > p.A * p.A / 8.0) {
        rep.cls = SurfaceClass::one_valued;
    } else {
        rep.cls = p.A > 0.0 ? SurfaceClass::bubbles : SurfaceClass::droplets;
    }
    // Fold loci: S = u^2 + a^2 t^2 solves S^2 - A t S + 2 A a^2 t^3 = 0.
    for (int i = 0; i < nt; ++i) {
        const double t = t_min + (t_max - t_min) * (double)i / (double)(nt - 1);
        const double disc = p.A * p.A * t * t - 8.0 * p.A * p.a * p.a * t * t * t;
        if (disc < 0.0) continue;
        for (int branch : {+1, -1}) {
            const double S = 0.5 * (p.A * t + (double)branch * std::sqrt(disc));
            const double u2 = S - p.a * p.a * t * t;
            if (u2 < 0.0) continue;
            rep.critical_points.push_back({std::sqrt(u2), t, branch});
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------

SeriesStep series_next(const RationalFn& alpha, const RationalFn& z1) {
    const RationalFn alpha_u = alpha.derivative();
    const RationalFn alphabar_u = alpha.conj().derivative();
    const RationalFn q = z1.conj() * alpha_u - z1 * alphabar_u;
    SeriesStep s;
    s.phi1 = z1.mul_w();
    s.z2 = q.pminus();
    s.phi2 = s.z2.mul_w();
    const RationalFn minus_qm = Complex(-1.0, 0.0) * q.pminus();
    s.printed_form_origin_residual = std::abs(minus_qm.eval(Complex(0.0, 0.0)));
    return s;
}

SeriesStepDivided series_next_divided(const RationalFn& alpha, const RationalFn& z1) {
    const RationalFn q = z1.conj() * alpha.derivative() - z1 * alpha.conj().derivative();
    const RationalFn rhs = Complex(-1.0, 0.0) * q.pminus();
    const RatDivW d = rhs.div_w();
    SeriesStepDivided out;
    out.z2_regular = d.regular;
    out.origin_coeff = d.origin_coeff;
    out.flagged = std::abs(d.origin_coeff) >= 1e-10;
    return out;
}

std::vector<ImplicitFrame> series_frames(const RationalFn& alpha, const RationalFn& z1,
                                         const SeriesStep& step,
                                         const std::vector<double>& times, const Grid& g,
                                         bool include_second_order) {
    const RationalFn alpha_u = alpha.derivative();
    const RationalFn z1_u = z1.derivative();
    const RationalFn z2 = include_second_order ? step.z2 : RationalFn();
    const RationalFn z2_u = z2.derivative();
    const RationalFn phi1 = step.phi1;                      // u z1
    const RationalFn phi2 = include_second_order ? step.phi2 : RationalFn();
    const RationalFn phi1_u = z1 + z1_u.mul_w();            // (u z1)' = z1 + u z1'
    const RationalFn phi2_u = include_second_order ? (z2 + z2_u.mul_w()) : RationalFn();

    std::vector<ImplicitFrame> frames;
    for (double t : times) {
        const double it = 1.0 / t, it2 = it * it, it3 = it2 * it;
        ImplicitFrame fr;
        fr.t = t;
        fr.z_lin = t;
        fr.z_dev = ComplexField::sample(g, [&](double u) {
            return alpha.eval(u) + it * z1.eval(u) + it2 * z2.eval(u);
        });
        fr.z_dev_u = ComplexField::sample(g, [&](double u) {
            return alpha_u.eval(u) + it * z1_u.eval(u) + it2 * z2_u.eval(u);
        });
        fr.phiu_lin = t;
        fr.phiu_dev = ComplexField::sample(g, [&](double u) {
            return u * alpha_u.eval(u) + it * phi1_u.eval(u) + it2 * phi2_u.eval(u);
        });
        fr.zt_lin = Complex(1.0, 0.0);
        fr.zt_dev = ComplexField::sample(g, [&](double u) {
            return -it2 * z1.eval(u) - 2.0 * it3 * z2.eval(u);
        });
        std::vector<double> psit(g.n);
        for (std::size_t i = 0; i < g.n; ++i) {
            const double u = g.u(i);
            const Complex phit =
                -it2 * phi1.eval(u) - 2.0 * it3 * phi2.eval(u);
            psit[i] = 0.5 * u * u + phit.real();
        }
        fr.psit = std::move(psit);
        frames.push_back(std::move(fr));
    }
    return frames;
}

// ---------------------------------------------------------------------------

// Deviation of R in the unit-scale gauge, as an exact rational function.
// With alpha = c/(x - p)^m the gauge map gives
//   R - 1 = m c t^m / ((w - t p)^{m+1} - m c t^m),
// whose denominator roots are w_j = t p + rho omega_j with rho the principal
// (m+1)-th root of m c t^m and omega_j the unit roots; all residues are
// rho omega_j / (m+1).
RationalFn family_r_deviation(const PerturbationSolution& sol, double t) {
    if (sol.alpha.terms().size() != 1)
        throw std::invalid_argument(
            "family_to_state: exact conversion implemented for single-term alpha");
    const RatTerm& term = sol.alpha.terms()[0];
    const int m = term.order;
    const Complex c = term.coeff;
    const Complex rhs = (double)m * c * std::pow(t, (double)m);
    const Complex rho = std::pow(rhs, 1.0 / (double)(m + 1));
    RationalFn r;
    const double two_pi = 6.283185307179586477;
    for (int j = 0; j <= m; ++j) {
        const Complex omega = std::polar(1.0, two_pi * (double)j / (double)(m + 1));
        const Complex pole = t * term.pole + rho * omega;
        if (!(pole.imag() > 0.0))
            throw std::invalid_argument("family_to_state: deviation pole reached the axis");
        r += RationalFn::pole_term(pole, 1, rho * omega / (double)(m + 1));
    }
    return r;
}

DyachenkoState family_to_state(const PerturbationSolution& sol, double t, const Grid& g) {
    if (!(t > 0.0)) throw std::invalid_argument("family_to_state: t must be positive");
    DyachenkoState s;
    s.t = t;
    s.strain = 1.0 / t;
    s.r = sample_periodized(family_r_deviation(sol, t), g);
    s.v = ComplexField(g);
    return s;
}

} // namespace confsurf
