#include "confsurf/narrow_cut.hpp"
#include "confsurf/ratfn.hpp"
#include "confsurf/util.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace confsurf {

namespace {

// Branch of sqrt(D) anchored to +s at large |chi|.
Complex sqrtD(Complex s, Complex tau, double A) {
    const Complex D = s * s - 4.0 * A * tau;
    Complex r = std::sqrt(D);
    const Complex ratio = r / s;
    if (std::abs(ratio.real()) < 1e-12 * std::abs(ratio))
        throw BranchAmbiguity("sqrt argument on the branch cut");
    if (ratio.real() < 0.0) r = -r;
    return r;
}

} // namespace

Complex hopf_V(Complex chi, Complex tau, const NarrowCutParams& p) {
    const Complex s = p.lambda + Complex(0.0, 1.0) * chi;
    if (p.A == 0.0) return Complex(0.0, 0.0);
    return 2.0 * p.A / (s + sqrtD(s, tau, p.A));
}

Complex hopf_z(Complex chi, Complex tau, const NarrowCutParams& p) {
    return chi + Complex(0.0, 1.0) * tau * hopf_V(chi, tau, p);
}

Complex hopf_R(Complex chi, Complex tau, const NarrowCutParams& p) {
    const Complex s = p.lambda + Complex(0.0, 1.0) * chi;
    if (p.A == 0.0) return Complex(1.0, 0.0);
    const Complex r = sqrtD(s, tau, p.A);
    return 2.0 * r / (s + r);
}

double hopf_breakdown_tau(const NarrowCutParams& p) {
    if (p.A <= 0.0) return 1e300;
    return p.lambda * p.lambda / (4.0 * p.A);
}

HopfResidual hopf_residual(const NarrowCutParams& p, const Grid& g, double tau_lo,
                           double tau_hi, int n_tau) {
    if (n_tau < 5) throw std::invalid_argument("hopf_residual: need >= 5 tau samples");
    const double dtau = (tau_hi - tau_lo) / (double)(n_tau - 1);
    const Complex I(0.0, 1.0);

    // Sampled V and z - chi at every tau level.
    std::vector<std::vector<Complex>> V(n_tau), Zdev(n_tau);
    for (int m = 0; m < n_tau; ++m) {
        const double tau = tau_lo + dtau * m;
        V[m].resize(g.n);
        Zdev[m].resize(g.n);
        for (std::size_t i = 0; i < g.n; ++i) {
            const Complex v = hopf_V(g.u(i), tau, p);
            V[m][i] = v;
            Zdev[m][i] = I * tau * v;
        }
    }

    HopfResidual worst{0.0, 0.0};
    for (int m = 1; m + 1 < n_tau; ++m) {
        const double tau = tau_lo + dtau * m;
        // V' with the slowly decaying A/s tail peeled off and differentiated
        // in closed form; the remainder decays ~ 1/chi^3 and is safe to
        // differentiate spectrally.
        ComplexField vdev = ComplexField::sample(g, [&](double u) {
            const Complex s = p.lambda + I * u;
            return hopf_V(u, tau, p) - p.A / s;
        });
        ComplexField vdev_u = deriv(vdev);
        const auto& dv = vdev_u.samples();

        double rz = 0.0, rv = 0.0;
        for (std::size_t i = 0; i < g.n; ++i) {
            const double u = g.u(i);
            const Complex s = p.lambda + I * u;
            const Complex vp = dv[i] - I * p.A / (s * s);
            const Complex zp = 1.0 + I * tau * vp;
            const Complex v_tau = (V[m + 1][i] - V[m - 1][i]) / (2.0 * dtau);
            const Complex z_tau = (Zdev[m + 1][i] - Zdev[m - 1][i]) / (2.0 * dtau);
            rv = std::max(rv, std::abs(v_tau - I * V[m][i] * vp));
            rz = std::max(rz, std::abs(z_tau - I * V[m][i] * zp));
        }
        worst.res_V = std::max(worst.res_V, rv);
        worst.res_z = std::max(worst.res_z, rz);
    }
    return worst;
}

// ---------------------------------------------------------------------------

ApproxAux approx_aux(const DyachenkoState& s, Complex V_c, Complex R_c) {
    // U ~ V_c R + V R_c - V_c = V_c r + R_c v with R = 1 + r; B ~ V_c V.
    ApproxAux out;
    out.U = add(scale(V_c, s.r), scale(R_c, s.v));
    out.B = scale(V_c, s.v);
    const AuxFields exact = compute_aux(s, false);
    out.dev_U = max_abs_diff(out.U, exact.U);
    out.dev_B = max_abs_diff(out.B, exact.B);
    return out;
}

// ---------------------------------------------------------------------------

Complex FrameMap::tau_at(double time) const {
    auto it = std::upper_bound(t.begin(), t.end(), time);
    std::size_t hi = (std::size_t)std::distance(t.begin(), it);
    if (hi == 0) hi = 1;
    if (hi == t.size()) hi = t.size() - 1;
    const std::size_t lo = hi - 1;
    const double w = (time - t[lo]) / (t[hi] - t[lo]);
    return tau[lo] + w * (tau[hi] - tau[lo]);
}

Complex FrameMap::shift_at(double time) const {
    auto it = std::upper_bound(t.begin(), t.end(), time);
    std::size_t hi = (std::size_t)std::distance(t.begin(), it);
    if (hi == 0) hi = 1;
    if (hi == t.size()) hi = t.size() - 1;
    const std::size_t lo = hi - 1;
    const double w = (time - t[lo]) / (t[hi] - t[lo]);
    return shift[lo] + w * (shift[hi] - shift[lo]);
}

double FrameMap::t_of_tau(double tau_re) const {
    std::vector<double> re(tau.size());
    for (std::size_t i = 0; i < re.size(); ++i) re[i] = tau[i].real();
    return MonotoneMap(re, t)(tau_re);
}

FrameMap frame_build(const std::vector<double>& t, const std::vector<Complex>& R_c,
                     const std::vector<Complex>& V_c) {
    if (t.size() < 2 || R_c.size() != t.size() || V_c.size() != t.size())
        throw std::invalid_argument("frame_build: inconsistent sampling");
    for (const auto& rc : R_c)
        if (!(rc.real() > 0.0))
            throw NonMonotone("Re R_c must stay positive for an invertible time map");
    FrameMap fm;
    fm.t = t;
    fm.tau.assign(t.size(), Complex(0.0, 0.0));
    fm.shift.assign(t.size(), Complex(0.0, 0.0));
    const Complex I(0.0, 1.0);
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double h = t[i] - t[i - 1];
        fm.tau[i] = fm.tau[i - 1] + 0.5 * h * (R_c[i] + R_c[i - 1]);
        fm.shift[i] = fm.shift[i - 1] + 0.5 * h * I * (V_c[i] + V_c[i - 1]);
    }
    return fm;
}

// ---------------------------------------------------------------------------

double singularity_height(const ComplexField& f, double band_hi, double band_lo) {
    const auto& c = f.spectrum();
    const double maxc = f.max_abs_spectrum();
    if (maxc == 0.0) throw std::invalid_argument("singularity_height: zero field");
    std::vector<double> kappa, logc;
    for (std::size_t j = 0; j < c.size(); ++j) {
        const int k = f.k_of(j);
        if (k >= 0) continue;
        const double a = std::abs(c[j]);
        if (a < band_lo * maxc || a > band_hi * maxc) continue;
        kappa.push_back(-(double)k * 6.283185307179586477 / f.grid().L);
        logc.push_back(std::log(a));
    }
    if (kappa.size() < 8)
        throw NoConvergence("singularity_height: too few modes in the fit band");
    std::vector<Complex> y(logc.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = Complex(logc[i], 0.0);
    return -fit_line(kappa, y).slope.real();
}

CutProbe probe_cut(const DyachenkoState& s) {
    CutProbe probe;
    probe.height = singularity_height(s.v);
    const Complex w(0.0, -probe.height);
    const Complex v_at = eval_offaxis(s.v, w);
    const Complex r_at = eval_offaxis(s.r, w);
    probe.V_c = std::conj(v_at);
    probe.R_c = std::conj(1.0 + r_at);
    return probe;
}

// ---------------------------------------------------------------------------

CompareReport compare_full(double lambda, const std::vector<double>& widths, double t_end,
                           SimConfig cfg) {
    CompareReport rep;
    rep.lambda = lambda;
    rep.t_end = t_end;
    rep.rows.resize(widths.size());

    cfg.t_end = t_end;

    auto run_one = [&](std::size_t wi) {
        const double width = widths[wi];
        const double A = width * lambda * lambda;
        NarrowCutParams p{lambda, A};

        DyachenkoState s;
        s.r = ComplexField(cfg.grid);
        // A/(lambda + i u) = -iA/(u - i lambda), pole at i lambda.
        s.v = sample_periodized(
            RationalFn::pole_term(Complex(0.0, lambda), 1, Complex(0.0, -A)), cfg.grid);
        s.t = 0.0;

        std::vector<double> ts;
        std::vector<Complex> Rcs, Vcs;
        std::vector<DyachenkoState> snaps;
        double sens = 0.0;
        Trajectory traj = run_simulation(s, cfg, [&](const DyachenkoState& st) {
            const CutProbe probe = probe_cut(st);
            ts.push_back(st.t);
            Rcs.push_back(probe.R_c);
            Vcs.push_back(probe.V_c);
            snaps.push_back(st);
            const Complex vc_deeper =
                std::conj(eval_offaxis(st.v, Complex(0.0, -1.1 * probe.height)));
            if (std::abs(probe.V_c) > 0.0)
                sens = std::max(sens, std::abs(vc_deeper - probe.V_c) / std::abs(probe.V_c));
        });

        const FrameMap fm = frame_build(ts, Rcs, Vcs);
        double err = 0.0, scale_v = 0.0;
        for (std::size_t si = 1; si < snaps.size(); ++si) {
            const DyachenkoState& st = snaps[si];
            const Complex tau = fm.tau[si];
            const Complex shift = fm.shift[si];
            const auto& vs = st.v.samples();
            for (std::size_t i = 0; i < cfg.grid.n; ++i) {
                const Complex chi = Complex(cfg.grid.u(i), 0.0) - shift;
                if (std::abs(chi) > 4.0 * lambda) continue;
                const Complex vh = hopf_V(chi, tau, p);
                err = std::max(err, std::abs(vs[i] - vh));
                scale_v = std::max(scale_v, std::abs(vh));
            }
        }
        rep.rows[wi] = WidthComparison{width, A, scale_v > 0.0 ? err / scale_v : err, sens};
    };

#ifdef _OPENMP
    if (kernels::thread_count() > 1) {
#pragma omp parallel for num_threads(kernels::thread_count()) schedule(dynamic)
        for (long long wi = 0; wi < (long long)widths.size(); ++wi) run_one((std::size_t)wi);
    } else {
        for (std::size_t wi = 0; wi < widths.size(); ++wi) run_one(wi);
    }
#else
    for (std::size_t wi = 0; wi < widths.size(); ++wi) run_one(wi);
#endif
    return rep;
}

} // namespace confsurf
