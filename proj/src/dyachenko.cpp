#include "confsurf/dyachenko.hpp"

#include <algorithm>
#include <cmath>

namespace confsurf {

namespace {

// Zero k > 0 exactly (and the dealias band when requested). Quadratic products
// of k <= 0 fields only alias into k > 0 through the truncated tail, so this
// both enforces analyticity and removes aliasing.
ComplexField enforce_lower(const ComplexField& f, bool do_dealias, double scale,
                           double* leak) {
    const auto& c = f.spectrum();
    const std::size_t n = c.size();
    const int kcut = (int)(n / 3);
    double up = 0.0;
    std::vector<Complex> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const int k = (j < n / 2) ? (int)j : (int)j - (int)n;
        const double a = std::abs(c[j]);
        if (k > 0) {
            up = std::max(up, a);
            out[j] = 0.0;
        } else if (do_dealias && -k > kcut) {
            out[j] = 0.0;
        } else {
            out[j] = c[j];
        }
    }
    if (leak) *leak = scale > 0.0 ? up / scale : 0.0;
    return ComplexField::from_spectrum(f.grid(), std::move(out));
}

} // namespace

AuxFields compute_aux(const DyachenkoState& s, bool do_dealias) {
    const ComplexField& r = s.r;
    const ComplexField& v = s.v;
    const ComplexField rb = conj_field(r);
    const ComplexField vb = conj_field(v);

    // R Vbar + Rbar V with R = 1 + r reduces to v + vbar + r vbar + rbar v.
    ComplexField w = add(add(v, vb), add(multiply(r, vb), multiply(rb, v)));
    if (do_dealias) w = dealias(w);
    ComplexField U = project_minus(w);

    ComplexField vvb = multiply(v, vb);
    if (do_dealias) vvb = dealias(vvb);
    ComplexField B = project_minus(vvb);

    if (s.strain != 0.0) {
        const Complex mik(0.0, -s.strain);
        // Strained corrections: U += -i*kappa*(w r), B += -i*kappa*(w v),
        // with the coordinate product taken on the periodized line functions
        // (deviation part; the analytic kappa^2 u^2 / 2 piece of B is handled
        // in the rhs).
        U = add(U, scale(mik, mul_coordinate(r)));
        B = add(B, scale(mik, mul_coordinate(v)));
    }
    return AuxFields{std::move(U), std::move(B)};
}

Rhs rhs(const DyachenkoState& s, const SimConfig& cfg) {
    if (s.strain != 0.0 && cfg.g != 0.0)
        throw std::invalid_argument("strain background requires g = 0");

    const ComplexField& r = s.r;
    const ComplexField& v = s.v;
    const double kap = s.strain;
    const Complex I(0.0, 1.0);

    AuxFields aux = compute_aux(s, cfg.use_dealias);
    const ComplexField& U = aux.U;
    const ComplexField& B = aux.B;

    const ComplexField rp = deriv(r);
    const ComplexField vp = deriv(v);
    const ComplexField Up = deriv(U);
    const ComplexField Bp = deriv(B);

    // R_t = i(U R' - R U') with R = 1 + r.
    ComplexField R = add_const(r, 1.0);
    ComplexField dr = scale(I, sub(multiply(U, rp), multiply(R, Up)));

    // V_t = i(U V' - R B') + g r  (plain), with the strain extension
    // V_t = -kappa U + i U V' - i kappa^2 (w r) - i R B'.
    ComplexField dv = scale(I, sub(multiply(U, vp), multiply(R, Bp)));
    if (cfg.g != 0.0) dv = add(dv, scale(cfg.g, r));
    if (kap != 0.0) {
        dv = add(dv, scale(-kap, U));
        dv = add(dv, scale(Complex(0.0, -kap * kap), mul_coordinate(r)));
    }

    Rhs out;
    // Spurious k>0 content is judged against the state's own spectral scale:
    // a near-cancelling rhs must not trip the alarm.
    const double scale =
        std::max({r.max_abs_spectrum(), v.max_abs_spectrum(), dr.max_abs_spectrum(),
                  dv.max_abs_spectrum(), 1e-300});
    double leak_r = 0.0, leak_v = 0.0;
    out.dr = enforce_lower(dr, cfg.use_dealias, scale, &leak_r);
    out.dv = enforce_lower(dv, cfg.use_dealias, scale, &leak_v);
    out.upper_leak = std::max(leak_r, leak_v);
    if (out.upper_leak > cfg.analyticity_tol)
        throw AnalyticityLoss("rhs k>0 content " + std::to_string(out.upper_leak));
    if (kap == 0.0) {
        // The mean of R_t vanishes identically for exactly lower-analytic
        // fields; pin it so the R -> 1 asymptote cannot drift.
        auto spec = out.dr.spectrum();
        spec[0] = 0.0;
        out.dr = ComplexField::from_spectrum(out.dr.grid(), std::move(spec));
    }
    out.dstrain = -kap * kap;
    return out;
}

double cfl_cap(const DyachenkoState& s, const SimConfig& cfg) {
    AuxFields aux = compute_aux(s, cfg.use_dealias);
    const double m = aux.U.max_abs_samples() + s.v.max_abs_samples() + 1.0;
    double cap = cfg.cfl_safety * s.r.grid().du() / m;
    if (s.strain != 0.0) {
        // The dilation advects the spectrum in kappa; the centered stencils
        // behind mul_coordinate bound dt by the kappa-space transport speed
        // |strain| * kappa_cut over the mode spacing 2 pi / L.
        const Grid& g = s.r.grid();
        const double dkappa = 6.283185307179586477 / g.L;
        const double kcut =
            dkappa * (double)(cfg.use_dealias ? g.n / 3 : g.n / 2);
        cap = std::min(cap, 1.8 * dkappa / (std::abs(s.strain) * kcut));
    }
    return cap;
}

namespace {

DyachenkoState axpy(const DyachenkoState& s, double a, const Rhs& k) {
    DyachenkoState out;
    out.r = add(s.r, scale(a, k.dr));
    out.v = add(s.v, scale(a, k.dv));
    out.t = s.t + a;
    out.strain = s.strain + a * k.dstrain;
    return out;
}

void validate(const DyachenkoState& s, const SimConfig& cfg) {
    const double maxr = s.r.max_abs_samples();
    const double maxv = s.v.max_abs_samples();
    if (!(maxr < cfg.blowup_limit) || !(maxv < cfg.blowup_limit))
        throw Blowup("field magnitude exceeded blowup limit");
    if (!(min_abs_R(s) > 0.0))
        throw StepRejected("R developed a zero on the grid");
}

} // namespace

double min_abs_R(const DyachenkoState& s) {
    const auto& rs = s.r.samples();
    double m = 1e300;
    for (const auto& ri : rs) m = std::min(m, std::abs(1.0 + ri));
    return m;
}

DyachenkoState step_rk4(const DyachenkoState& s, const SimConfig& cfg) {
    if (cfg.dt > cfl_cap(s, cfg))
        throw StepRejected("dt exceeds the CFL cap");
    const double h = cfg.dt;

    const Rhs k1 = rhs(s, cfg);
    const Rhs k2 = rhs(axpy(s, 0.5 * h, k1), cfg);
    const Rhs k3 = rhs(axpy(s, 0.5 * h, k2), cfg);
    const Rhs k4 = rhs(axpy(s, h, k3), cfg);

    DyachenkoState out;
    auto comb = [&](const ComplexField& y, const ComplexField& a, const ComplexField& b,
                    const ComplexField& c, const ComplexField& d) {
        ComplexField acc = add(a, scale(2.0, add(b, c)));
        acc = add(acc, d);
        return add(y, scale(h / 6.0, acc));
    };
    out.r = comb(s.r, k1.dr, k2.dr, k3.dr, k4.dr);
    out.v = comb(s.v, k1.dv, k2.dv, k3.dv, k4.dv);
    out.strain =
        s.strain + h / 6.0 * (k1.dstrain + 2.0 * k2.dstrain + 2.0 * k3.dstrain + k4.dstrain);
    out.t = s.t + h;
    validate(out, cfg);
    return out;
}

SurfaceShape reconstruct_surface(const DyachenkoState& s) {
    const ComplexField R = add_const(s.r, 1.0);
    ComplexField dev = apply(R, [](Complex Ri) { return 1.0 / Ri - 1.0; });
    SurfaceShape shape;
    shape.secular_mean = dev.mean();
    shape.secular_warned = std::abs(shape.secular_mean) > 1e-8;
    ComplexField zdev = antideriv(add_const(dev, -shape.secular_mean));
    const Grid& g = s.r.grid();
    shape.u.resize(g.n);
    shape.x.resize(g.n);
    shape.y.resize(g.n);
    const auto& zs = zdev.samples();
    for (std::size_t i = 0; i < g.n; ++i) {
        const double u = g.u(i);
        const Complex z = (1.0 + shape.secular_mean) * u + zs[i];
        shape.u[i] = u;
        shape.x[i] = z.real();
        shape.y[i] = z.imag();
    }
    return shape;
}

ConservedLine conserved_line(const DyachenkoState& s) {
    const Grid& g = s.r.grid();
    const auto& rs = s.r.samples();
    const auto& vs = s.v.samples();
    std::vector<Complex> f1(g.n), f2(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        const Complex R = 1.0 + rs[i];
        f1[i] = 1.0 / R - 1.0;
        f2[i] = vs[i] / R;
    }
    // Trapezoid on a periodic grid: L times the sample mean.
    ConservedLine c;
    c.Ibar = kernels::blocked_sum(f1) * (g.L / (double)g.n);
    c.J = kernels::blocked_sum(f2) * (g.L / (double)g.n);
    return c;
}

Trajectory run_simulation(DyachenkoState s, const SimConfig& cfg,
                          const std::function<void(const DyachenkoState&)>& on_stride) {
    Trajectory traj;
    auto record = [&](const DyachenkoState& st) {
        const ConservedLine c = conserved_line(st);
        traj.records.push_back(
            {st.t, c.Ibar, c.J, min_abs_R(st), st.v.max_abs_samples()});
    };
    auto stride_dump = [&](const DyachenkoState& st) {
        traj.stride_states.push_back(st);
        if (on_stride) on_stride(st);
    };
    record(s);
    stride_dump(s);
    const long nsteps = std::lround((cfg.t_end - s.t) / cfg.dt);
    for (long i = 0; i < nsteps; ++i) {
        s = step_rk4(s, cfg);
        record(s);
        if ((i + 1) % std::max(1, cfg.output_stride) == 0 || i + 1 == nsteps) stride_dump(s);
    }
    return traj;
}

} // namespace confsurf
