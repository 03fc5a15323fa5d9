#include <doctest.h>

#include <cmath>

#include "confsurf/compressed_fluid.hpp"
#include "confsurf/dyachenko.hpp"
#include "confsurf/ratfn.hpp"
#include "confsurf/util.hpp"
#include "trig_oracle.hpp"

using namespace confsurf;

namespace {
const Complex I(0.0, 1.0);

Grid run_grid(std::size_t n = 1024) {
    Grid g;
    g.n = n;
    return g; // default 64*2pi box
}

// Seeded-zero state: R = (w - lam)/(w - mu), i.e. R - 1 = (mu - lam)/(w - mu).
DyachenkoState seeded_zero_state(const Grid& g, Complex lam, Complex mu) {
    DyachenkoState s;
    s.r = sample_periodized(RationalFn::pole_term(mu, 1, mu - lam), g);
    s.v = ComplexField(g);
    return s;
}

SimConfig base_cfg(const Grid& g) {
    SimConfig cfg;
    cfg.grid = g;
    return cfg;
}

} // namespace

TEST_CASE("compute_aux: quiescent fluid gives U = B = 0") {
    Grid g = run_grid(256);
    DyachenkoState s;
    s.r = sample_periodized(RationalFn::pole_term(2.0 * I, 2, Complex(0.3, 0.1)), g);
    s.v = ComplexField(g);
    const AuxFields aux = compute_aux(s);
    CHECK(aux.U.max_abs_samples() < 1e-14);
    CHECK(aux.B.max_abs_samples() < 1e-14);
}

TEST_CASE("compute_aux: R = 1 reduces U to the projected real part of 2V") {
    Grid g = run_grid(2048);
    const RationalFn v = RationalFn::pole_term(Complex(0.0, 3.0), 1, Complex(0.4, -0.2));
    DyachenkoState s;
    s.r = ComplexField(g);
    s.v = sample_periodized(v, g);
    const AuxFields aux = compute_aux(s);

    const RationalFn vvbar = v + v.conj();
    double err = 0.0;
    for (std::size_t i = g.n / 8; i < g.n - g.n / 8; ++i) {
        const double u = g.u(i);
        err = std::max(err, std::abs(aux.U.samples()[i] - vvbar.pminus_periodized(u, g.L)));
    }
    CHECK(err < 1e-9);
}

TEST_CASE("compute_aux: full quadratic case against the exact periodic oracle") {
    Grid g = run_grid(2048);
    const RationalFn r = RationalFn::pole_term(Complex(1.0, 4.0), 1, Complex(0.2, 0.1));
    const RationalFn v = RationalFn::pole_term(Complex(-0.5, 3.5), 1, Complex(-0.1, 0.3));
    DyachenkoState s;
    s.r = sample_periodized(r, g);
    s.v = sample_periodized(v, g);
    const AuxFields aux = compute_aux(s);

    // The grid multiplies the periodized fields pointwise, so the oracle
    // multiplies in the periodic kernel algebra: U = P^-(v + vbar + r vbar +
    // rbar v), B = P^-(v vbar), all built from the sampled objects.
    using trig_oracle::TrigRational;
    const TrigRational rp = TrigRational::from_ratfn(r, g.L);
    const TrigRational vp = TrigRational::from_ratfn(v, g.L);
    const TrigRational w = vp + vp.conj() + rp * vp.conj() + rp.conj() * vp;
    const TrigRational vv = vp * vp.conj();
    double errU = 0.0, errB = 0.0;
    for (std::size_t i = 0; i < g.n; i += 7) {
        const double u = g.u(i);
        errU = std::max(errU, std::abs(aux.U.samples()[i] - w.pminus_eval(u)));
        errB = std::max(errB, std::abs(aux.B.samples()[i] - vv.pminus_eval(u)));
    }
    CHECK(errU < 1e-9);
    CHECK(errB < 1e-9);
}

TEST_CASE("rhs: rest state is a fixed point, with and without gravity") {
    Grid g = run_grid(256);
    DyachenkoState s;
    s.r = ComplexField(g);
    s.v = ComplexField(g);
    for (double grav : {0.0, 1.0}) {
        SimConfig cfg = base_cfg(g);
        cfg.g = grav;
        const Rhs k = rhs(s, cfg);
        CHECK(k.dr.max_abs_samples() < 1e-14);
        CHECK(k.dv.max_abs_samples() < 1e-14);
    }
}

TEST_CASE("rhs: seeded zero with V = 0 and g = 0 is stationary") {
    Grid g = run_grid(1024);
    DyachenkoState s = seeded_zero_state(g, Complex(1.0, 1.5), Complex(0.0, 4.0));
    SimConfig cfg = base_cfg(g);
    const Rhs k = rhs(s, cfg);
    CHECK(k.dr.max_abs_samples() < 1e-13);
    CHECK(k.dv.max_abs_samples() < 1e-13);
}

TEST_CASE("rest state is preserved over many steps") {
    Grid g = run_grid(256);
    DyachenkoState s;
    s.r = ComplexField(g);
    s.v = ComplexField(g);
    SimConfig cfg = base_cfg(g);
    cfg.g = 1.0;
    cfg.dt = 1e-2;
    for (int i = 0; i < 100; ++i) s = step_rk4(s, cfg);
    CHECK(s.r.max_abs_samples() < 1e-14);
    CHECK(s.v.max_abs_samples() < 1e-14);
    CHECK(s.t == doctest::Approx(1.0));
}

TEST_CASE("step_rk4 rejects a dt above the advective cap") {
    Grid g = run_grid(256);
    DyachenkoState s = seeded_zero_state(g, Complex(1.0, 1.5), Complex(0.0, 4.0));
    SimConfig cfg = base_cfg(g);
    cfg.dt = 10.0;
    CHECK_THROWS_AS((void)step_rk4(s, cfg), StepRejected);
}

TEST_CASE("fourth-order self-convergence on a gravity run") {
    Grid g = run_grid(1024);
    SimConfig cfg = base_cfg(g);
    cfg.g = 1.0;
    auto evolve = [&](double dt, double T) {
        DyachenkoState s = seeded_zero_state(g, Complex(1.0, 1.5), Complex(0.0, 4.0));
        SimConfig c = cfg;
        c.dt = dt;
        const long n = std::lround(T / dt);
        for (long i = 0; i < n; ++i) s = step_rk4(s, c);
        return s;
    };
    // Long enough that the stepping error sits far above round-off.
    const double T = 0.48;
    const DyachenkoState ref = evolve(1.5e-3, T);
    std::vector<double> dts = {2.4e-2, 1.2e-2, 6e-3};
    std::vector<double> errs;
    for (double dt : dts) {
        const DyachenkoState s = evolve(dt, T);
        errs.push_back(std::max(max_abs_diff(s.r, ref.r), max_abs_diff(s.v, ref.v)));
    }
    // error ~ dt^4: successive ratios 16 within a factor 2
    for (std::size_t i = 1; i < errs.size(); ++i) {
        const double ratio = errs[i - 1] / errs[i];
        CHECK(ratio > 8.0);
        CHECK(ratio < 32.0);
    }
}

TEST_CASE("time reversal returns the state") {
    Grid g = run_grid(1024);
    DyachenkoState s0 = seeded_zero_state(g, Complex(1.0, 1.5), Complex(0.0, 4.0));
    SimConfig cfg = base_cfg(g);
    cfg.g = 1.0;
    cfg.dt = 1e-3;
    DyachenkoState s = s0;
    for (int i = 0; i < 10; ++i) s = step_rk4(s, cfg);
    cfg.dt = -1e-3;
    for (int i = 0; i < 10; ++i) s = step_rk4(s, cfg);
    CHECK(max_abs_diff(s.r, s0.r) < 1e-10);
    CHECK(max_abs_diff(s.v, s0.v) < 1e-10);
}

TEST_CASE("analyticity of the state is preserved over a run") {
    Grid g = run_grid(1024);
    DyachenkoState s = seeded_zero_state(g, Complex(1.0, 1.5), Complex(0.0, 4.0));
    SimConfig cfg = base_cfg(g);
    cfg.g = 1.0;
    cfg.dt = 1e-3;
    for (int i = 0; i < 200; ++i) s = step_rk4(s, cfg);
    CHECK(s.r.upper_content() < 1e-10);
    CHECK(s.v.upper_content() < 1e-10);
    CHECK(min_abs_R(s) > 0.1);
}

TEST_CASE("conserved_line: rest state gives (0, 0)") {
    Grid g = run_grid(256);
    DyachenkoState s;
    s.r = ComplexField(g);
    s.v = ComplexField(g);
    const ConservedLine c = conserved_line(s);
    CHECK(std::abs(c.Ibar) < 1e-14);
    CHECK(std::abs(c.J) < 1e-14);
}

TEST_CASE("conserved_line: box quadrature equals the residue value of the line integral") {
    // Construct the state from the 1/R side so 1/R - 1 is exactly the
    // periodization of (lam - mu)/(w - lam); the box mean then reproduces the
    // line integral i pi (lam - mu) identically.
    Grid g = run_grid(2048);
    const Complex lam(1.0, 2.0), mu(0.0, 3.0);
    const RationalFn q = RationalFn::pole_term(lam, 1, lam - mu); // 1/R - 1
    ComplexField qp = sample_periodized(q, g);
    DyachenkoState s;
    s.r = apply(qp, [](Complex qi) { return 1.0 / (1.0 + qi) - 1.0; });
    s.v = ComplexField(g);
    const ConservedLine c = conserved_line(s);
    CHECK(std::abs(c.Ibar - q.line_integral()) < 1e-10);
}

TEST_CASE("Ibar is conserved and J is linear with slope -g*Ibar") {
    Grid g = run_grid(2048);
    DyachenkoState s = seeded_zero_state(g, Complex(1.0, 1.5), Complex(0.0, 4.0));
    SimConfig cfg = base_cfg(g);
    cfg.g = 1.0;
    cfg.dt = 1e-3;
    cfg.t_end = 0.5;
    cfg.output_stride = 25;
    const Trajectory traj = run_simulation(s, cfg);

    const Complex I0 = traj.records.front().Ibar;
    std::vector<double> ts;
    std::vector<Complex> Js;
    double drift = 0.0;
    for (const auto& rec : traj.records) {
        drift = std::max(drift, std::abs(rec.Ibar - I0) / (std::abs(I0) + 1.0));
        ts.push_back(rec.t);
        Js.push_back(rec.J);
    }
    CHECK(drift < 1e-9);

    const LineFit fit = fit_line(ts, Js);
    CHECK(fit.residual_max < 1e-8);
    // The divergence form of the momentum density integrates to
    // dJ/dt = g * integral(1 - 1/R) du = -g * Ibar on the box.
    CHECK(std::abs(fit.slope - (-cfg.g * I0)) < 1e-7);
}

TEST_CASE("reconstruct_surface: flat state and round trip") {
    Grid g = run_grid(2048);
    DyachenkoState s;
    s.r = ComplexField(g);
    s.v = ComplexField(g);
    const SurfaceShape flat = reconstruct_surface(s);
    for (std::size_t i = 0; i < g.n; ++i) {
        CHECK(flat.x[i] == doctest::Approx(g.u(i)).epsilon(1e-14));
        CHECK(std::abs(flat.y[i]) < 1e-14);
    }

    // Round trip: rebuild R from the reconstructed map derivative.
    DyachenkoState s2;
    s2.r = sample_periodized(RationalFn::pole_term(Complex(0.0, 3.0), 2, Complex(0.4, 0.2)), g);
    s2.v = ComplexField(g);
    const SurfaceShape shape = reconstruct_surface(s2);
    CHECK_FALSE(shape.secular_warned);
    std::vector<Complex> z(g.n);
    for (std::size_t i = 0; i < g.n; ++i)
        z[i] = Complex(shape.x[i], shape.y[i]) - g.u(i); // decaying deviation
    ComplexField zdev = ComplexField::from_samples(g, std::move(z));
    ComplexField zu = add_const(deriv(zdev), 1.0);
    ComplexField r_back = apply(zu, [](Complex d) { return 1.0 / d - 1.0; });
    CHECK(max_abs_diff(r_back, s2.r) < 1e-10);
}

TEST_CASE("reconstruct_surface flags a box mass defect") {
    // A simple-pole deviation leaves 1/R - 1 with a nonzero box mean.
    Grid g = run_grid(1024);
    DyachenkoState s;
    s.r = sample_periodized(RationalFn::pole_term(Complex(0.0, 3.0), 1, Complex(0.5, 0.0)), g);
    s.v = ComplexField(g);
    const SurfaceShape shape = reconstruct_surface(s);
    CHECK(shape.secular_warned);
    CHECK(std::abs(shape.secular_mean) > 1e-4);
}

TEST_CASE("reconstruct_surface reproduces the exact family shape") {
    Grid g;
    g.n = 4096;
    g.L = 128.0 * 6.283185307179586477;
    const PerturbationSolution sol =
        make_exact(RationalFn::pole_term(Complex(0.0, 2.0), 1, Complex(0.3, 0.0)));
    const double t = 1.0;
    const DyachenkoState s = family_to_state(sol, t, g);
    const SurfaceShape shape = reconstruct_surface(s);
    // Unit-scale gauge: z = w + alpha(w/t). On the box the comparison target
    // is the periodized alpha with the zero-mean vertical gauge of the
    // spectral antiderivative.
    const Complex gauge = sol.alpha.periodized_mean(g.L / t);
    double err = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
        const double u = g.u(i);
        const Complex z_exact = u + sol.alpha.eval_periodized(u / t, g.L / t) - gauge;
        err = std::max(err, std::abs(Complex(shape.x[i], shape.y[i]) - z_exact));
    }
    CHECK(err < 1e-6);
}

TEST_CASE("solver tracks the exact family through the strain background") {
    Grid g;
    g.n = 4096;
    g.L = 128.0 * 6.283185307179586477;
    const PerturbationSolution sol =
        make_exact(RationalFn::pole_term(Complex(0.0, 2.0), 1, Complex(0.3, 0.0)));
    DyachenkoState s = family_to_state(sol, 1.0, g);
    SimConfig cfg;
    cfg.grid = g;
    cfg.dt = 1e-3; // inside the kappa-space transport CFL of the strain terms
    for (int i = 0; i < 200; ++i) s = step_rk4(s, cfg);
    const double t = 1.0 + 200 * cfg.dt;
    CHECK(s.strain == doctest::Approx(1.0 / t).epsilon(1e-10));
    const DyachenkoState ref = family_to_state(sol, t, g);
    CHECK(max_abs_diff(s.r, ref.r) < 1e-7);
    CHECK(s.v.max_abs_samples() < 1e-7);
}
