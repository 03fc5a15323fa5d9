#include "confsurf/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "confsurf/compressed_fluid.hpp"
#include "confsurf/invariants.hpp"
#include "confsurf/narrow_cut.hpp"
#include "confsurf/selfsimilar.hpp"

namespace confsurf {
namespace scenario {

namespace fs = std::filesystem;
using io::json;

const std::vector<std::string>& kinds() {
    static const std::vector<std::string> k = {
        "simulate",         "exact_family",     "narrow_cut", "bifurcation_sweep",
        "invariant_audit",  "selfsimilar_check", "oracle_test"};
    return k;
}

namespace {

Grid grid_from_json(const json& j) {
    Grid g;
    if (j.contains("n")) g.n = j.at("n").get<std::size_t>();
    if (j.contains("L")) g.L = j.at("L").get<double>();
    if (j.contains("L_over_2pi")) g.L = j.at("L_over_2pi").get<double>() * 6.283185307179586477;
    if (g.n < 16 || (g.n & (g.n - 1)) != 0) throw ConfigError("grid n must be a power of two >= 16");
    if (!(g.L > 0.0)) throw ConfigError("grid L must be positive");
    return g;
}

ComplexField field_from_json(const json& j, const Grid& g, const fs::path& cfg_dir) {
    if (j.is_object() && j.contains("csv"))
        return io::read_field_csv(cfg_dir / j.at("csv").get<std::string>(), g);
    return sample_periodized(io::ratfn_from_json(j), g);
}

json check(const std::string& name, double value, double tol) {
    return json{{"name", name}, {"value", value}, {"tolerance", tol}, {"pass", value <= tol}};
}

json check_flag(const std::string& name, bool ok) {
    return json{{"name", name}, {"pass", ok}};
}

struct ScenarioCtx {
    std::string name;
    std::string kind;
    json params;
    fs::path dir;
    fs::path cfg_dir;
    std::vector<fs::path> files;

    void emit(const fs::path& rel, const std::string& text) {
        fs::create_directories(dir);
        io::write_text(dir / rel, text);
        files.push_back(dir / rel);
    }
    void emit_json(const fs::path& rel, const json& j) { emit(rel, j.dump(2) + "\n"); }
};

// --- simulate ---------------------------------------------------------------

SimConfig sim_config(const json& p) {
    SimConfig cfg;
    cfg.grid = grid_from_json(p.value("grid", json::object()));
    cfg.g = p.value("g", 0.0);
    cfg.dt = p.value("dt", 1e-3);
    cfg.t_end = p.value("t_end", 0.1);
    cfg.use_dealias = p.value("dealias", true);
    cfg.output_stride = p.value("output_stride", 10);
    if (!(cfg.dt > 0.0)) throw ConfigError("dt must be positive");
    return cfg;
}

void validate_simulate(const json& p) {
    sim_config(p);
    if (!p.contains("initial")) throw ConfigError("simulate: missing initial data");
    const json& init = p.at("initial");
    if (!init.contains("R_minus_1") || !init.contains("V"))
        throw ConfigError("simulate: initial data needs R_minus_1 and V");
}

DyachenkoState initial_state(const json& p, const SimConfig& cfg, const fs::path& cfg_dir) {
    DyachenkoState s;
    const json& init = p.at("initial");
    s.r = field_from_json(init.at("R_minus_1"), cfg.grid, cfg_dir);
    s.v = field_from_json(init.at("V"), cfg.grid, cfg_dir);
    s.t = p.value("t0", 0.0);
    s.strain = p.value("strain", 0.0);
    return s;
}

void run_simulate(ScenarioCtx& ctx) {
    const SimConfig cfg = sim_config(ctx.params);
    DyachenkoState s = initial_state(ctx.params, cfg, ctx.cfg_dir);
    const bool dump_fields = ctx.params.value("dump_fields", false);

    std::vector<DyachenkoState> strides;
    Trajectory traj = run_simulation(s, cfg, [&](const DyachenkoState& st) {
        strides.push_back(st);
    });
    ctx.emit("trajectory.jsonl", io::trajectory_jsonl(traj));
    if (dump_fields) {
        for (std::size_t i = 0; i < strides.size(); ++i) {
            char tag[32];
            std::snprintf(tag, sizeof tag, "%04zu", i);
            io::write_field_csv(ctx.dir / (std::string("R_") + tag + ".csv"),
                                add_const(strides[i].r, 1.0));
            io::write_field_csv(ctx.dir / (std::string("V_") + tag + ".csv"), strides[i].v);
            io::write_spectrum_csv(ctx.dir / (std::string("Vspec_") + tag + ".csv"),
                                   strides[i].v);
            ctx.files.push_back(ctx.dir / (std::string("R_") + tag + ".csv"));
            ctx.files.push_back(ctx.dir / (std::string("V_") + tag + ".csv"));
            ctx.files.push_back(ctx.dir / (std::string("Vspec_") + tag + ".csv"));
        }
    }
    const SurfaceShape shape = reconstruct_surface(strides.back());
    io::write_surface_csv(ctx.dir / "surface_final.csv", shape, strides.back().t);
    ctx.files.push_back(ctx.dir / "surface_final.csv");

    const auto& first = traj.records.front();
    const auto& last = traj.records.back();
    json rep;
    rep["checks"] = json::array({
        check("Ibar_drift", std::abs(last.Ibar - first.Ibar) / (std::abs(first.Ibar) + 1.0),
              ctx.params.value("Ibar_tolerance", 1e-9)),
    });
    rep["final"] = {{"t", last.t},
                    {"Ibar", io::complex_to_json(last.Ibar)},
                    {"J", io::complex_to_json(last.J)},
                    {"min_abs_R", last.min_abs_R}};
    ctx.emit_json("report.json", rep);
}

// --- exact_family ------------------------------------------------------------

void validate_exact_family(const json& p) {
    grid_from_json(p.value("grid", json::object()));
    if (!p.contains("alpha")) throw ConfigError("exact_family: missing alpha");
    io::ratfn_from_json(p.at("alpha"));
}

void run_exact_family(ScenarioCtx& ctx) {
    const Grid g = grid_from_json(ctx.params.value("grid", json::object()));
    const RationalFn alpha = io::ratfn_from_json(ctx.params.at("alpha"));
    std::vector<double> times = ctx.params.value("times", std::vector<double>{1.0, 1.5, 2.0});
    const double tol = ctx.params.value("tolerance", 1e-9);

    const PerturbationSolution sol = make_exact(alpha);
    const ImplicitResidual res = residual_implicit(family_frames(sol, times, g));

    for (double t : times) {
        SurfaceShape shape;
        shape.u.resize(g.n);
        shape.x.resize(g.n);
        shape.y.resize(g.n);
        for (std::size_t i = 0; i < g.n; ++i) {
            const double u = g.u(i);
            const Complex z = u * t + alpha.eval(u);
            shape.u[i] = u;
            shape.x[i] = z.real();
            shape.y[i] = z.imag();
        }
        char name[48];
        std::snprintf(name, sizeof name, "surface_t%g.csv", t);
        io::write_surface_csv(ctx.dir / name, shape, t);
        ctx.files.push_back(ctx.dir / name);
    }

    json rep;
    rep["checks"] = json::array({check("residual_kinematic", res.res1, tol),
                                 check("residual_dynamic", res.res2, tol)});
    ctx.emit_json("report.json", rep);
}

// --- narrow_cut ---------------------------------------------------------------

void validate_narrow_cut(const json& p) {
    grid_from_json(p.value("grid", json::object()));
    if (p.value("lambda", 2.0) <= 0.0) throw ConfigError("narrow_cut: lambda must be positive");
    if (p.contains("compare")) {
        const json& c = p.at("compare");
        grid_from_json(c.value("grid", json::object()));
        if (!c.contains("widths")) throw ConfigError("narrow_cut.compare: missing widths");
    }
}

void run_narrow_cut(ScenarioCtx& ctx) {
    const Grid g = grid_from_json(ctx.params.value("grid", json::object()));
    NarrowCutParams p;
    p.lambda = ctx.params.value("lambda", 2.0);
    p.A = ctx.params.value("A", 0.05);
    const double tol = ctx.params.value("tolerance", 1e-7);

    // Stay well clear of the branch-point collision by default.
    const double tau_hi =
        ctx.params.value("tau_end", std::min(1.0, 0.25 * hopf_breakdown_tau(p)));
    const int n_tau = ctx.params.value("n_tau", 65);
    const HopfResidual hr = hopf_residual(p, g, 0.0, tau_hi, n_tau);

    ComplexField vmid = ComplexField::sample(
        g, [&](double u) { return hopf_V(u, 0.5 * tau_hi, p); });
    io::write_field_csv(ctx.dir / "hopf_V_mid.csv", vmid);
    ctx.files.push_back(ctx.dir / "hopf_V_mid.csv");

    json rep;
    rep["checks"] = json::array(
        {check("hopf_residual_z", hr.res_z, tol), check("hopf_residual_V", hr.res_V, tol)});

    if (ctx.params.contains("compare")) {
        const json& c = ctx.params.at("compare");
        SimConfig cfg;
        cfg.grid = grid_from_json(c.value("grid", json::object()));
        cfg.dt = c.value("dt", 2e-3);
        cfg.output_stride = c.value("output_stride", 25);
        const std::vector<double> widths = c.at("widths").get<std::vector<double>>();
        const CompareReport rep_cmp =
            compare_full(p.lambda, widths, c.value("t_end", 0.5), cfg);
        std::ostringstream ss;
        ss << "width,max_rel_err_V,t_window,probe_sensitivity\n";
        bool monotone = true;
        for (std::size_t i = 0; i < rep_cmp.rows.size(); ++i) {
            const auto& row = rep_cmp.rows[i];
            ss << io::fmt(row.width) << ',' << io::fmt(row.max_rel_err_V) << ','
               << io::fmt(rep_cmp.t_end) << ',' << io::fmt(row.probe_sensitivity) << '\n';
            if (i > 0 && rep_cmp.rows[i - 1].width > row.width &&
                !(row.max_rel_err_V < rep_cmp.rows[i - 1].max_rel_err_V))
                monotone = false;
        }
        ctx.emit("convergence.csv", ss.str());
        rep["checks"].push_back(check_flag("error_monotone_in_width", monotone));
    }
    ctx.emit_json("report.json", rep);
}

// --- bifurcation_sweep ---------------------------------------------------------

void validate_bifurcation(const json& p) {
    if (!p.contains("a_values") && !p.contains("a_range"))
        throw ConfigError("bifurcation_sweep: missing a_values or a_range");
}

void run_bifurcation(ScenarioCtx& ctx) {
    const double A = ctx.params.value("A", 1.0);
    std::vector<double> avals;
    if (ctx.params.contains("a_values")) {
        avals = ctx.params.at("a_values").get<std::vector<double>>();
    } else {
        const json& r = ctx.params.at("a_range");
        const double lo = r.at("min").get<double>(), hi = r.at("max").get<double>();
        const int n = r.at("count").get<int>();
        for (int i = 0; i < n; ++i)
            avals.push_back(lo + (hi - lo) * (double)i / (double)(n - 1));
    }
    const double t_min = ctx.params.value("t_min", 1.0);
    const double t_max = ctx.params.value("t_max", 4.0);

    std::ostringstream ss;
    ss << "A,a,class\n";
    json reports = json::array();
    for (double a : avals) {
        const BifurcationReport rep = bifurcation_classify({A, a}, t_min, t_max);
        const char* cls = rep.cls == SurfaceClass::one_valued ? "one_valued"
                          : rep.cls == SurfaceClass::bubbles  ? "bubbles"
                                                              : "droplets";
        ss << io::fmt(A) << ',' << io::fmt(a) << ',' << cls << '\n';
        json cps = json::array();
        for (const auto& cp : rep.critical_points)
            cps.push_back({{"u", cp.u}, {"t", cp.t}, {"branch", cp.branch}});
        reports.push_back({{"A", A}, {"a", a}, {"class", cls}, {"critical_points", cps}});
    }
    ctx.emit("classification.csv", ss.str());
    json rep;
    rep["threshold_a_over_A"] = std::sqrt(0.125);
    rep["sweeps"] = reports;
    rep["checks"] = json::array();
    ctx.emit_json("report.json", rep);
}

// --- invariant_audit -------------------------------------------------------------

void validate_invariant_audit(const json& p) {
    validate_simulate(p);
    if (!p.contains("guess")) throw ConfigError("invariant_audit: missing zero guess");
}

void run_invariant_audit(ScenarioCtx& ctx) {
    const SimConfig cfg = sim_config(ctx.params);
    DyachenkoState s = initial_state(ctx.params, cfg, ctx.cfg_dir);
    const Complex guess = io::complex_from_json(ctx.params.at("guess"));
    const json tols = ctx.params.value("tolerances", json::object());

    std::vector<DyachenkoState> strides;
    run_simulation(s, cfg, [&](const DyachenkoState& st) { strides.push_back(st); });

    const TrackResult tres = track_zeros(strides, guess, cfg.g);
    const ZeroTrack& tr = tres.track;

    std::ostringstream ss;
    ss << "t,re_lambda,im_lambda,re_a,im_a,re_b,im_b,mismatch_minus_iU,mismatch_plus_iU\n";
    const Complex I(0.0, 1.0);
    for (std::size_t j = 0; j < tr.times.size(); ++j) {
        double mm = 0.0, mp = 0.0;
        if (j > 0 && j + 1 < tr.times.size()) {
            const double h = tr.times[j + 1] - tr.times[j - 1];
            const Complex ld = (tr.lambda[j + 1] - tr.lambda[j - 1]) / h;
            mm = std::abs(ld + I * tr.U_at_zero[j]);
            mp = std::abs(ld - I * tr.U_at_zero[j]);
        }
        ss << io::fmt(tr.times[j]) << ',' << io::fmt(tr.lambda[j].real()) << ','
           << io::fmt(tr.lambda[j].imag()) << ',' << io::fmt(tr.a[j].real()) << ','
           << io::fmt(tr.a[j].imag()) << ',' << io::fmt(tr.b[j].real()) << ','
           << io::fmt(tr.b[j].imag()) << ',' << io::fmt(mm) << ',' << io::fmt(mp) << '\n';
    }
    ctx.emit("track.csv", ss.str());

    json rep;
    rep["law"] = {{"fitted_sign_of_iU", tres.report.fitted_sign},
                  {"mismatch_plus_iU", tres.report.mismatch_plus_iU},
                  {"mismatch_minus_iU", tres.report.mismatch_minus_iU},
                  {"b_slope", io::complex_to_json(tres.report.b_slope)},
                  {"b_fit_residual", tres.report.b_fit_residual},
                  {"max_a_drift", tres.report.max_a_drift}};
    rep["checks"] = json::array({
        check("a_drift", tres.report.max_a_drift, tols.value("a_drift", 1e-6)),
        check("b_linearity", tres.report.b_fit_residual, tols.value("b_residual", 1e-5)),
        check("lambda_dot_law",
              std::min(tres.report.mismatch_plus_iU, tres.report.mismatch_minus_iU),
              tols.value("lambda_dot", 1e-5)),
    });

    if (ctx.params.contains("contour")) {
        const json& cj = ctx.params.at("contour");
        ContourSpec spec;
        spec.center = io::complex_from_json(cj.at("center"));
        spec.radius = cj.value("radius", 0.5);
        spec.n_nodes = cj.value("n_nodes", 256);
        std::vector<double> ts;
        std::vector<Complex> Is, Js;
        for (const auto& st : strides) {
            const ContourIJ ij = contour_IJ(st, spec);
            ts.push_back(st.t);
            Is.push_back(ij.I);
            Js.push_back(ij.J);
        }
        double devI = 0.0;
        for (const auto& Iv : Is) devI = std::max(devI, std::abs(Iv - Is.front()));
        const LineFit jfit = fit_line(ts, Js);
        rep["contour"] = {{"I0", io::complex_to_json(Is.front())},
                          {"J0", io::complex_to_json(Js.front())},
                          {"max_dev_I", devI},
                          {"J_slope", io::complex_to_json(jfit.slope)},
                          {"J_fit_residual", jfit.residual_max}};
        rep["checks"].push_back(check("contour_I_constant", devI, tols.value("I_dev", 1e-7)));
        if (cfg.g == 0.0) {
            double devJ = 0.0;
            for (const auto& Jv : Js) devJ = std::max(devJ, std::abs(Jv - Js.front()));
            rep["checks"].push_back(check("contour_J_constant", devJ, tols.value("J_dev", 1e-7)));
        } else {
            // dJ/dt = -g I on a contour enclosing the zero set.
            const double slope_err = std::abs(jfit.slope - (-cfg.g * Is.front()));
            rep["checks"].push_back(
                check("contour_J_slope_minus_gI", slope_err, tols.value("J_slope", 1e-6)));
        }
    }
    ctx.emit_json("report.json", rep);
}

// --- selfsimilar_check ---------------------------------------------------------

void validate_selfsimilar(const json& p) {
    if (!p.value("anchor", false) && !p.contains("profile"))
        throw ConfigError("selfsimilar_check: need anchor=true or a profile");
}

SelfSimilarProfile profile_from_json(const json& p) {
    if (p.value("anchor", false)) return compressed_fluid_anchor();
    const json& pj = p.at("profile");
    SelfSimilarProfile prof;
    prof.alpha_exp = pj.value("alpha_exp", 1.0);
    prof.z0_lin = pj.contains("z0_lin") ? io::complex_from_json(pj.at("z0_lin")) : Complex(1.0, 0.0);
    if (pj.contains("z0_dev")) prof.z0_dev = io::ratfn_from_json(pj.at("z0_dev"));
    prof.phi0_quad =
        pj.contains("phi0_quad") ? io::complex_from_json(pj.at("phi0_quad")) : Complex(1.0, 0.0);
    if (pj.contains("phi0_dev")) prof.phi0_dev = io::ratfn_from_json(pj.at("phi0_dev"));
    return prof;
}

void run_selfsimilar(ScenarioCtx& ctx) {
    const Grid g = grid_from_json(ctx.params.value("grid", json::object()));
    SelfSimilarProfile prof = profile_from_json(ctx.params);
    const double eps = ctx.params.value("perturb", 0.0);
    if (eps != 0.0)
        prof.z0_dev += RationalFn::pole_term(Complex(0.0, 2.0), 1, Complex(eps, 0.0));
    const double tol = ctx.params.value("tolerance", 1e-9);
    const ProfileResidual res = residual_profile(prof, g);
    json rep;
    rep["alpha_exp"] = prof.alpha_exp;
    rep["res1"] = res.res1;
    rep["res2"] = res.res2;
    rep["grid"] = {{"n", g.n}, {"L", g.L}};
    const ExponentReport er = gravity_exponent_check(ctx.params.value("g", 0.0));
    json cases = json::array();
    for (const auto& [alpha, label] : er.labeled_cases)
        cases.push_back({{"alpha", alpha}, {"label", label}});
    rep["exponents"] = {{"g", er.g},
                        {"unique_alpha", er.unique_alpha ? json(*er.unique_alpha) : json()},
                        {"note", er.note},
                        {"labeled_cases", cases}};
    rep["checks"] = json::array(
        {check("profile_residual_1", res.res1, tol), check("profile_residual_2", res.res2, tol)});
    ctx.emit_json("report.json", rep);
}

} // namespace

// --- oracle_test -----------------------------------------------------------------

namespace {

std::vector<RationalFn> oracle_battery_impl() {
    std::vector<RationalFn> fns;
    const Complex I(0.0, 1.0);
    // Mix of heights >= 0.5, both half-planes, orders 1 and 2, constants.
    fns.push_back(RationalFn::pole_term(3.0 * I, 1, Complex(1.0, 0.0)));
    fns.push_back(RationalFn::pole_term(3.0 * I, 1, Complex(1.0, 0.0)) +
                  RationalFn::pole_term(-3.0 * I, 1, Complex(1.0, 0.0)));
    fns.push_back(RationalFn::pole_term(Complex(1.0, 2.0), 1, Complex(0.5, 0.5)) +
                  RationalFn::pole_term(Complex(-1.0, -2.5), 1, Complex(0.0, 1.0)));
    fns.push_back(RationalFn::pole_term(Complex(0.0, 2.0), 2, Complex(1.0, 0.0)));
    fns.push_back(RationalFn::pole_term(Complex(2.0, 4.0), 2, Complex(0.0, -2.0)) +
                  RationalFn::pole_term(Complex(-2.0, 3.0), 1, Complex(1.0, 1.0)));
    fns.push_back(RationalFn::pole_term(Complex(0.0, 0.5), 1, Complex(0.2, 0.0)));
    fns.push_back(RationalFn::pole_term(Complex(0.0, -0.75), 1, Complex(0.0, 0.3)));
    fns.push_back(RationalFn::pole_term(Complex(5.0, 1.0), 1, Complex(1.0, 0.0)) +
                  RationalFn::pole_term(Complex(-5.0, 1.0), 1, Complex(-1.0, 0.0)) +
                  RationalFn(Complex(2.0, 0.0)));
    fns.push_back(RationalFn::pole_term(Complex(0.5, 1.5), 2, Complex(1.0, -1.0)) +
                  RationalFn::pole_term(Complex(0.5, -1.5), 2, Complex(1.0, 1.0)));
    fns.push_back(RationalFn::pole_term(Complex(-1.0, 6.0), 1, Complex(3.0, 0.0)) +
                  RationalFn::pole_term(Complex(1.0, 0.6), 1, Complex(0.1, 0.2)) +
                  RationalFn::pole_term(Complex(0.0, -2.0), 2, Complex(0.0, 1.0)));
    return fns;
}

} // namespace

std::vector<RationalFn> oracle_battery() { return oracle_battery_impl(); }

std::vector<OracleRow> oracle_comparison(const Grid& g) {
    std::vector<OracleRow> rows;
    const auto battery = oracle_battery_impl();
    // Interior window: periodized closed forms are exact, so only spectral
    // truncation enters; stay clear of the box edge anyway.
    const std::size_t lo = g.n / 8, hi = g.n - g.n / 8;
    int id = 0;
    for (const auto& f : battery) {
        ComplexField fd = sample_periodized(f, g);
        ComplexField pm = project_minus(fd);
        ComplexField hb = hilbert(fd);
        ComplexField dv = deriv(fd);
        OracleRow row{"fn" + std::to_string(id++), 0.0, 0.0, 0.0};
        const auto& pms = pm.samples();
        const auto& hbs = hb.samples();
        const auto& dvs = dv.samples();
        for (std::size_t i = lo; i < hi; ++i) {
            const double u = g.u(i);
            row.err_pminus =
                std::max(row.err_pminus, std::abs(pms[i] - f.pminus_periodized(u, g.L)));
            row.err_hilbert =
                std::max(row.err_hilbert, std::abs(hbs[i] - f.hilbert_periodized(u, g.L)));
            row.err_deriv =
                std::max(row.err_deriv, std::abs(dvs[i] - f.deriv_periodized(u, g.L)));
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

void run_oracle_test(ScenarioCtx& ctx) {
    const Grid g = grid_from_json(ctx.params.value("grid", json::object()));
    const double tol = ctx.params.value("tolerance", 1e-8);
    const auto rows = oracle_comparison(g);
    std::ostringstream ss;
    ss << "fn,err_pminus,err_hilbert,err_deriv\n";
    double worst = 0.0;
    for (const auto& r : rows) {
        ss << r.fn << ',' << io::fmt(r.err_pminus) << ',' << io::fmt(r.err_hilbert) << ','
           << io::fmt(r.err_deriv) << '\n';
        worst = std::max({worst, r.err_pminus, r.err_hilbert, r.err_deriv});
    }
    ctx.emit("oracle_table.csv", ss.str());
    json rep;
    rep["checks"] = json::array({check("oracle_max_err", worst, tol)});
    ctx.emit_json("report.json", rep);
}

// ---------------------------------------------------------------------------

void validate(const std::string& kind, const json& params) {
    if (kind == "simulate") validate_simulate(params);
    else if (kind == "exact_family") validate_exact_family(params);
    else if (kind == "narrow_cut") validate_narrow_cut(params);
    else if (kind == "bifurcation_sweep") validate_bifurcation(params);
    else if (kind == "invariant_audit") validate_invariant_audit(params);
    else if (kind == "selfsimilar_check") validate_selfsimilar(params);
    else if (kind == "oracle_test") { grid_from_json(params.value("grid", json::object())); }
    else throw ConfigError("unknown scenario kind: " + kind);
}

void dispatch(ScenarioCtx& ctx) {
    fs::create_directories(ctx.dir);
    if (ctx.kind == "simulate") run_simulate(ctx);
    else if (ctx.kind == "exact_family") run_exact_family(ctx);
    else if (ctx.kind == "narrow_cut") run_narrow_cut(ctx);
    else if (ctx.kind == "bifurcation_sweep") run_bifurcation(ctx);
    else if (ctx.kind == "invariant_audit") run_invariant_audit(ctx);
    else if (ctx.kind == "selfsimilar_check") run_selfsimilar(ctx);
    else if (ctx.kind == "oracle_test") run_oracle_test(ctx);
}

} // namespace

void run_batch(const json& config, const fs::path& base_dir) {
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    const json scenarios = config.value("scenarios", json::array());
    if (!scenarios.is_array()) throw ConfigError("scenarios must be an array");

    // Validate everything before any numerical work starts.
    std::vector<ScenarioCtx> ctxs;
    std::vector<std::string> seen;
    for (const auto& sj : scenarios) {
        ScenarioCtx ctx;
        ctx.name = sj.value("name", "");
        if (ctx.name.empty()) throw ConfigError("scenario without a name");
        if (std::find(seen.begin(), seen.end(), ctx.name) != seen.end())
            throw ConfigError("duplicate scenario name: " + ctx.name);
        seen.push_back(ctx.name);
        ctx.kind = sj.value("kind", "");
        ctx.params = sj.value("params", json::object());
        ctx.dir = base_dir / sj.value("output_dir", ctx.name);
        ctx.cfg_dir = base_dir;
        validate(ctx.kind, ctx.params);
        ctxs.push_back(std::move(ctx));
    }

    fs::create_directories(base_dir);
    json manifest;
    manifest["config_sha256"] = io::sha256_hex(config.dump());
    manifest["generated_at"] = (long long)std::chrono::duration_cast<std::chrono::seconds>(
                                   std::chrono::system_clock::now().time_since_epoch())
                                   .count();
    manifest["scenarios"] = json::array();

    std::string first_error;
    for (auto& ctx : ctxs) {
        json entry{{"name", ctx.name}, {"kind", ctx.kind}};
        try {
            dispatch(ctx);
            entry["status"] = "ok";
        } catch (const NumericalError& e) {
            entry["status"] = "failed";
            entry["error"] = e.what();
            if (first_error.empty()) first_error = e.what();
        }
        json files = json::array();
        for (const auto& f : ctx.files) {
            files.push_back({{"path", fs::relative(f, base_dir).string()},
                             {"sha256", io::sha256_file(f)},
                             {"bytes", (long long)fs::file_size(f)}});
        }
        entry["files"] = files;
        manifest["scenarios"].push_back(entry);
    }
    io::write_text(base_dir / "manifest.json", manifest.dump(2) + "\n");
    if (!first_error.empty()) throw NumericalError("ScenarioFailed", first_error);
}

std::string report_text(const fs::path& manifest_path) {
    const json manifest = json::parse(io::read_text(manifest_path));
    const fs::path base = manifest_path.parent_path();
    std::ostringstream out;
    int failures = 0;
    out << "scenario                        check                                value        tol          status\n";
    for (const auto& entry : manifest.value("scenarios", json::array())) {
        const std::string name = entry.value("name", "?");
        if (entry.value("status", "") != "ok") {
            ++failures;
            out << name << "  [scenario failed: " << entry.value("error", "unknown") << "]\n";
            continue;
        }
        const fs::path repfile = base / name / "report.json";
        if (!fs::exists(repfile)) continue;
        const json rep = json::parse(io::read_text(repfile));
        for (const auto& c : rep.value("checks", json::array())) {
            const bool pass = c.value("pass", false);
            if (!pass) ++failures;
            char line[256];
            if (c.contains("value")) {
                std::snprintf(line, sizeof line, "%-30s  %-35s  %-11.3e  %-11.3e  %s\n",
                              name.c_str(), c.value("name", "?").c_str(),
                              c.value("value", 0.0), c.value("tolerance", 0.0),
                              pass ? "PASS" : "FAIL");
            } else {
                std::snprintf(line, sizeof line, "%-30s  %-35s  %-11s  %-11s  %s\n",
                              name.c_str(), c.value("name", "?").c_str(), "-", "-",
                              pass ? "PASS" : "FAIL");
            }
            out << line;
        }
    }
    out << (failures == 0 ? "all checks passed\n"
                          : std::to_string(failures) + " failing check(s)\n");
    return out.str();
}

} // namespace scenario
} // namespace confsurf
