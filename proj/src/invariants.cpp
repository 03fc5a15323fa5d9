#include "confsurf/invariants.hpp"

#include <algorithm>
#include <cmath>

namespace confsurf {

namespace {

// Zero tracking reaches well above the axis: retain the spectrum down to the
// round-off floor (the truncation bias otherwise wanders as the zero moves)
// and trade a looser error budget for reach; the law checks assert the
// achieved accuracy.
const OffaxisOptions kTrackOpts{1e-15, 1e-6};

Complex eval_R(const DyachenkoState& s, Complex w) {
    return 1.0 + eval_offaxis(s.r, w, kTrackOpts);
}

} // namespace

Complex find_zero(const DyachenkoState& s, Complex guess, int max_iter, double tol) {
    if (!(guess.imag() > 0.0))
        throw std::invalid_argument("find_zero: guess must lie in the upper half-plane");
    const double scale = add_const(s.r, 1.0).max_abs_samples();
    Complex w = guess;
    for (int it = 0; it < max_iter; ++it) {
        Complex f, fp;
        try {
            f = eval_R(s, w);
            fp = eval_offaxis_deriv(s.r, w, kTrackOpts);
        } catch (const ContinuationUnreliable& e) {
            throw LeftValidityRegion(e.what());
        }
        if (std::abs(f) < tol * scale) return w;
        if (std::abs(fp) < 1e-14) throw NoConvergence("derivative vanished in Newton step");
        const Complex step = f / fp;
        w -= step;
        if (!(w.imag() > 0.0))
            throw LeftValidityRegion("Newton iterate crossed into the lower half-plane");
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(w))) {
            if (std::abs(eval_R(s, w)) < tol * scale) return w;
        }
    }
    throw NoConvergence("zero search did not converge");
}

ZeroConstants zero_constants(const DyachenkoState& s, Complex lambda) {
    const double scale = add_const(s.r, 1.0).max_abs_samples();
    if (std::abs(eval_R(s, lambda)) > 1e-6 * scale)
        throw std::invalid_argument("zero_constants: lambda is not a zero of R");
    ZeroConstants zc;
    zc.a = eval_offaxis_deriv(s.r, lambda, kTrackOpts);
    zc.b = eval_offaxis(s.v, lambda, kTrackOpts);
    return zc;
}

TrackResult track_zeros(const std::vector<DyachenkoState>& states, Complex guess, double g) {
    if (states.size() < 3) throw std::invalid_argument("track_zeros: need >= 3 states");
    TrackResult res;
    ZeroTrack& tr = res.track;
    Complex w = guess;
    for (const auto& st : states) {
        try {
            w = find_zero(st, w);
        } catch (const NumericalError& e) {
            if (tr.times.empty()) throw;
            throw TrackLost(std::string(e.what()) + " at t = " + std::to_string(st.t) +
                            ", last good t = " + std::to_string(tr.times.back()));
        }
        const ZeroConstants zc = zero_constants(st, w);
        const AuxFields aux = compute_aux(st, false);
        tr.times.push_back(st.t);
        tr.lambda.push_back(w);
        tr.a.push_back(zc.a);
        tr.b.push_back(zc.b);
        tr.U_at_zero.push_back(eval_offaxis(aux.U, w, kTrackOpts));
    }

    TrackLawReport& rep = res.report;
    rep.mismatch_plus_iU = 0.0;
    rep.mismatch_minus_iU = 0.0;
    const Complex I(0.0, 1.0);
    for (std::size_t j = 1; j + 1 < tr.times.size(); ++j) {
        const double h = tr.times[j + 1] - tr.times[j - 1];
        const Complex ld = (tr.lambda[j + 1] - tr.lambda[j - 1]) / h;
        rep.mismatch_plus_iU =
            std::max(rep.mismatch_plus_iU, std::abs(ld - I * tr.U_at_zero[j]));
        rep.mismatch_minus_iU =
            std::max(rep.mismatch_minus_iU, std::abs(ld + I * tr.U_at_zero[j]));
    }
    rep.fitted_sign = rep.mismatch_plus_iU <= rep.mismatch_minus_iU ? +1 : -1;

    rep.max_a_drift = 0.0;
    for (const auto& a : tr.a) rep.max_a_drift = std::max(rep.max_a_drift, std::abs(a - tr.a[0]));

    const LineFit bf = fit_line(tr.times, tr.b);
    rep.b_slope = bf.slope;
    rep.b_fit_residual = bf.residual_max;
    rep.b0 = bf.intercept;
    (void)g;
    return res;
}

ContourIJ contour_IJ(const DyachenkoState& s, const ContourSpec& spec) {
    if (spec.n_nodes < 16) throw std::invalid_argument("contour_IJ: too few nodes");
    const int m = spec.n_nodes;
    const double two_pi = 6.283185307179586477;
    std::vector<Complex> invR(m), VoverR(m);
    for (int j = 0; j < m; ++j) {
        const double theta = two_pi * (double)j / (double)m;
        const Complex e = std::polar(1.0, theta);
        const Complex w = spec.center + spec.radius * e;
        Complex R, V;
        try {
            R = eval_R(s, w);
            V = eval_offaxis(s.v, w, kTrackOpts);
        } catch (const ContinuationUnreliable& e2) {
            throw LeftValidityRegion(e2.what());
        }
        if (std::abs(R) < 1e-6)
            throw ContourThroughZero("contour passes within 1e-6 of a zero of R");
        // dw = i * radius * e * (2 pi / m)
        const Complex dw = Complex(0.0, 1.0) * spec.radius * e * (two_pi / (double)m);
        invR[j] = dw / R;
        VoverR[j] = dw * V / R;
    }
    ContourIJ out;
    out.I = kernels::blocked_sum(invR);
    out.J = kernels::blocked_sum(VoverR);
    return out;
}

Complex residue_inv_R(const DyachenkoState& s, Complex lambda) {
    const ZeroConstants zc = zero_constants(s, lambda);
    return 1.0 / zc.a;
}

} // namespace confsurf
