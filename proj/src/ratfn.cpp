#include "confsurf/ratfn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace confsurf {

namespace {

constexpr double kPi = 3.14159265358979323846;

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (double)(n - k + i) / (double)i;
    return r;
}

bool poles_coincide(Complex a, Complex b) {
    return std::abs(a - b) <= RationalFn::kMergeTol * std::max(1.0, std::abs(a));
}

// Partial fractions of 1/((w-a)^m (w-b)^n) for distinct a, b:
//   sum_{j=1}^m A_j/(w-a)^j + sum_{k=1}^n B_k/(w-b)^k
// A_j = (-1)^{m-j} C(m-j+n-1, n-1) (a-b)^{-(n+m-j)}.
void split_pair(Complex a, int m, Complex b, int n, Complex scale,
                std::vector<RatTerm>& out) {
    for (int j = 1; j <= m; ++j) {
        const double sgn = ((m - j) % 2 == 0) ? 1.0 : -1.0;
        const Complex amp = sgn * binom(m - j + n - 1, n - 1) *
                            std::pow(a - b, -(double)(n + m - j));
        out.push_back({a, j, scale * amp});
    }
    for (int k = 1; k <= n; ++k) {
        const double sgn = ((n - k) % 2 == 0) ? 1.0 : -1.0;
        const Complex amp = sgn * binom(n - k + m - 1, m - 1) *
                            std::pow(b - a, -(double)(m + n - k));
        out.push_back({b, k, scale * amp});
    }
}

} // namespace

RationalFn::RationalFn(std::vector<RatTerm> terms, Complex constant)
    : terms_(std::move(terms)), constant_(constant) {
    for (const auto& t : terms_) {
        if (t.order < 1) throw std::invalid_argument("RationalFn: order must be >= 1");
        if (t.order > kOrderCap) throw OrderOverflow("pole order exceeds cap");
        if (t.pole.imag() == 0.0)
            throw std::invalid_argument("RationalFn: pole on the real axis");
    }
    canonicalize();
}

RationalFn RationalFn::pole_term(Complex pole, int order, Complex coeff) {
    return RationalFn({{pole, order, coeff}}, Complex(0.0, 0.0));
}

void RationalFn::canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const RatTerm& x, const RatTerm& y) {
        if (x.pole.real() != y.pole.real()) return x.pole.real() < y.pole.real();
        if (x.pole.imag() != y.pole.imag()) return x.pole.imag() < y.pole.imag();
        return x.order < y.order;
    });
    std::vector<RatTerm> merged;
    for (const auto& t : terms_) {
        if (!merged.empty() && merged.back().order == t.order &&
            poles_coincide(merged.back().pole, t.pole)) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(t);
        }
    }
    terms_.clear();
    for (const auto& t : merged)
        if (std::abs(t.coeff) != 0.0) terms_.push_back(t);
}

bool RationalFn::is_zero(double tol) const {
    if (std::abs(constant_) > tol) return false;
    for (const auto& t : terms_)
        if (std::abs(t.coeff) > tol) return false;
    return true;
}

Complex RationalFn::eval(Complex w) const {
    Complex v = constant_;
    for (const auto& t : terms_) {
        const Complex d = w - t.pole;
        if (std::abs(d) < 1e-14) throw PoleHit("evaluation at a pole");
        v += t.coeff * std::pow(d, -(double)t.order);
    }
    return v;
}

RationalFn RationalFn::pminus() const {
    std::vector<RatTerm> keep;
    for (const auto& t : terms_)
        if (t.pole.imag() > 0.0) keep.push_back(t);
    return RationalFn(std::move(keep), constant_ * 0.5);
}

RationalFn RationalFn::pplus() const {
    std::vector<RatTerm> keep;
    for (const auto& t : terms_)
        if (t.pole.imag() < 0.0) keep.push_back(t);
    return RationalFn(std::move(keep), constant_ * 0.5);
}

RationalFn RationalFn::conj() const {
    std::vector<RatTerm> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_)
        out.push_back({std::conj(t.pole), t.order, std::conj(t.coeff)});
    return RationalFn(std::move(out), std::conj(constant_));
}

RationalFn RationalFn::derivative() const {
    std::vector<RatTerm> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (t.order + 1 > kOrderCap) throw OrderOverflow("derivative exceeds order cap");
        out.push_back({t.pole, t.order + 1, -(double)t.order * t.coeff});
    }
    return RationalFn(std::move(out), Complex(0.0, 0.0));
}

RationalFn RationalFn::antiderivative() const {
    const double scale = sup_norm_estimate();
    if (std::abs(constant_) > 1e-13 * std::max(1.0, scale))
        throw NotIntegrableToRational("nonzero constant integrates to a linear term");
    std::vector<RatTerm> out;
    for (const auto& t : terms_) {
        if (t.order == 1) {
            if (std::abs(t.coeff) > 1e-12 * std::max(1.0, scale))
                throw NotIntegrableToRational("simple pole integrates to a logarithm");
            continue;
        }
        out.push_back({t.pole, t.order - 1, -t.coeff / (double)(t.order - 1)});
    }
    return RationalFn(std::move(out), Complex(0.0, 0.0));
}

RationalFn RationalFn::mul_w() const {
    if (std::abs(constant_) != 0.0)
        throw LinearGrowth("w * f leaves the class when f has a constant part");
    std::vector<RatTerm> out;
    Complex constant = 0.0;
    for (const auto& t : terms_) {
        // w/(w-p)^m = 1/(w-p)^{m-1} + p/(w-p)^m, with the m = 1 first piece a constant
        if (t.order == 1) {
            constant += t.coeff;
        } else {
            out.push_back({t.pole, t.order - 1, t.coeff});
        }
        out.push_back({t.pole, t.order, t.coeff * t.pole});
    }
    return RationalFn(std::move(out), constant);
}

RatDivW RationalFn::div_w() const {
    std::vector<RatTerm> out;
    Complex origin = constant_;
    for (const auto& t : terms_) {
        // 1/(w (w-p)^m): the origin residue is (-p)^{-m}, the rest stays at p.
        for (int j = 1; j <= t.order; ++j) {
            const double sgn = ((t.order - j) % 2 == 0) ? 1.0 : -1.0;
            const Complex amp = sgn * std::pow(t.pole, -(double)(t.order - j + 1));
            out.push_back({t.pole, j, t.coeff * amp});
        }
        origin += t.coeff * std::pow(-t.pole, -(double)t.order);
    }
    RatDivW r;
    r.regular = RationalFn(std::move(out), Complex(0.0, 0.0));
    r.origin_coeff = origin;
    return r;
}

Complex RationalFn::line_integral() const {
    if (std::abs(constant_) != 0.0)
        throw NotIntegrableToRational("line integral of a constant diverges");
    Complex v = 0.0;
    for (const auto& t : terms_)
        if (t.order == 1)
            v += Complex(0.0, kPi) * (t.pole.imag() > 0 ? t.coeff : -t.coeff);
    return v;
}

Complex RationalFn::simple_coeff_sum(bool upper) const {
    Complex s = 0.0;
    for (const auto& t : terms_)
        if (t.order == 1 && ((t.pole.imag() > 0.0) == upper)) s += t.coeff;
    return s;
}

double RationalFn::sup_norm_estimate() const {
    double s = std::abs(constant_);
    for (const auto& t : terms_)
        s += std::abs(t.coeff) / std::pow(std::abs(t.pole.imag()), (double)t.order);
    return s;
}

bool RationalFn::approx_equal(const RationalFn& other, double tol) const {
    RationalFn d = *this - other;
    const double scale = std::max(1.0, std::max(sup_norm_estimate(), other.sup_norm_estimate()));
    if (std::abs(d.constant_) > tol * scale) return false;
    for (const auto& t : d.terms_)
        if (std::abs(t.coeff) > tol * scale) return false;
    return true;
}

RationalFn& RationalFn::operator+=(const RationalFn& g) {
    terms_.insert(terms_.end(), g.terms_.begin(), g.terms_.end());
    constant_ += g.constant_;
    canonicalize();
    return *this;
}

RationalFn operator-(const RationalFn& f, const RationalFn& g) {
    return f + Complex(-1.0, 0.0) * g;
}

RationalFn operator*(Complex s, RationalFn f) {
    for (auto& t : f.terms_) t.coeff *= s;
    f.constant_ *= s;
    f.canonicalize();
    return f;
}

RationalFn operator*(const RationalFn& f, const RationalFn& g) {
    std::vector<RatTerm> out;
    Complex constant = f.constant_ * g.constant_;
    for (const auto& t : f.terms_)
        out.push_back({t.pole, t.order, t.coeff * g.constant_});
    for (const auto& t : g.terms_)
        out.push_back({t.pole, t.order, t.coeff * f.constant_});
    for (const auto& a : f.terms_) {
        for (const auto& b : g.terms_) {
            if (poles_coincide(a.pole, b.pole)) {
                if (a.order + b.order > RationalFn::kOrderCap)
                    throw OrderOverflow("product of coincident poles exceeds order cap");
                out.push_back({a.pole, a.order + b.order, a.coeff * b.coeff});
            } else {
                split_pair(a.pole, a.order, b.pole, b.order, a.coeff * b.coeff, out);
            }
        }
    }
    return RationalFn(std::move(out), constant);
}

// ---------------------------------------------------------------------------
// Periodized evaluation.
//
// C_m(x; L) = (pi/L)^m D_m(pi x / L) where D_1 = cot and D_{m+1} = -D_m'/m.
// Each D_m is a polynomial in zeta = cot(theta) because zeta' = -(1+zeta^2).

namespace {

// cot_poly[m] holds the coefficients of D_m in powers of zeta, m in [1, 9].
const std::array<std::vector<double>, 10>& cot_polys() {
    static const std::array<std::vector<double>, 10> polys = [] {
        std::array<std::vector<double>, 10> p;
        p[1] = {0.0, 1.0}; // D_1 = zeta
        for (int m = 1; m < 9; ++m) {
            const auto& cur = p[m];
            std::vector<double> nxt(cur.size() + 2, 0.0);
            // D_{m+1} = (1/m) * sum_j cur[j] * j * (zeta^{j-1} + zeta^{j+1})
            for (std::size_t j = 1; j < cur.size(); ++j) {
                const double c = cur[j] * (double)j / (double)m;
                nxt[j - 1] += c;
                nxt[j + 1] += c;
            }
            p[m + 1] = std::move(nxt);
        }
        return p;
    }();
    return polys;
}

} // namespace

Complex periodization_kernel(Complex x, int order, double L) {
    if (order < 1 || order > 9)
        throw std::invalid_argument("periodization_kernel: order out of range");
    const Complex theta = kPi * x / L;
    const Complex s = std::sin(theta);
    if (std::abs(s) < 1e-300) throw PoleHit("periodization kernel at a lattice pole");
    const Complex zeta = std::cos(theta) / s;
    const auto& poly = cot_polys()[order];
    Complex acc = 0.0;
    for (std::size_t j = poly.size(); j-- > 0;) acc = acc * zeta + poly[j];
    return std::pow(kPi / L, (double)order) * acc;
}

Complex RationalFn::eval_periodized(Complex w, double L) const {
    Complex v = constant_;
    for (const auto& t : terms_) v += t.coeff * periodization_kernel(w - t.pole, t.order, L);
    return v;
}

Complex RationalFn::periodized_mean(double L) const {
    const Complex ipiL(0.0, kPi / L);
    return constant_ + ipiL * (simple_coeff_sum(true) - simple_coeff_sum(false));
}

Complex RationalFn::pminus_periodized(Complex u, double L) const {
    // Upper-pole kernels carry their own (i*pi/L) mean; remove it, then add
    // back half of the total zero mode.
    Complex v = 0.0;
    for (const auto& t : terms_)
        if (t.pole.imag() > 0.0)
            v += t.coeff * periodization_kernel(u - t.pole, t.order, L);
    const Complex ipiL(0.0, kPi / L);
    v -= ipiL * simple_coeff_sum(true);
    v += 0.5 * periodized_mean(L);
    return v;
}

Complex RationalFn::hilbert_periodized(Complex u, double L) const {
    const Complex id = eval_periodized(u, L);
    const Complex pm = pminus_periodized(u, L);
    return Complex(0.0, -1.0) * (2.0 * pm - id);
}

Complex RationalFn::deriv_periodized(Complex u, double L) const {
    Complex v = 0.0;
    for (const auto& t : terms_)
        v += t.coeff * (-(double)t.order) * periodization_kernel(u - t.pole, t.order + 1, L);
    return v;
}

} // namespace confsurf
