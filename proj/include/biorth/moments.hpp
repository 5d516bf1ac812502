#pragma once

// Fourier coefficients w_k of the weight, by the moment difference equation
// (seeded) or by quadrature on a circle.

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "report.hpp"
#include "weights.hpp"

namespace biorth {

enum class Provenance { seeded, quadrature };

template <class R>
struct MomentSequence {
    using C = cplx<R>;
    int kmin = 0, kmax = -1;
    std::vector<C> vals;
    int seed_lo = 0, seed_count = 0;
    Provenance provenance = Provenance::seeded;

    bool contains(int k) const { return k >= kmin && k <= kmax; }
    const C& operator[](int k) const {
        if (!contains(k))
            throw WindowTooSmall("moment w_" + std::to_string(k) + " outside window [" + std::to_string(kmin) + ", " +
                                 std::to_string(kmax) + "]");
        return vals[std::size_t(k - kmin)];
    }
    C& at(int k) { return vals[std::size_t(k - kmin)]; }
};

// Lowest a with a nonzero coefficient in the moment equation; 1 when z = 0 is a
// singularity (then W_0 = 0 exactly), else 0.
template <class R>
int moment_alo(const WeightData<R>& w) {
    return w.W[0] == cplx<R>(0) ? 1 : 0;
}

// Order of the moment difference equation: N+1 canonical, M general.
template <class R>
int moment_order(const WeightData<R>& w) {
    return w.M - moment_alo(w);
}

// Coefficient c_a of w_{j-a} in sum_a [(a-j) W_a + 2V_{a-1}] w_{j-a} = 0.
template <class R>
cplx<R> moment_coeff(const WeightData<R>& w, int j, int a) {
    using C = cplx<R>;
    C c = C(a - j) * w.W[std::size_t(a)];
    if (a >= 1) c += w.V2[std::size_t(a - 1)];
    return c;
}

// Residual of the moment equation with top index j (relative to its terms).
template <class R>
double moment_equation_residual(const WeightData<R>& w, const MomentSequence<R>& ms, int j) {
    std::vector<cplx<R>> terms;
    for (int a = 0; a <= w.M; ++a) {
        if (!ms.contains(j - a)) return 0;
        terms.push_back(moment_coeff(w, j, a) * ms[j - a]);
    }
    return sum_residual(terms);
}

// Residual of the canonical-form equation
// sum_{l=0}^{N+1} (-1)^l [(j-l) e_{N+1-l} - m_{N+1-l}] w_{j-l} = 0.
template <class R>
double canonical_moment_residual(const WeightData<R>& w, const MomentSequence<R>& ms, int j) {
    using C = cplx<R>;
    const int N = w.N;
    std::vector<C> terms;
    for (int l = 0; l <= N + 1; ++l) {
        C c = C(j - l) * w.e[std::size_t(N + 1 - l)] - w.m[std::size_t(N + 1 - l)];
        terms.push_back((l % 2 ? C(-1) : C(1)) * c * ms[j - l]);
    }
    return sum_residual(terms);
}

struct StepFloors {
    double forward = 1e-30;  // relative pivot floor going up in k
    double backward = 1e-3;  // resonance tolerance going down in k
};

enum class Direction { forward, backward };

// One step of the difference equation. Forward returns w_k from
// w_{k-1}..w_{k-order}; backward returns w_k from w_{k+1}..w_{k+order}.
template <class R>
cplx<R> moment_step(const WeightData<R>& w, const MomentSequence<R>& ms, int k, Direction dir,
                    const StepFloors& floors = {}) {
    using C = cplx<R>;
    using std::abs;
    const int alo = moment_alo(w);
    const int j = dir == Direction::forward ? k + alo : k + w.M;
    const int apiv = dir == Direction::forward ? alo : w.M;
    R scale(0);
    C s(0);
    for (int a = alo; a <= w.M; ++a) {
        C c = moment_coeff(w, j, a);
        scale = std::max(scale, R(abs(c)));
        if (a != apiv) s += c * ms[j - a];
    }
    C piv = moment_coeff(w, j, apiv);
    double floor = dir == Direction::forward ? floors.forward : floors.backward;
    if (!(R(abs(piv)) > R(floor) * scale))
        throw SingularStep("moment_step",
                           std::string(dir == Direction::forward ? "forward" : "backward") +
                               " pivot vanishes at k = " + std::to_string(k) + " (resonant residue)",
                           k);
    return -s / piv;
}

// Seeds w_{seed_lo} .. w_{seed_lo+order-1}; fills [kmin, kmax].
template <class R>
MomentSequence<R> propagate(const WeightData<R>& w, const std::vector<cplx<R>>& seeds, int seed_lo, int kmin,
                            int kmax, const StepFloors& floors = {}) {
    const int order = moment_order(w);
    if (int(seeds.size()) != order)
        throw ConfigError("expected " + std::to_string(order) + " seed moments, got " + std::to_string(seeds.size()));
    if (kmin > seed_lo || kmax < seed_lo + order - 1) throw WindowTooSmall("window must contain the seeds");
    MomentSequence<R> ms;
    ms.kmin = kmin;
    ms.kmax = kmax;
    ms.vals.assign(std::size_t(kmax - kmin + 1), cplx<R>(0));
    ms.seed_lo = seed_lo;
    ms.seed_count = order;
    for (int i = 0; i < order; ++i) ms.at(seed_lo + i) = seeds[std::size_t(i)];
    // propagate into a temporary view that grows as we go
    MomentSequence<R> view = ms;
    view.kmin = seed_lo;
    view.kmax = seed_lo + order - 1;
    auto sync = [&](int k, const cplx<R>& v) { ms.at(k) = v; };
    view.vals.assign(seeds.begin(), seeds.end());
    for (int k = seed_lo + order; k <= kmax; ++k) {
        cplx<R> v = moment_step(w, view, k, Direction::forward, floors);
        view.vals.push_back(v);
        view.kmax = k;
        sync(k, v);
    }
    for (int k = seed_lo - 1; k >= kmin; --k) {
        cplx<R> v = moment_step(w, view, k, Direction::backward, floors);
        view.vals.insert(view.vals.begin(), v);
        view.kmin = k;
        sync(k, v);
    }
    return ms;
}

// Trapezoid rule on the circle |zeta| = radius, doubling the grid until two
// successive grids agree to rtol. Requires no singularity on the contour.
template <class R>
std::vector<cplx<R>> trapezoid_moments(const CircleWeight<R>& cw, int kmin, int kmax, const R& rtol,
                                       int* grid_used = nullptr) {
    using C = cplx<R>;
    using std::abs;
    using std::cos;
    using std::sin;
    const R two_pi = 2 * pi_of<R>();
    std::vector<C> samples;  // weight values, in grid order for the current K
    int K = 64;
    auto eval_grid = [&](int K_, std::vector<C>& vals) {
        vals.resize(std::size_t(K_));
        for (int i = 0; i < K_; ++i) vals[std::size_t(i)] = cw.value(two_pi * R(i) / R(K_));
    };
    auto moments_from = [&](int K_, const std::vector<C>& vals) {
        std::vector<C> out(std::size_t(kmax - kmin + 1), C(0));
        for (int i = 0; i < K_; ++i) {
            R th = two_pi * R(i) / R(K_);
            C unit(cos(th), sin(th));
            C zeta = unit * C(cw.radius);
            C zk = C(1);
            // zeta^{-kmin}
            C base = C(1) / zeta;
            int e0 = kmin;
            if (e0 > 0)
                for (int t = 0; t < e0; ++t) zk *= base;
            else
                for (int t = 0; t < -e0; ++t) zk *= zeta;
            for (int k = kmin; k <= kmax; ++k) {
                out[std::size_t(k - kmin)] += vals[std::size_t(i)] * zk;
                zk *= base;
            }
        }
        for (auto& x : out) x /= C(R(K_));
        return out;
    };
    eval_grid(K, samples);
    auto prev = moments_from(K, samples);
    for (;;) {
        if (K > (1 << 16)) throw NonConvergent("moment_quadrature", "trapezoid refinement stalled");
        std::vector<C> fine(static_cast<std::size_t>(2 * K));
        for (int i = 0; i < K; ++i) fine[std::size_t(2 * i)] = samples[std::size_t(i)];
        for (int i = 0; i < K; ++i) fine[std::size_t(2 * i + 1)] = cw.value(two_pi * R(2 * i + 1) / R(2 * K));
        K *= 2;
        samples = std::move(fine);
        auto cur = moments_from(K, samples);
        // w_k is a mean of terms of size |w| radius^{-k}; that is the scale
        // against which its change is judged
        R wmax(0);
        for (const auto& v : samples) wmax = std::max(wmax, R(abs(v)));
        bool done = true;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            using std::pow;
            R scale = std::max(R(abs(cur[i])), wmax * pow(cw.radius, -R(kmin + int(i))));
            if (R(abs(cur[i] - prev[i])) > rtol * scale) done = false;
        }
        prev = std::move(cur);
        if (done) break;
    }
    if (grid_used) *grid_used = K;
    return prev;
}

// w_k for a weight with a singularity at the base point of the contour.
// The integrand is endpoint-singular on (0, 2pi); tanh-sinh handles that.
template <class R>
cplx<R> tanh_sinh_moment(const CircleWeight<R>& cw, int k, const R& rtol) {
    using C = cplx<R>;
    using std::exp;
    boost::math::quadrature::tanh_sinh<R> ts(15);
    const R two_pi = 2 * pi_of<R>();
    using std::log;
    const R log_r = log(cw.radius);
    // w(zeta) zeta^{-k}
    auto integrand = [&](const R& th) { return C(exp(cw.log_value(th) - C(R(k)) * C(log_r, th))); };
    R tol = rtol;
    R err_re, err_im;
    R a = R(0), b = two_pi;
    R re_part = ts.integrate([&](const R& th) { return R(re(integrand(th))); }, a, b, tol, &err_re);
    R im_part = ts.integrate([&](const R& th) { return R(im(integrand(th))); }, a, b, tol, &err_im);
    return C(re_part / two_pi, im_part / two_pi);
}

template <class R>
MomentSequence<R> quadrature_moments(const CircleWeight<R>& cw, int kmin, int kmax, const R& rtol) {
    MomentSequence<R> ms;
    ms.kmin = kmin;
    ms.kmax = kmax;
    ms.provenance = Provenance::quadrature;
    if (cw.has_base_singularity()) {
        for (int k = kmin; k <= kmax; ++k) ms.vals.push_back(tanh_sinh_moment(cw, k, rtol));
    } else {
        ms.vals = trapezoid_moments(cw, kmin, kmax, rtol);
    }
    return ms;
}

// U from its closed form (canonical placement).
template <class R>
Poly<cplx<R>> build_U(const WeightData<R>& w, const MomentSequence<R>& ms) {
    using C = cplx<R>;
    const int N = w.N;
    const auto& e = w.e;
    const auto& m = w.m;
    auto sg = [](int k) { return (k % 2 == 0) ? C(1) : C(-1); };
    Poly<C> u(std::size_t(N + 2), C(0));
    u[0] = sg(N) * ms[0] * m[std::size_t(N + 1)];
    u[std::size_t(N + 1)] = ms[0] * m[0];
    for (int j = 1; j <= N; ++j) {
        C s(0);
        for (int l = 0; l < j; ++l)
            s += sg(N + 1 - l) * (C(j - l) * e[std::size_t(N + 1 - l)] - m[std::size_t(N + 1 - l)]) * ms[j - l];
        u[std::size_t(j)] = sg(N - j) * ms[0] * m[std::size_t(N + 1 - j)] + C(2) * s;
    }
    return u;
}

// Taylor coefficients of F(z) = w_0 + 2 sum_{k>=1} w_k z^k, orders 0..T.
template <class R>
Poly<cplx<R>> caratheodory_series(const MomentSequence<R>& ms, int T) {
    using C = cplx<R>;
    Poly<C> F(static_cast<std::size_t>(T + 1));
    F[0] = ms[0];
    for (int k = 1; k <= T; ++k) F[std::size_t(k)] = C(2) * ms[k];
    return F;
}

// U from the series W F' - 2V F; returns coefficients 0..T, the ones of
// order >= deg U + 1 should vanish.
template <class R>
Poly<cplx<R>> U_from_series(const WeightData<R>& w, const MomentSequence<R>& ms, int T) {
    auto F = caratheodory_series(ms, T + 1);
    auto lhs = smul(w.W, sderiv(F, std::size_t(T)), std::size_t(T));
    auto rhs = smul(w.V2, F, std::size_t(T));
    return psub(lhs, rhs);
}

template <class R>
struct CaraValue {
    cplx<R> value;
    R tail;  // magnitude of the last two retained terms
};

template <class R>
CaraValue<R> caratheodory(const MomentSequence<R>& ms, const cplx<R>& z, int T) {
    using C = cplx<R>;
    using std::abs;
    if (!(abs(z) < R(1))) throw ConfigError("caratheodory series needs |z| < 1");
    if (T > ms.kmax) throw WindowTooSmall("truncation exceeds the moment window");
    auto F = caratheodory_series(ms, T);
    C v = peval(F, z);
    R tail(0);
    C zp = ipow(z, T - 1);
    tail = R(abs(F[std::size_t(T - 1)] * zp)) + R(abs(F[std::size_t(T)] * zp * z));
    return {v, tail};
}

}  // namespace biorth
