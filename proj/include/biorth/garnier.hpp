#pragma once

// Garnier coordinates: q_r the zeros of Theta_n, p_r = A_{11}(q_r), the
// Hamiltonians K_j and the flow in z_j (canonical placement).

#include <cmath>
#include <string>
#include <vector>

#include "deformation.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "report.hpp"
#include "roots.hpp"
#include "spectral.hpp"
#include "weights.hpp"

namespace biorth {

template <class R>
struct GarnierPoint {
    using C = cplx<R>;
    int n = 0;
    std::vector<C> q, p, K;  // K_j for the free singularities j = 1..N
    C theta_inf;
};

// p_r from the spectral data at given coordinates.
template <class R>
std::vector<cplx<R>> garnier_momenta(const WeightData<R>& w, const SpectralData<R>& s, const std::vector<cplx<R>>& q) {
    std::vector<cplx<R>> p;
    for (const auto& x : q) p.push_back(-(s.Om()(x) + w.V(x)) / w.Wv(x));
    return p;
}

namespace detail {

template <class C>
C monic_at(const std::vector<C>& q, const C& x) {
    C v(1);
    for (const auto& y : q) v *= x - y;
    return v;
}

// Theta'(q_r) / leading coefficient
template <class C>
C monic_deriv_at_root(const std::vector<C>& q, std::size_t r) {
    C v(1);
    for (std::size_t s = 0; s < q.size(); ++s)
        if (s != r) v *= q[r] - q[s];
    return v;
}

// Theta''(q_r) / (2 Theta'(q_r))
template <class C>
C half_log_second(const std::vector<C>& q, std::size_t r) {
    C v(0);
    for (std::size_t s = 0; s < q.size(); ++s)
        if (s != r) v += C(1) / (q[r] - q[s]);
    return v;
}

}  // namespace detail

// K_j as a function of (q, p); Theta_n enters only through ratios, so the
// monic product over q is used.
template <class R>
cplx<R> hamiltonian_K(const WeightData<R>& w, int n, const std::vector<cplx<R>>& q, const std::vector<cplx<R>>& p,
                      const cplx<R>& zj) {
    using C = cplx<R>;
    const C m0 = w.m[0];
    C tot(0);
    for (std::size_t r = 0; r < q.size(); ++r) {
        const C x = q[r], W = w.Wv(x);
        tot += W / detail::monic_deriv_at_root(q, r) / (zj - x) *
               (p[r] * p[r] + p[r] * (C(2) * w.V(x) / W - C(n) / x - C(1) / (zj - x)) -
                C(n) * (C(1) + m0) / (x * (x - C(1))));
    }
    return detail::monic_at(q, zj) / w.Wp(zj) * tot;
}

// dq_r/dz_j along the flow.
template <class R>
cplx<R> ham_qdot(const WeightData<R>& w, int n, const std::vector<cplx<R>>& q, const std::vector<cplx<R>>& p,
                 const cplx<R>& zj, std::size_t r) {
    using C = cplx<R>;
    const C x = q[r], W = w.Wv(x);
    return detail::monic_at(q, zj) * W / (detail::monic_deriv_at_root(q, r) * w.Wp(zj)) *
           (C(2) * p[r] + C(2) * w.V(x) / W - C(n) / x - C(1) / (zj - x)) / (zj - x);
}

// dp_r/dz_j along the flow.
template <class R>
cplx<R> ham_pdot(const WeightData<R>& w, int n, const std::vector<cplx<R>>& q, const std::vector<cplx<R>>& p,
                 const cplx<R>& zj, std::size_t r) {
    using C = cplx<R>;
    const C m0 = w.m[0];
    const C x = q[r], pr = p[r], W = w.Wv(x);
    const C h = detail::half_log_second(q, r);
    const C G = w.Wp(x) / W - h;
    C br = -W / detail::monic_deriv_at_root(q, r) *
           (pr * pr * G + pr * (C(2) * w.Vp(x) - C(2) * w.V(x) * h) / W - C(n) * pr / x * (G - C(1) / x) -
            pr / (zj - x) * (G + C(1) / (zj - x)) + C(n) * (C(1) + m0) / (x * (x - C(1)) * (zj - x)));
    for (std::size_t s = 0; s < q.size(); ++s) {
        if (s == r) continue;
        const C y = q[s], ps = p[s], Ws = w.Wv(y);
        br -= Ws / detail::monic_deriv_at_root(q, s) / (y - x) *
              (ps * ps + ps * C(2) * w.V(y) / Ws - C(n) * ps / y - ps / (zj - y) +
               C(n) * (C(1) + m0) * (y - x) / (y * (y - C(1)) * (zj - y)));
    }
    return br * detail::monic_at(q, zj) / ((zj - x) * w.Wp(zj));
}

// K_j from the residue matrices, as the list of terms that sum to it.
template <class R>
std::vector<cplx<R>> k_trace_terms(const WeightData<R>& w, const SpectralData<R>& s, const std::vector<cplx<R>>& q, int j) {
    using C = cplx<R>;
    const auto& A = s.residues;
    const C zj = w.z[std::size_t(j)];
    const auto& Aj = A[std::size_t(j)];
    std::vector<C> out;
    for (const auto& x : q) out.push_back(-Aj(0, 0) / (zj - x));
    for (int k = 0; k < w.M; ++k) {
        if (k == j) continue;
        const auto& Ak = A[std::size_t(k)];
        out.push_back(-(Aj.trace() * Ak.trace() - (Aj * Ak).trace() - Aj(0, 0) - Ak(0, 0)) / (zj - w.z[std::size_t(k)]));
    }
    return out;
}

template <class R>
cplx<R> k_trace(const WeightData<R>& w, const SpectralData<R>& s, const std::vector<cplx<R>>& q, int j) {
    cplx<R> k(0);
    for (const auto& t : k_trace_terms(w, s, q, j)) k += t;
    return k;
}

template <class R>
GarnierPoint<R> garnier_point(const Lattice<R>& lat, int n) {
    using C = cplx<R>;
    using std::abs;
    const auto& w = lat.w;
    if (!w.canonical()) throw ConfigError("Garnier coordinates need the canonical placement");
    const auto& s = lat.S[std::size_t(n)];
    GarnierPoint<R> g;
    g.n = n;
    g.q = theta_roots(s, w.N);
    const R tol = pow2<R>(-bits_of<R>() / 3);
    for (const auto& x : g.q)
        for (const auto& zj : w.z)
            if (R(abs(x - zj)) <= tol * R(1 + abs(zj)))
                throw CoordinateOnSingularity("garnier", "a zero of Theta_" + std::to_string(n) + " sits on a singularity");
    g.p = garnier_momenta(w, s, g.q);
    g.theta_inf = (C(n + 1) + w.m[0]) * s.kappa / s.kappa1;
    for (int j = 1; j <= w.N; ++j) g.K.push_back(hamiltonian_K(w, n, g.q, g.p, w.z[std::size_t(j)]));
    return g;
}

// Local exponent differences: theta_j at z_j (z_0 = 0 first), and the pair
// (alpha_inf, alpha_inf + theta_inf) at infinity; accessory = alpha_inf (alpha_inf + theta_inf).
template <class R>
struct Exponents {
    using C = cplx<R>;
    std::vector<C> theta;
    C alpha_inf, theta_inf, accessory;
};

template <class R>
Exponents<R> exponent_table(const WeightData<R>& w, int n) {
    using C = cplx<R>;
    Exponents<R> e;
    for (int j = 0; j < w.M; ++j) e.theta.push_back(j == 0 ? C(n) - w.rho[0] : -w.rho[std::size_t(j)]);
    e.alpha_inf = C(-n);
    e.theta_inf = C(n + 1) + w.m[0];
    e.accessory = -C(n) * (C(1) + w.m[0]);
    return e;
}

// The (Q, P) chart in which the flow has the Painleve property.
template <class R>
struct CanonicalChart {
    using C = cplx<R>;
    std::vector<C> t, Q, P;
};

template <class R>
CanonicalChart<R> canonical_transform(const WeightData<R>& w, const SpectralData<R>& s, const GarnierPoint<R>& g) {
    using C = cplx<R>;
    CanonicalChart<R> c;
    auto th = s.theta_poly();
    th.resize(std::size_t(w.N + 1));
    auto dth = pderiv(th);
    for (int j = 1; j <= w.N; ++j) {
        const C zj = w.z[std::size_t(j)];
        if (zj == C(1)) throw SingularTransform("garnier", "z_" + std::to_string(j) + " = 1");
        c.t.push_back(zj / (zj - C(1)));
        c.Q.push_back(zj * peval(th, zj) / (g.theta_inf * w.Wp(zj)));
        C P(0);
        for (std::size_t r = 0; r < g.q.size(); ++r) {
            const C x = g.q[r];
            P += g.p[r] / (x * (x - C(1))) * g.theta_inf * w.Wv(x) / ((x - zj) * peval(dth, x));
        }
        c.P.push_back(-(zj - C(1)) * P);
    }
    return c;
}

// Pointwise Garnier identities at level n (canonical).
template <class R>
Report garnier_report(const Lattice<R>& lat, int n) {
    using C = cplx<R>;
    using std::abs;
    Report rep;
    const auto& w = lat.w;
    const auto& s = lat.S[std::size_t(n)];
    const int N = w.N, M = w.M;
    const auto g = garnier_point(lat, n);
    const auto& q = g.q;
    const auto& p = g.p;
    auto th = s.theta_poly();
    th.resize(std::size_t(N + 1));
    auto dth = pderiv(th);
    auto Th = [&](const C& x) { return peval(th, x); };
    auto Thd = [&](const C& x) { return peval(dth, x); };
    const C kr = s.kappa1 / s.kappa, rho0 = w.rho[0], rho1 = w.rho[std::size_t(M - 1)];
    const C zero(0), one(1);

    rep.add("Thinf", n, "", rel_err(th[std::size_t(N)], g.theta_inf));
    // p_r and K_j vanish identically at n = 0, so both are compared on the
    // scale of the terms that cancel
    for (std::size_t r = 0; r < q.size(); ++r) {
        const C x = q[r];
        const R scale = std::max(R(abs(s.Om()(x))), R(abs(w.V(x)))) / R(abs(w.Wv(x)));
        rep.add("Hamp", n, "r=" + std::to_string(r), scaled_err(p[r], a_matrix(w, s, x)(0, 0), scale));
    }

    const auto pts = sample_points(w, 10);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const C x = pts[k];
        const std::string at = "x" + std::to_string(k);
        std::vector<C> t{s.Om()(x), w.V(x), -kr * x * Th(x), C(n) / g.theta_inf * x * Th(x),
                         -C(N % 2 ? -1 : 1) * (C(n) - rho0) * w.e[std::size_t(N + 1)] / Th(zero) * Th(x)};
        for (std::size_t r = 0; r < q.size(); ++r)
            t.push_back(Th(x) * x / (x - q[r]) * p[r] * w.Wv(q[r]) / (q[r] * Thd(q[r])));
        rep.add("OmegaRep", n, at, sum_residual(t));
        t = {C(2) * w.V(x), Th(x) * rho0 * w.Wp(zero) / Th(zero) * (x - one), -Th(x) * rho1 * w.Wp(one) / Th(one) * x};
        for (std::size_t r = 0; r < q.size(); ++r)
            t.push_back(-Th(x) * x * (x - one) / (x - q[r]) * C(2) * w.V(q[r]) / (q[r] * (q[r] - one) * Thd(q[r])));
        rep.add("2VRep", n, at, sum_residual(t));
        t = {w.Wv(x), -x * (x - one) * Th(x) / g.theta_inf};
        for (std::size_t r = 0; r < q.size(); ++r)
            t.push_back(-x * (x - one) * Th(x) / (x - q[r]) * w.Wv(q[r]) / (q[r] * (q[r] - one) * Thd(q[r])));
        rep.add("WRep", n, at, sum_residual(t));
    }

    for (int j = 1; j <= N; ++j) {
        auto t = k_trace_terms(w, s, q, j);
        t.push_back(-g.K[std::size_t(j - 1)]);
        rep.add("K:trace", n, "j=" + std::to_string(j), sum_residual(t));
    }

    // exponents read off the scalar ODE
    ScalarOde<R> ode{&w, &s, n};
    const auto ex = exponent_table(w, n);
    std::vector<C> all(w.z.begin(), w.z.end());
    all.insert(all.end(), q.begin(), q.end());
    const int K = std::max(96, bits_of<R>());
    auto p1 = [&](const C& z) { return ode.p1(z); };
    for (int j = 0; j < M; ++j) {
        const C zj = w.z[std::size_t(j)];
        C res = contour_residue<R>(p1, zj, R(isolation(zj, all) / R(3)), K);
        rep.add("exp:z", n, "j=" + std::to_string(j), rel_err(C(1) - res, ex.theta[std::size_t(j)]));
    }
    R big(1);
    for (const auto& x : all) big = std::max(big, R(abs(x)));
    big *= R(16);
    const C c1 = contour_mean<R>([&](const C& z) { return z * ode.p1(z); }, big, 2 * K);
    const C c2 = contour_mean<R>([&](const C& z) { return z * z * ode.p2(z); }, big, 2 * K);
    rep.add("exp:inf-sum", n, "", rel_err(c1 - one, C(2) * ex.alpha_inf + ex.theta_inf));
    if (n == 0)
        rep.add("exp:inf-prod", n, "", to_double(R(abs(c2) / R(1 + abs(w.m[0])))));
    else
        rep.add("exp:inf-prod", n, "", rel_err(c2, ex.accessory));

    // (Q, P) chart: Möbius round trip and sum_j Q_j + Theta(1)/(Theta_inf W'(1)) = 1
    const auto ch = canonical_transform(w, s, g);
    std::vector<C> qs{Th(one) / (g.theta_inf * w.Wp(one)), C(-1)};
    for (int j = 1; j <= N; ++j) {
        const C t = ch.t[std::size_t(j - 1)];
        rep.add("Hfix:a", n, "j=" + std::to_string(j), rel_err(t / (t - one), w.z[std::size_t(j)]));
        qs.push_back(ch.Q[std::size_t(j - 1)]);
    }
    rep.add("Hfix:b", n, "", sum_residual(qs));
    return rep;
}

// Flow in z_j at level n: finite differences of (q, p) through the full
// contour pipeline against the closed forms, and Hamilton's equations by
// finite differences of K_j in (q, p) against the same closed forms.
template <class R>
FlowReport hamilton_flow_check(const ContourFamily<R>& fam, int n, int j, R h = fd_step<R>()) {
    using C = cplx<R>;
    if (fam.placement != Placement::canonical) throw ConfigError("the Hamiltonian flow needs the canonical placement");
    const auto base = fam.base();
    const auto& w = base.w;
    if (j < 1 || j > w.N) throw ConfigError("flow index must name a free singularity");
    const auto g = garnier_point(base, n);
    const std::size_t N = g.q.size();
    const C zj = w.z[std::size_t(j)];
    std::vector<C> zdot(w.z.size(), C(0));
    zdot[std::size_t(j)] = C(1);

    std::vector<C> qd, pd;
    for (std::size_t r = 0; r < N; ++r) {
        qd.push_back(ham_qdot(w, n, g.q, g.p, zj, r));
        pd.push_back(ham_pdot(w, n, g.q, g.p, zj, r));
    }
    auto coords = [&](const R& hh) {
        auto lat = fam.shifted(zdot, hh);
        auto q = match_nearest(g.q, theta_roots(lat.S[std::size_t(n)], lat.w.N));
        auto p = garnier_momenta(lat.w, lat.S[std::size_t(n)], q);
        return std::make_pair(q, p);
    };
    std::vector<std::vector<C>> dq(2), dp(2), dKdp(2), dKdq(2);
    for (int i = 0; i < 2; ++i) {
        const R hh = i == 0 ? h : h / 2;
        auto [qp, pp] = coords(hh);
        auto [qm, pm] = coords(-hh);
        for (std::size_t r = 0; r < N; ++r) {
            dq[i].push_back((qp[r] - qm[r]) / C(2 * hh));
            dp[i].push_back((pp[r] - pm[r]) / C(2 * hh));
            auto P1 = g.p, P2 = g.p, Q1 = g.q, Q2 = g.q;
            P1[r] += C(hh);
            P2[r] -= C(hh);
            Q1[r] += C(hh);
            Q2[r] -= C(hh);
            dKdp[i].push_back((hamiltonian_K(w, n, g.q, P1, zj) - hamiltonian_K(w, n, g.q, P2, zj)) / C(2 * hh));
            dKdq[i].push_back(-(hamiltonian_K(w, n, Q1, g.p, zj) - hamiltonian_K(w, n, Q2, g.p, zj)) / C(2 * hh));
        }
    }
    const double floor = fd_floor<R>();
    FlowReport rep;
    for (std::size_t r = 0; r < N; ++r) {
        const std::string at = "j=" + std::to_string(j) + ",r=" + std::to_string(r);
        rep.add("Ham_qDer", at, rel_err(dq[0][r], qd[r]), rel_err(dq[1][r], qd[r]), floor);
        rep.add("Ham_pDer", at, rel_err(dp[0][r], pd[r]), rel_err(dp[1][r], pd[r]), floor);
        rep.add("Ham:dK/dp", at, rel_err(dKdp[0][r], qd[r]), rel_err(dKdp[1][r], qd[r]), floor);
        rep.add("Ham:-dK/dq", at, rel_err(dKdq[0][r], pd[r]), rel_err(dKdq[1][r], pd[r]), floor);
    }
    return rep;
}

}  // namespace biorth
