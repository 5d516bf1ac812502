#pragma once

// Discrete Garnier recurrences in n for (f^j_n, omega^j_n), canonical
// placement with free singularities t_j = z_j, j = 1..N. The general-N code
// path covers M = 3 and M = 4; the explicit M = 3 and M = 4 systems are kept
// only to check it.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "garnier.hpp"
#include "moments.hpp"
#include "poly.hpp"
#include "random_weight.hpp"
#include "report.hpp"
#include "roots.hpp"
#include "spectral.hpp"
#include "weights.hpp"

namespace biorth {

struct ZeroDenominator : Degenerate {
    using Degenerate::Degenerate;
};

template <class R>
struct DGState {
    using C = cplx<R>;
    int n = 0;
    std::vector<C> f, omega;  // index l-1 holds f^l_n, omega^l_n
};

// Free singularities and the Vandermonde-type weights that the recurrences use.
template <class R>
struct DGFrame {
    using C = cplx<R>;
    const WeightData<R>* w = nullptr;
    int N = 0;
    C sg;                    // (-1)^N
    std::vector<C> t;        // t_1..t_N
    C delta;                 // Delta(T)
    std::vector<C> delta_l;  // (-1)^{N-1+l} Delta(T_l u {1})
    std::vector<std::vector<C>> e_l;  // e_k(T_l u {1}), k = 0..N
    std::vector<C> e_T, e_T1;         // e_k(T), e_k(T u {1})

    explicit DGFrame(const WeightData<R>& wd) : w(&wd), N(wd.N) {
        if (!wd.canonical()) throw ConfigError("the discrete Garnier system needs the canonical placement");
        sg = N % 2 ? C(-1) : C(1);
        t.assign(wd.z.begin() + 1, wd.z.begin() + 1 + N);
        delta = vandermonde(t);
        auto T1 = t;
        T1.push_back(C(1));
        for (int k = 0; k <= N + 1; ++k) {
            e_T.push_back(esym(t, k));
            e_T1.push_back(esym(T1, k));
        }
        for (int l = 0; l < N; ++l) {
            std::vector<C> Tl;
            for (int k = 0; k < N; ++k)
                if (k != l) Tl.push_back(t[std::size_t(k)]);
            Tl.push_back(C(1));
            delta_l.push_back(((N - 1 + l + 1) % 2 ? C(-1) : C(1)) * vandermonde(Tl));
            std::vector<C> e;
            for (int k = 0; k <= N; ++k) e.push_back(esym(Tl, k));
            e_l.push_back(e);
        }
    }

    const C& m(int l) const { return w->m[std::size_t(l)]; }
    const C& e(int l) const { return w->e[std::size_t(l)]; }
    C rho0() const { return w->rho[0]; }
};

namespace detail {

// Reject a denominator that is negligible against the terms it came from.
template <class R>
void guard(const cplx<R>& v, const R& scale, const char* where, const std::string& what, int n) {
    using std::abs;
    using std::pow;
    const R floor = pow(R(2), -R(bits_of<R>()) / 2);
    if (!(R(abs(v)) > floor * scale)) throw SingularStep(where, what + " vanishes at n = " + std::to_string(n), n);
}

template <class C>
auto mag(const C& x) {
    using std::abs;
    return abs(x);
}

}  // namespace detail

// Sums over l with weights (-1)^{N-1+l} Delta(T_l u {1}) f^l, optionally times
// t_l and e_k(T_l u {1}).
template <class R>
struct DGSums {
    using C = cplx<R>;
    C den1, den2;
    R scale1, scale2;
};

template <class R>
DGSums<R> dg_denominators(const DGFrame<R>& fr, const std::vector<cplx<R>>& f) {
    using C = cplx<R>;
    using std::abs;
    DGSums<R> s{fr.delta, fr.delta, R(abs(fr.delta)), R(abs(fr.delta))};
    for (int l = 0; l < fr.N; ++l) {
        const C a = fr.delta_l[std::size_t(l)] * f[std::size_t(l)];
        const C b = fr.t[std::size_t(l)] * a;
        s.den1 += a;
        s.den2 += b;
        s.scale1 = std::max(s.scale1, R(abs(a)));
        s.scale2 = std::max(s.scale2, R(abs(b)));
    }
    return s;
}

// Delta(T) e_k(T) + sum_l (-1)^{N-1+l} t_l Delta(T_l u {1}) e_k(T_l u {1}) f^l
template <class R>
cplx<R> dg_numerator(const DGFrame<R>& fr, const std::vector<cplx<R>>& f, int k) {
    using C = cplx<R>;
    if (k < 0 || k > fr.N) return C(0);
    C s = fr.delta * fr.e_T[std::size_t(k)];
    for (int l = 0; l < fr.N; ++l)
        s += fr.t[std::size_t(l)] * fr.delta_l[std::size_t(l)] * fr.e_l[std::size_t(l)][std::size_t(k)] * f[std::size_t(l)];
    return s;
}

// f^j_{n+1} from (f_n, omega_n).
template <class R>
std::vector<cplx<R>> dg_next_f(const DGFrame<R>& fr, int n, const std::vector<cplx<R>>& f, const std::vector<cplx<R>>& om) {
    using C = cplx<R>;
    using std::abs;
    const int N = fr.N;
    const C m0 = fr.m(0), rho0 = fr.rho0();
    const C pa = cprod(fr.t);
    std::vector<C> out;
    for (int j = 0; j < N; ++j) {
        const C tj = fr.t[std::size_t(j)];
        C pk(1);
        for (int k = 0; k < N; ++k)
            if (k != j) pk *= fr.t[std::size_t(k)];
        C A = (C(n) - rho0) * pk + fr.sg * (C(1) + m0) * ipow(tj, N);
        C B = (C(n) - rho0) * pa + fr.sg * (C(1) + m0);
        C Cc = C(n) * pk + fr.sg * ipow(tj, N);
        C D = C(n) * pa + fr.sg;
        R sB = abs(B), sD = abs(D);
        for (int l = 1; l <= N; ++l) {
            const C o = om[std::size_t(l - 1)];
            const C om_m = o + (l % 2 ? C(-1) : C(1)) * fr.m(N + 1 - l);
            A += ipow(tj, l - 1) * o;
            B += o;
            Cc += ipow(tj, l - 1) * om_m;
            D += om_m;
            sB = std::max(sB, R(abs(o)));
            sD = std::max(sD, R(abs(om_m)));
        }
        detail::guard<R>(B, sB, "dGarnier:a", "factor B_" + std::to_string(j + 1), n);
        detail::guard<R>(D, sD, "dGarnier:a", "factor D_" + std::to_string(j + 1), n);
        detail::guard<R>(tj * f[std::size_t(j)], R(abs(tj)), "dGarnier:a", "f^" + std::to_string(j + 1), n);
        out.push_back(A * Cc / (B * D) / (tj * f[std::size_t(j)]));
    }
    return out;
}

// omega^j_n + omega^j_{n-1} from f_n.
template <class R>
std::vector<cplx<R>> dg_omega_sum(const DGFrame<R>& fr, int n, const std::vector<cplx<R>>& f) {
    using C = cplx<R>;
    const int N = fr.N;
    const C m0 = fr.m(0), rho0 = fr.rho0();
    const auto d = dg_denominators(fr, f);
    detail::guard<R>(d.den1, d.scale1, "dGarnier:b", "first Vandermonde denominator", n);
    detail::guard<R>(d.den2, d.scale2, "dGarnier:b", "second Vandermonde denominator", n);
    std::vector<C> out;
    for (int J = 1; J <= N; ++J) {
        const C num1 = dg_numerator(fr, f, N - J);
        const C num2 = dg_numerator(fr, f, N + 1 - J);
        const C sJ = J % 2 ? C(-1) : C(1);
        out.push_back(sJ * (C(n - 1) * fr.e_T1[std::size_t(N + 1 - J)] + (C(n) - rho0) * num1 / d.den1 -
                            (C(n + 1) + m0) * num2 / d.den2 - fr.m(N + 1 - J)));
    }
    return out;
}

// Level n -> n+1: f first, then omega_{n+1} = RHS(f_{n+1}, n+1) - omega_n.
template <class R>
DGState<R> dg_step(const DGFrame<R>& fr, const DGState<R>& s) {
    DGState<R> out;
    out.n = s.n + 1;
    out.f = dg_next_f(fr, s.n, s.f, s.omega);
    auto sum = dg_omega_sum(fr, out.n, out.f);
    for (int l = 0; l < fr.N; ++l) out.omega.push_back(sum[std::size_t(l)] - s.omega[std::size_t(l)]);
    return out;
}

// Initial values from U, w_0 and w_{-1}.
template <class R>
DGState<R> dg_initial(const DGFrame<R>& fr, const Poly<cplx<R>>& U, const cplx<R>& w0, const cplx<R>& wm1) {
    using C = cplx<R>;
    using std::abs;
    const auto& w = *fr.w;
    const int N = fr.N;
    Poly<C> P(std::size_t(N + 2), C(0));
    R scale(0);
    for (int i = 0; i < N + 2; ++i) {
        const C u = i < int(U.size()) ? U[std::size_t(i)] : C(0);
        P[std::size_t(i)] = w.V2[std::size_t(i)] - u / w0;
        scale = std::max({scale, R(abs(w.V2[std::size_t(i)])), R(abs(u / w0))});
    }
    const C P1 = peval(P, C(1));
    detail::guard<R>(P1, scale, "dGarnier:c", "2V(1) - kappa_0^2 U(1)", 0);
    DGState<R> s;
    s.n = 0;
    for (int j = 0; j < N; ++j) {
        const C tj = fr.t[std::size_t(j)];
        s.f.push_back(peval(P, tj) / (tj * P1));
    }
    for (int j = 1; j <= N; ++j)
        s.omega.push_back(fr.sg * (P[std::size_t(j)] / C(2) - w0 / (C(2) * wm1) * P[std::size_t(j - 1)]));
    return s;
}

template <class R>
DGState<R> dg_from_spectral(const Lattice<R>& lat, int n) {
    using C = cplx<R>;
    using std::abs;
    const auto& w = lat.w;
    const int N = w.N;
    const auto& s = lat.S[std::size_t(n)];
    auto th = s.theta_poly();
    auto om = s.omega_poly();
    const C th1 = peval(th, C(1));
    if (!(R(abs(th1)) > pow2<R>(-bits_of<R>() / 2) * max_abs(th)))
        throw ZeroDenominator("dg_from_spectral", "Theta_" + std::to_string(n) + "(1) vanishes");
    DGState<R> st;
    st.n = n;
    const C sg = N % 2 ? C(-1) : C(1);
    for (int j = 1; j <= N; ++j) {
        const C tj = w.z[std::size_t(j)];
        st.f.push_back(peval(th, tj) / (tj * th1));
    }
    for (int l = 1; l <= N; ++l)
        st.omega.push_back(sg * om[std::size_t(l)] - (l % 2 ? C(-1) : C(1)) * w.m[std::size_t(N + 1 - l)] / C(2));
    return st;
}

// r_n / r_{n+1} and vartheta^j_n = (kappa_{n+1}/kappa_n) [z^j] Theta_n, j = 0..N.
template <class R>
struct DGInverse {
    using C = cplx<R>;
    C r_ratio;
    std::vector<C> vartheta;
};

template <class R>
DGInverse<R> dg_invert(const DGFrame<R>& fr, int n, const std::vector<cplx<R>>& f) {
    using C = cplx<R>;
    const int N = fr.N;
    const C m0 = fr.m(0), rho0 = fr.rho0();
    const auto d = dg_denominators(fr, f);
    detail::guard<R>(d.den2, d.scale2, "dGaux:a", "second Vandermonde denominator", n);
    detail::guard<R>(C(n) - rho0, R(1), "dGaux:a", "n - rho_0", n);
    DGInverse<R> inv;
    inv.r_ratio = (C(n + 1) + m0) * d.den1 / d.den2 / (C(n) - rho0);
    inv.vartheta.push_back(fr.sg * (C(n) * fr.e(N + 1) - fr.m(N + 1)) * inv.r_ratio);
    for (int j = 1; j < N; ++j)
        inv.vartheta.push_back(((N + j) % 2 ? C(-1) : C(1)) * (C(n + 1) + m0) * dg_numerator(fr, f, N - j) / d.den2);
    inv.vartheta.push_back(C(n + 1) + m0);
    return inv;
}

template <class R>
std::vector<DGState<R>> dg_trajectory(const DGFrame<R>& fr, DGState<R> s, int steps) {
    std::vector<DGState<R>> out{s};
    for (int k = 0; k < steps; ++k) out.push_back(s = dg_step(fr, s));
    return out;
}

// I_n recovered from a trajectory; both lambda paths are carried.
template <class R>
struct TauRecovery {
    using C = cplx<R>;
    std::vector<C> r, lambda_i, lambda_ii, rbar, I;
    double lambda_mismatch = 0;
};

template <class R>
TauRecovery<R> tau_recovery(const DGFrame<R>& fr, const std::vector<DGState<R>>& traj, const cplx<R>& w0, int n_hi) {
    using C = cplx<R>;
    const int N = fr.N;
    const C m0 = fr.m(0), e1 = fr.e(1), m1 = fr.m(1);
    if (int(traj.size()) < n_hi) throw ConfigError("trajectory too short for tau recovery");
    TauRecovery<R> t;
    t.r.push_back(C(1));
    std::vector<C> vt;
    for (int n = 0; n < n_hi; ++n) {
        auto inv = dg_invert(fr, n, traj[std::size_t(n)].f);
        if (inv.r_ratio == C(0)) throw ZeroDenominator("tau", "r_n/r_{n+1} vanishes");
        t.r.push_back(t.r.back() / inv.r_ratio);
        vt.push_back(inv.vartheta[std::size_t(N - 1)]);
    }
    t.lambda_i = {C(0), t.r[1]};
    t.lambda_ii = {C(0), t.r[1]};
    for (int n = 0; n + 2 <= n_hi; ++n) {
        const C rr = t.r[std::size_t(n + 2)] / t.r[std::size_t(n + 1)];
        const C omN = traj[std::size_t(n)].omega[std::size_t(N - 1)];
        t.lambda_ii.push_back(rr - (fr.sg * omN + e1 + m1 - (C(n + 1) + m0) * t.lambda_ii[std::size_t(n + 1)]) / (C(n + 2) + m0));
        t.lambda_i.push_back(rr - (vt[std::size_t(n)] + C(n + 1) * e1 + m1 - (C(n) + m0) * t.lambda_i[std::size_t(n)]) /
                                      (C(n + 2) + m0));
    }
    for (std::size_t k = 0; k < t.lambda_i.size(); ++k)
        t.lambda_mismatch = std::max(t.lambda_mismatch, rel_err(t.lambda_i[k], t.lambda_ii[k]));
    for (int n = 0; n + 1 < int(t.lambda_ii.size()); ++n)
        t.rbar.push_back((t.lambda_ii[std::size_t(n + 1)] - t.lambda_ii[std::size_t(n)]) / t.r[std::size_t(n + 1)]);
    t.I = {C(1), w0};
    for (int n = 1; n < n_hi; ++n)
        t.I.push_back(t.I[std::size_t(n)] * t.I[std::size_t(n)] * (C(1) - t.r[std::size_t(n)] * t.rbar[std::size_t(n)]) /
                      t.I[std::size_t(n - 1)]);
    return t;
}

// omega^j_n from Garnier coordinates by Lagrange interpolation of
// -W(q_r) p_r = (-1)^N (n - rho_0) e_{N+1} + (-1)^N sum_j omega^j q_r^j + (1 + m_0) q_r^{N+1}.
template <class R>
std::vector<cplx<R>> omega_from_qp(const WeightData<R>& w, int n, const std::vector<cplx<R>>& q, const std::vector<cplx<R>>& p) {
    using C = cplx<R>;
    const int N = w.N;
    const C sg = N % 2 ? C(-1) : C(1), m0 = w.m[0];
    std::vector<C> out;
    for (int j = 1; j <= N; ++j) {
        C s(0);
        for (int r = 0; r < N; ++r) {
            const C x = q[std::size_t(r)];
            std::vector<C> Qr;
            for (int k = 0; k < N; ++k)
                if (k != r) Qr.push_back(q[std::size_t(k)]);
            const C Rv = (-w.Wv(x) * p[std::size_t(r)] - (C(1) + m0) * ipow(x, N + 1) - sg * (C(n) - w.rho[0]) * w.e[std::size_t(N + 1)]) / x;
            s += esym(Qr, N - j) * Rv / detail::monic_deriv_at_root(q, std::size_t(r));
        }
        out.push_back((j % 2 ? C(-1) : C(1)) * s);
    }
    return out;
}

// ------------------------------------------------- explicit M = 3, M = 4 forms

// M = 3: t f_n f_{n+1} and omega_n + omega_{n-1} from (f_n, omega_n).
template <class C>
C p41_a(const C& t, const std::vector<C>& rho, int n, const C& o) {
    const C r0 = rho[0], rt = rho[1], r1 = rho[2];
    const C base = o + C(n) - t - r0 * (t + C(1));
    const C den = o + C(n) * t - C(1) - r0 * (t + C(1)) - rt;
    return (base - (rt + r1) * t) * (base - rt - r1 * t) / ((den - r1) * (den - r1 * t));
}
template <class C>
C p41_b(const C& t, const std::vector<C>& rho, int n, const C& f) {
    const C r0 = rho[0], rt = rho[1], r1 = rho[2], m0 = r0 + rt + r1;
    return (C(n) - r0) * (C(1) - t) / (f - C(1)) + (C(n + 1) + m0) * (C(1) - t) / (t * f - C(1)) - C(2 * n - 1) * t + C(2) +
           C(2) * r0 * (t + C(1)) + C(2) * rt + r1 * (t + C(1));
}

// dPV parameters (alpha_0..alpha_4) for M = 3.
template <class C>
std::vector<C> dpv_parameters(int n, const std::vector<C>& rho) {
    const C r0 = rho[0], rt = rho[1], r1 = rho[2];
    return {rt, C(n) - r0, -C(n) - rt - r1, r1, C(n + 1) + r0 + rt + r1};
}
// omega_n in terms of the dPV variable: omega_n = (1 - t) v - n t + 1 + rho_0 (t + 1) + rho_t + rho_1
template <class C>
C dpv_to_omega(const C& t, const std::vector<C>& rho, int n, const C& v) {
    return (C(1) - t) * v - C(n) * t + C(1) + rho[0] * (t + C(1)) + rho[1] + rho[2];
}

// M = 4 (s = t_1, t = t_2): the two-variable system.
template <class C>
struct L2Data {
    C s, t, r0, rs, rt, r1, m0, m1, m2;
};

template <class C>
C l2_a(const L2Data<C>& d, int n, const C& o, const C& vp) {
    const C D1 = o + vp + C(1) + d.m0 + (C(n) - d.r0) * d.s * d.t;
    const C base = o + d.s * vp + (C(1) + d.m0) * d.s * d.s + (C(n) - d.r0) * d.t;
    return (base + d.rs * (d.s - d.t) * (C(1) - d.s)) * base / ((D1 + d.r1 * (C(1) - d.s) * (d.t - C(1))) * D1);
}
template <class C>
C l2_b(const L2Data<C>& d, int n, const C& o, const C& vp) {
    const C D1 = o + vp + C(1) + d.m0 + (C(n) - d.r0) * d.s * d.t;
    const C base = o + d.t * vp + (C(1) + d.m0) * d.t * d.t + (C(n) - d.r0) * d.s;
    return (base + d.rt * (d.t - d.s) * (C(1) - d.t)) * base / ((D1 + d.r1 * (C(1) - d.s) * (d.t - C(1))) * D1);
}
template <class C>
std::array<C, 3> l2_xyz(const L2Data<C>& d, const C& f, const C& g) {
    const C s = d.s, t = d.t;
    return {s * s - t * t + (C(1) - s * s) * t * g - (C(1) - t * t) * s * f, t - s + (C(1) - t) * f - (C(1) - s) * g,
            t - s + (C(1) - t) * s * f - (C(1) - s) * t * g};
}
template <class C>
C l2_c(const L2Data<C>& d, int n, const C& f, const C& g) {
    auto [X, Y, Z] = l2_xyz(d, f, g);
    return d.m2 - C(n - 1) * (d.s + d.t + d.s * d.t) + (C(n) - d.r0) * X / Y + (C(n + 1) + d.m0) * d.s * d.t * Y / Z;
}
template <class C>
C l2_d(const L2Data<C>& d, int n, const C& f, const C& g) {
    auto [X, Y, Z] = l2_xyz(d, f, g);
    return -d.m1 + C(n - 1) * (C(1) + d.s + d.t) + (C(n) - d.r0) * Z / Y + (C(n + 1) + d.m0) * X / Z;
}

template <class R>
L2Data<cplx<R>> l2_data(const WeightData<R>& w) {
    return {w.z[1], w.z[2], w.rho[0], w.rho[1], w.rho[2], w.rho[3], w.m[0], w.m[1], w.m[2]};
}

// Delta_j(T): the N x N minor of the N x (N+1) matrix [t_i^k] with column j removed.
template <class F>
F vandermonde_minor(const std::vector<F>& t, int j) {
    const std::size_t N = t.size();
    std::vector<std::vector<F>> a(N);
    for (std::size_t i = 0; i < N; ++i) {
        F p(1);
        for (std::size_t k = 0; k <= N; ++k) {
            if (int(k) != j) a[i].push_back(p);
            p = p * t[i];
        }
    }
    F det(1);
    for (std::size_t c = 0; c < N; ++c) {
        std::size_t piv = c;
        while (piv < N && a[piv][c] == F(0)) ++piv;
        if (piv == N) return F(0);
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = F(0) - det;
        }
        det = det * a[c][c];
        for (std::size_t i = c + 1; i < N; ++i) {
            F fac = a[i][c] / a[c][c];
            for (std::size_t k = c; k < N; ++k) a[i][k] = a[i][k] - fac * a[c][k];
        }
    }
    return det;
}

// ------------------------------------------------------------------ report

template <class R>
double state_delta(const DGState<R>& a, const DGState<R>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.f.size(); ++i) m = std::max(m, rel_err(a.f[i], b.f[i]));
    for (std::size_t i = 0; i < a.omega.size(); ++i) m = std::max(m, rel_err(a.omega[i], b.omega[i]));
    return m;
}

// Every discrete-Garnier check against a lattice reaching level n_hi + 2.
// The iteration starts from the initial conditions and runs n_hi steps;
// tau recovery covers I_1..I_{n_hi}.
template <class R>
Report dg_report(const Lattice<R>& lat, int n_hi, std::uint64_t seed = 1) {
    using C = cplx<R>;
    Report rep;
    const auto& w = lat.w;
    const int N = w.N, M = w.M;
    DGFrame<R> fr(w);
    const auto& ms = lat.ms;
    const C w0 = ms[0], wm1 = ms[-1];

    // initial conditions, both ways
    auto U = build_U(w, ms);
    auto s0 = dg_initial(fr, U, w0, wm1);
    auto o0 = dg_from_spectral(lat, 0);
    rep.add("dGarnier:c", 0, "", state_delta(DGState<R>{0, s0.f, o0.omega}, o0));
    rep.add("dGarnier:d", 0, "", state_delta(DGState<R>{0, o0.f, s0.omega}, o0));

    // oracle equivalence along the trajectory
    auto traj = dg_trajectory(fr, s0, n_hi);
    for (int n = 0; n <= n_hi; ++n) rep.add("dGarnier:iter", n, "", state_delta(traj[std::size_t(n)], dg_from_spectral(lat, n)));

    // one step from oracle data, and the inversion
    for (int n = 0; n < n_hi; ++n) {
        auto on = dg_from_spectral(lat, n), on1 = dg_from_spectral(lat, n + 1);
        auto f1 = dg_next_f(fr, n, on.f, on.omega);
        for (int j = 0; j < N; ++j) rep.add("dGarnier:a", n, "j=" + std::to_string(j + 1), rel_err(f1[std::size_t(j)], on1.f[std::size_t(j)]));
        if (n >= 1) {
            auto om = dg_from_spectral(lat, n - 1);
            auto sum = dg_omega_sum(fr, n, on.f);
            for (int j = 0; j < N; ++j)
                rep.add("dGarnier:b", n, "j=" + std::to_string(j + 1),
                        sum_residual({sum[std::size_t(j)], -on.omega[std::size_t(j)], -om.omega[std::size_t(j)]}));
        }
        auto inv = dg_invert(fr, n, on.f);
        const auto& Ln = lat.L[std::size_t(n)];
        const auto& Ln1 = lat.L[std::size_t(n + 1)];
        rep.add("dGaux:a", n, "", rel_err(inv.r_ratio, Ln.r / Ln1.r));
        auto th = lat.S[std::size_t(n)].theta_poly();
        const C kr = Ln1.kappa / Ln.kappa;
        for (int j = 0; j <= N; ++j)
            rep.add(j >= 1 && j < N ? "dGaux:b" : "dGaux:ends", n, "j=" + std::to_string(j),
                    rel_err(inv.vartheta[std::size_t(j)], kr * th[std::size_t(j)]));
    }

    // tau function
    auto tau = tau_recovery(fr, traj, w0, n_hi);
    rep.add("tau:lambda", -1, "", tau.lambda_mismatch);
    for (int n = 0; n <= n_hi; ++n) rep.add("tau:I", n, "", rel_err(tau.I[std::size_t(n)], lat.L[std::size_t(n)].I));

    // Hamiltonian form of the recurrence, with q_r the zeros of Theta_{n+1}
    for (int n = 0; n < n_hi && n + 1 <= lat.nmax; ++n) {
        const auto g1 = garnier_point(lat, n + 1);
        const auto g0 = garnier_point(lat, n);
        const auto pn = garnier_momenta(w, lat.S[std::size_t(n)], g1.q);
        const auto pn1 = garnier_momenta(w, lat.S[std::size_t(n + 1)], g0.q);
        for (int r = 0; r < N; ++r) {
            const C x = g1.q[std::size_t(r)], y = g0.q[std::size_t(r)];
            rep.add("HamRem", n, "r=" + std::to_string(r),
                    sum_residual({g1.p[std::size_t(r)], pn[std::size_t(r)], -C(n) / x, C(2) * w.V(x) / w.Wv(x)}));
            rep.add("HamRem-level-n", n, "r=" + std::to_string(r),
                    sum_residual({pn1[std::size_t(r)], g0.p[std::size_t(r)], -C(n) / y, C(2) * w.V(y) / w.Wv(y)}), true);
        }
        // (q, p) -> omega, and the printed closed form
        auto om = omega_from_qp(w, n, g0.q, g0.p);
        auto ref = dg_from_spectral(lat, n);
        for (int j = 0; j < N; ++j) rep.add("Rem:omega", n, "j=" + std::to_string(j + 1), rel_err(om[std::size_t(j)], ref.omega[std::size_t(j)]));
        std::vector<C> T(w.z.begin() + 1, w.z.begin() + 1 + N);
        const auto& q = g0.q;
        for (int j = 1; j <= N; ++j) {
            C rhs = (C(1) + w.m[0] + (C(n) - w.rho[0]) * esym(T, N) / esym(q, N)) * esym(q, N - j);
            for (int r = 0; r < N; ++r) {
                std::vector<C> Qr;
                for (int k = 0; k < N; ++k)
                    if (k != r) Qr.push_back(q[std::size_t(k)]);
                C pt(1);
                for (const auto& tk : T) pt *= q[std::size_t(r)] - tk;
                rhs -= esym(Qr, N - j) * (q[std::size_t(r)] - C(1)) * pt / detail::monic_deriv_at_root(q, std::size_t(r)) * g0.p[std::size_t(r)];
            }
            rep.add("Rem:omega-printed", n, "j=" + std::to_string(j), rel_err((j % 2 ? C(-1) : C(1)) * ref.omega[std::size_t(j - 1)], rhs), true);
        }
    }

    // explicit M = 3 and M = 4 forms on oracle data
    if (M == 3) {
        const C t = w.z[1];
        for (int n = 1; n < n_hi; ++n) {
            const auto& L = lat.L;
            auto on = dg_from_spectral(lat, n);
            const C kr = L[std::size_t(n + 1)].kappa / L[std::size_t(n)].kappa;
            const C th0 = lat.S[std::size_t(n)].theta_poly()[0];
            rep.add("P41:vartheta", n, "", rel_err(kr * th0, -L[std::size_t(n)].r / L[std::size_t(n + 1)].r * (C(n) - w.rho[0]) * t));
            const C m0 = w.m[0];
            rep.add("P41:omega", n, "",
                    rel_err(on.omega[0], C(1) + w.rho[0] + w.rho[1] + (C(1) + w.rho[0] + w.rho[2]) * t +
                                             (C(n + 2) + m0) * (L[std::size_t(n + 2)].lam - L[std::size_t(n + 2)].r / L[std::size_t(n + 1)].r) -
                                             (C(n + 1) + m0) * L[std::size_t(n + 1)].lam));
        }
    }
    if (M == 4) {
        const auto d = l2_data(w);
        const auto& L = lat.L;
        const auto& e = w.e;
        const auto& m = w.m;
        const C m0 = m[0];
        for (int n = 1; n < n_hi; ++n) {
            auto on = dg_from_spectral(lat, n);
            const C kr = L[std::size_t(n + 1)].kappa / L[std::size_t(n)].kappa;
            auto th = lat.S[std::size_t(n)].theta_poly();
            auto om = lat.S[std::size_t(n)].omega_poly();
            auto [X, Y, Z] = l2_xyz(d, on.f[0], on.f[1]);
            const C rr = L[std::size_t(n)].r / L[std::size_t(n + 1)].r;
            rep.add("L2Th:a", n, "", rel_err(kr * th[0], (C(n) - d.r0) * e[3] * rr));
            rep.add("L2Th:inv", n, "", rel_err(kr * th[1], (C(n + 1) + m0) * X / Z));
            rep.add("L2Th:r", n, "", rel_err(rr, (C(n + 1) + m0) / (C(n) - d.r0) * Y / Z));
            rep.add("L2Om:a", n, "1", rel_err(om[1], on.omega[0] - m[2] / C(2)));
            rep.add("L2Om:a", n, "2", rel_err(om[2], on.omega[1] + m[1] / C(2)));
            if (n + 2 < int(L.size())) {
                const auto &A = L[std::size_t(n)], &B = L[std::size_t(n + 1)], &D = L[std::size_t(n + 2)];
                rep.add("L2Th:b", n, "",
                        rel_err(kr * th[1], -C(n + 1) * e[1] - m[1] + (C(n + 2) + m0) * (D.r / B.r - D.r * B.rbar) -
                                                (C(n) + m0) * B.r * A.rbar - C(2) * B.lam));
                rep.add("L2Om:b", n, "",
                        rel_err(on.omega[0], -C(n) * e[2] + m[2] + (C(n) - d.r0) * e[3] * (A.r / B.r - B.rbar * A.r) - e[3] * B.lambar));
                rep.add("L2Om:c", n, "",
                        rel_err(on.omega[1], -e[1] - m[1] + (C(n + 2) + m0) * (D.r / B.r - D.r * B.rbar) - B.lam));
            }
        }
        // initial values in w_{-1}, w_0, w_1
        const C w1 = ms[1], s = d.s, t = d.t;
        const C mix = d.r0 * (s + t + s * t) + d.r1 * s * t + d.rs * t + d.rt * s;
        const C om0 = (C(1) - d.r0) * s * t * w1 / w0 + d.r0 * s * t * w0 / wm1 + mix;
        const C vp0 = -(C(1) + m0) * wm1 / w0 - (C(1) - d.r0) * s * t * w1 / wm1 - mix * w0 / wm1;
        const C den = (C(1) + m0) * wm1 - (d.r0 * (s + t) + d.r1 * s * t + d.rs * t + d.rt * s) * w0 - (C(1) - d.r0) * s * t * w1;
        const C f0 = ((C(1) + m0) * s * wm1 - (d.r0 * s * (t + C(1)) + d.r1 * s * t + d.rs * t + d.rt * s) * w0 - (C(1) - d.r0) * s * t * w1) / den;
        const C g0 = ((C(1) + m0) * t * wm1 - (d.r0 * t * (s + C(1)) + d.r1 * s * t + d.rs * t + d.rt * s) * w0 - (C(1) - d.r0) * s * t * w1) / den;
        rep.add("P42:init", 0, "omega", rel_err(om0, s0.omega[0]));
        rep.add("P42:init", 0, "varpi", rel_err(vp0, s0.omega[1]));
        rep.add("P42:init", 0, "f", rel_err(f0, s0.f[0]));
        rep.add("P42:init", 0, "g", rel_err(g0, s0.f[1]));
    }

    // explicit forms against the general recurrences at random points
    Rng rng(seed);
    auto rnd = [&]() { return C(from_rational<R>(rng.ratio(-1000, 1000, 997)), from_rational<R>(rng.ratio(-1000, 1000, 991))); };
    for (int k = 0; k < 20; ++k) {
        const int n = int(rng.integer(1, 12));
        {
            std::vector<C> z{C(0), rnd(), C(1)}, rho{rnd(), rnd(), rnd()};
            auto w3 = WeightData<R>::from_values(z, rho, Placement::canonical);
            DGFrame<R> f3(w3);
            const C f = rnd(), o = rnd();
            const C t = z[1];
            auto f1 = dg_next_f(f3, n, {f}, {o});
            rep.add("P41:a", n, "pt" + std::to_string(k), rel_err(t * f * f1[0], p41_a(t, rho, n, o)));
            rep.add("P41:b", n, "pt" + std::to_string(k), rel_err(dg_omega_sum(f3, n, {f})[0], p41_b(t, rho, n, f)));
            // dPV bookkeeping: with omega = (1-t) v - n t + 1 + rho_0 (t+1) + rho_t + rho_1 the
            // system only involves the alpha parameters
            const auto a = dpv_parameters(n, rho);
            const C v = rnd();
            const C lhs_a = p41_a(t, rho, n, dpv_to_omega(t, rho, n, v));
            const C rhs_a = (v + C(1) - a[2]) * (v + C(1) - a[0] - a[2]) / (v * (v + a[3]));
            rep.add("dPV:a", n, "pt" + std::to_string(k), rel_err(lhs_a, rhs_a));
            // omega_{n-1} from the general recurrence, read back as a dPV variable
            const C om_prev = dg_omega_sum(f3, n, {f})[0] - dpv_to_omega(t, rho, n, v);
            const C vm = (om_prev - dpv_to_omega(t, rho, n - 1, C(0))) / (C(1) - t);
            const C lhs_b = v + vm + a[3];
            const C rhs_b = a[1] / (f - C(1)) + a[4] / (t * f - C(1));
            rep.add("dPV:b", n, "pt" + std::to_string(k), rel_err(lhs_b, rhs_b));
        }
        {
            std::vector<C> z{C(0), rnd(), rnd(), C(1)}, rho{rnd(), rnd(), rnd(), rnd()};
            auto w4 = WeightData<R>::from_values(z, rho, Placement::canonical);
            DGFrame<R> f4(w4);
            const auto d = l2_data(w4);
            const C f = rnd(), g = rnd(), o = rnd(), vp = rnd();
            auto f1 = dg_next_f(f4, n, {f, g}, {o, vp});
            auto sum = dg_omega_sum(f4, n, {f, g});
            const std::string at = "pt" + std::to_string(k);
            rep.add("L2:a", n, at, rel_err(d.s * f * f1[0], l2_a(d, n, o, vp)));
            rep.add("L2:b", n, at, rel_err(d.t * g * f1[1], l2_b(d, n, o, vp)));
            rep.add("L2:c", n, at, rel_err(sum[0], l2_c(d, n, f, g)));
            rep.add("L2:d", n, at, rel_err(sum[1], l2_d(d, n, f, g)));
        }
    }

    // Vandermonde minors, exactly
    for (int k = 0; k < 5; ++k) {
        std::vector<crat> T;
        for (int i = 0; i < 2 + k % 3; ++i) T.push_back(rng.complex_ratio(-9, 9, 7) + crat(rational(i)));
        const crat d = vandermonde_minor(T, int(T.size()));
        for (int j = 0; j <= int(T.size()); ++j) {
            const crat lhs = vandermonde_minor(T, j), rhs = esym(T, long(T.size()) - j) * d;
            rep.add("Vandermonde", -1, "N=" + std::to_string(T.size()) + ",j=" + std::to_string(j), lhs == rhs ? 0.0 : 1.0);
        }
    }
    return rep;
}

}  // namespace biorth
