#pragma once

// Reference path: bi-orthogonal polynomials, their associated functions and
// all level-n scalars straight from Toeplitz determinants of the moments.

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "moments.hpp"
#include "poly.hpp"
#include "report.hpp"

namespace biorth {

template <class R>
struct BopsLevel {
    using C = cplx<R>;
    int n = 0;
    C I, I1;    // I_n, I_{n+1}
    C kappa;    // principal sqrt(I_n / I_{n+1}) times gauge
    int gauge = 1;
    C r, rbar, lam, lambar, mu, mubar, nu, nubar;
    Poly<C> phi, phibar, phistar;  // degree n
    Poly<C> eps, epss;             // series, orders 0..T
    int T = 0;

    C phi0() const { return phi[0]; }
    C phibar0() const { return phibar[0]; }

    // kappa_n -> -kappa_n; everything proportional to kappa_n follows.
    void flip_gauge() {
        gauge = -gauge;
        kappa = -kappa;
        for (auto* p : {&phi, &phibar, &phistar, &eps, &epss})
            for (auto& x : *p) x = -x;
    }
};

// [w_{i-j}]_{i,j<n}
template <class R>
Matrix<cplx<R>> toeplitz_matrix(const MomentSequence<R>& ms, int n) {
    Matrix<cplx<R>> T{std::size_t(n)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) T(std::size_t(i), std::size_t(j)) = ms[i - j];
    return T;
}

template <class R>
cplx<R> toeplitz_det(const MomentSequence<R>& ms, int n) {
    if (n == 0) return cplx<R>(1);
    return det_lu(toeplitz_matrix(ms, n));
}

// Hadamard bound prod_i ||row_i||, the natural scale of I_n.
template <class R>
R hadamard_bound(const MomentSequence<R>& ms, int n) {
    using std::abs;
    using std::sqrt;
    R b(1);
    for (int i = 0; i < n; ++i) {
        R s(0);
        for (int j = 0; j < n; ++j) {
            R a = abs(ms[i - j]);
            s += a * a;
        }
        b *= sqrt(s);
    }
    return b;
}

template <class R>
void require_nondegenerate(const MomentSequence<R>& ms, int n, const cplx<R>& I) {
    using std::abs;
    using std::pow;
    // a singular matrix leaves |I_n| at rounding level, about eps times the bound
    R floor = pow(eps_of<R>(), R(3) / R(4)) * hadamard_bound(ms, n);
    if (!(R(abs(I)) > floor))
        throw DegenerateDeterminant("toeplitz", "I_" + std::to_string(n) + " vanishes; no bi-orthogonal system at this level");
}

// Monic phi_n / kappa_n from the bordered determinant (rows w_{i-j}, i<n, last row z^j).
template <class R>
Poly<cplx<R>> phi_monic_from_determinant(const MomentSequence<R>& ms, int n, const cplx<R>& In) {
    using C = cplx<R>;
    if (n == 0) return {C(1)};
    Poly<C> c(static_cast<std::size_t>(n + 1));
    for (int col = 0; col <= n; ++col) {
        Matrix<C> m{std::size_t(n)};
        for (int i = 0; i < n; ++i) {
            int jj = 0;
            for (int j = 0; j <= n; ++j)
                if (j != col) m(std::size_t(i), std::size_t(jj++)) = ms[i - j];
        }
        C d = det(m);
        c[std::size_t(col)] = ((n + col) % 2 ? C(-1) : C(1)) * d / In;
    }
    return c;
}

// Monic phibar_n / kappa_n: coefficient of z^i is the (i, n) cofactor of
// [w_{i-j}]_{i<=n, j<n} bordered by the column (z^n, ..., 1).
template <class R>
Poly<cplx<R>> phibar_monic_from_determinant(const MomentSequence<R>& ms, int n, const cplx<R>& In) {
    using C = cplx<R>;
    if (n == 0) return {C(1)};
    Poly<C> c(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
        Matrix<C> m{std::size_t(n)};
        int ii = 0;
        for (int row = 0; row <= n; ++row) {
            if (row == i) continue;
            for (int j = 0; j < n; ++j) m(std::size_t(ii), std::size_t(j)) = ms[row - j];
            ++ii;
        }
        c[std::size_t(i)] = ((i + n) % 2 ? C(-1) : C(1)) * det(m) / In;
    }
    return c;
}

// eps_n and eps*_n as power series through the moment pairing.
template <class R>
void associated_series(const MomentSequence<R>& ms, BopsLevel<R>& L) {
    using C = cplx<R>;
    const int n = L.n, T = L.T;
    L.eps.assign(std::size_t(T + 1), C(0));
    L.epss.assign(std::size_t(T + 1), C(0));
    const C k = L.kappa;
    if (n == 0) {
        // eps_0 = kappa_0 [w_0 + F], eps*_0 = kappa_0 [w_0 - F]
        L.eps[0] = k * C(2) * ms[0];
        for (int kk = 1; kk <= T; ++kk) {
            L.eps[std::size_t(kk)] = k * C(2) * ms[kk];
            L.epss[std::size_t(kk)] = -k * C(2) * ms[kk];
        }
        return;
    }
    C s0(0);
    for (int i = 0; i <= n; ++i) s0 += L.phi[std::size_t(i)] * ms[-i];
    L.eps[0] = s0;
    for (int kk = 1; kk <= T; ++kk) {
        C s(0);
        for (int i = 0; i <= n; ++i) s += L.phi[std::size_t(i)] * ms[kk - i];
        L.eps[std::size_t(kk)] = C(2) * s;
    }
    C c0(0);
    for (int i = 0; i <= n; ++i) c0 += L.phibar[std::size_t(i)] * ms[i];
    if (n <= T) L.epss[std::size_t(n)] = -c0;
    for (int kk = 1; kk <= T - n; ++kk) {
        C s(0);
        for (int i = 0; i <= n; ++i) s += L.phibar[std::size_t(i)] * ms[i + kk];
        L.epss[std::size_t(n + kk)] = C(-2) * s;
    }
}

// [z^k] g_j(z) = 2 w_{k-j} for k >= 1, 0 for k = 0.
template <class R>
cplx<R> g_coeff(const MomentSequence<R>& ms, int j, int k) {
    return k >= 1 ? cplx<R>(2) * ms[k - j] : cplx<R>(0);
}

// eps_n from the g-bordered determinant, orders 0..T (n >= 1).
template <class R>
Poly<cplx<R>> eps_from_determinant(const MomentSequence<R>& ms, const BopsLevel<R>& L) {
    using C = cplx<R>;
    const int n = L.n;
    Poly<C> out(std::size_t(L.T + 1), C(0));
    for (int k = 0; k <= L.T; ++k) {
        Matrix<C> m{std::size_t(n + 1)};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= n; ++j) m(std::size_t(i), std::size_t(j)) = ms[i - j];
        for (int j = 0; j <= n; ++j) m(std::size_t(n), std::size_t(j)) = g_coeff(ms, j, k);
        out[std::size_t(k)] = det_lu(m) / (L.kappa * L.I1);
    }
    return out;
}

// eps*_n from the g-bordered determinant (column g_n..g_0), orders 0..T (n >= 1).
// The determinant carries an overall factor -1 for every n.
template <class R>
Poly<cplx<R>> epss_from_determinant(const MomentSequence<R>& ms, const BopsLevel<R>& L) {
    using C = cplx<R>;
    const int n = L.n;
    Poly<C> out(std::size_t(L.T + 1), C(0));
    for (int k = 0; k <= L.T; ++k) {
        Matrix<C> m{std::size_t(n + 1)};
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j < n; ++j) m(std::size_t(i), std::size_t(j)) = ms[i - j];
            m(std::size_t(i), std::size_t(n)) = g_coeff(ms, n - i, k);
        }
        out[std::size_t(k)] = -det_lu(m) / (L.kappa * L.I1);
    }
    return out;
}

template <class R>
BopsLevel<R> bops_level(const MomentSequence<R>& ms, int n, int T) {
    using C = cplx<R>;
    using std::sqrt;
    BopsLevel<R> L;
    L.n = n;
    L.T = T;
    L.I = toeplitz_det(ms, n);
    L.I1 = toeplitz_det(ms, n + 1);
    if (n > 0) require_nondegenerate(ms, n, L.I);
    require_nondegenerate(ms, n + 1, L.I1);
    L.kappa = sqrt(L.I / L.I1);
    auto a = phi_monic_from_determinant(ms, n, L.I);
    auto b = phibar_monic_from_determinant(ms, n, L.I);
    L.phi = pscale(a, L.kappa);
    L.phibar = pscale(b, L.kappa);
    L.phistar.assign(L.phibar.rbegin(), L.phibar.rend());
    auto at = [](const Poly<C>& p, int i) { return i >= 0 ? p[std::size_t(i)] : C(0); };
    L.r = a[0];
    L.rbar = b[0];
    if (n == 0) {
        L.r = L.rbar = C(1);
    }
    L.lam = n >= 1 ? at(a, n - 1) : C(0);
    L.lambar = n >= 1 ? at(b, n - 1) : C(0);
    L.mu = n >= 2 ? at(a, n - 2) : C(0);
    L.mubar = n >= 2 ? at(b, n - 2) : C(0);
    L.nu = n >= 3 ? at(a, n - 3) : C(0);
    L.nubar = n >= 3 ? at(b, n - 3) : C(0);
    associated_series(ms, L);
    return L;
}

template <class R>
std::vector<BopsLevel<R>> bops_levels(const MomentSequence<R>& ms, int nmax, int T) {
    std::vector<BopsLevel<R>> out;
    for (int n = 0; n <= nmax; ++n) out.push_back(bops_level(ms, n, T));
    return out;
}

// Geronimus step phi_{n+1} from level n, for comparison with the oracle.
template <class R>
Poly<cplx<R>> geronimus_phi(const BopsLevel<R>& L, const BopsLevel<R>& L1) {
    // kappa_n phi_{n+1} = kappa_{n+1} z phi_n + phi_{n+1}(0) phi*_n
    auto a = pscale(pshift(L.phi, 1), L1.kappa);
    auto b = pscale(L.phistar, L1.phi0());
    return pscale(padd(a, b), cplx<R>(1) / L.kappa);
}

// Coefficient-wise residual of a truncated series identity lhs = rhs.
template <class C>
double series_residual(const Poly<C>& lhs, const Poly<C>& rhs, std::size_t upto) {
    using std::abs;
    using R = decltype(abs(C(0)));
    R diff(0), scale(0);
    for (std::size_t k = 0; k <= upto; ++k) {
        C a = k < lhs.size() ? lhs[k] : C(0);
        C b = k < rhs.size() ? rhs[k] : C(0);
        diff = std::max(diff, R(abs(a - b)));
        scale = std::max({scale, R(abs(a)), R(abs(b))});
    }
    return scale == 0 ? 0.0 : to_double(R(diff / scale));
}

// I0, l, Casoratians, orthogonality, Geronimus step and the leading terms of
// eps_n, eps*_n. Needs levels 0..nmax+1 (and nmax+2 for epsexp at nmax).
template <class R>
Report check_oracle(const MomentSequence<R>& ms, const std::vector<BopsLevel<R>>& L, int nmax) {
    using C = cplx<R>;
    Report rep;
    const int top = int(L.size()) - 1;
    for (int n = 1; n <= nmax && n + 1 <= top; ++n) {
        const auto& a = L[std::size_t(n)];
        const auto& b = L[std::size_t(n - 1)];
        // I_{n+1} I_{n-1} / I_n^2 = 1 - r_n rbar_n
        rep.add("I0", n, "", rel_err(C(a.I1 * b.I / (a.I * a.I)), C(C(1) - a.r * a.rbar)));
        rep.add("l:kappa", n, "", sum_residual({a.kappa * a.kappa, -b.kappa * b.kappa, -a.phi0() * a.phibar0()}));
        rep.add("l:lambda", n, "", sum_residual({a.lam, -b.lam, -a.r * b.rbar}));
    }
    for (int n = 0; n <= nmax && n + 1 <= top; ++n) {
        const auto& a = L[std::size_t(n)];
        const auto& b = L[std::size_t(n + 1)];
        const std::size_t T = std::size_t(std::min(a.T, b.T));
        // phi_{n+1} eps_n - eps_{n+1} phi_n = 2 phi_{n+1}(0)/kappa_n z^n
        Poly<C> rhs(T + 1, C(0));
        rhs[std::size_t(n)] = C(2) * b.phi0() / a.kappa;
        rep.add("Cas:a", n, "", series_residual(psub(smul(b.phi, a.eps, T), smul(b.eps, a.phi, T)), rhs, T));
        Poly<C> rhs2(T + 1, C(0));
        if (std::size_t(n + 1) <= T) rhs2[std::size_t(n + 1)] = C(2) * b.phibar0() / a.kappa;
        rep.add("Cas:b", n, "", series_residual(psub(smul(b.phistar, a.epss, T), smul(b.epss, a.phistar, T)), rhs2, T));
        Poly<C> rhs3(T + 1, C(0));
        rhs3[std::size_t(n)] = C(2);
        rep.add("Cas:c", n, "", series_residual(padd(smul(a.phi, a.epss, T), smul(a.eps, a.phistar, T)), rhs3, T));
        rep.add("Geronimus", n, "", series_residual(geronimus_phi(a, b), b.phi, std::size_t(n + 1)));
    }
    for (int n = 0; n <= nmax && n <= top; ++n) {
        const auto& a = L[std::size_t(n)];
        // int w phi_n zeta^{-m} = sum_i phi_i w_{m-i};  int w zeta^m phibar_n(1/zeta) = sum_i phibar_i w_{i-m}
        double oa = 0, ob = 0;
        for (int m = 0; m <= n; ++m) {
            std::vector<C> ta, tb;
            for (int i = 0; i <= n; ++i) {
                ta.push_back(a.phi[std::size_t(i)] * ms[m - i]);
                tb.push_back(a.phibar[std::size_t(i)] * ms[i - m]);
            }
            if (m == n) {
                ta.push_back(-C(1) / a.kappa);
                tb.push_back(-C(1) / a.kappa);
            }
            oa = std::max(oa, sum_residual(ta));
            ob = std::max(ob, sum_residual(tb));
        }
        rep.add("orthog:a", n, "", oa);
        rep.add("orthog:b", n, "", ob);
        std::vector<C> tn;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) tn.push_back(a.phi[std::size_t(i)] * a.phibar[std::size_t(j)] * ms[j - i]);
        tn.push_back(C(-1));
        rep.add("onorm", n, "", sum_residual(tn));
        rep.add("phiCff", n, "", rel_err(a.phi[std::size_t(n)], a.kappa));
        rep.add("phiCff", n, "", rel_err(a.phistar[0], a.kappa));
    }
    for (int n = 0; n <= nmax && n + 2 <= top; ++n) {
        const auto& a = L[std::size_t(n)];
        const auto& b = L[std::size_t(n + 1)];
        const auto& c = L[std::size_t(n + 2)];
        const C h = a.kappa / C(2);
        rep.add("epsexp:a", n, "", rel_err(h * a.eps[std::size_t(n)], C(1)));
        rep.add("epsexp:a", n, "", rel_err(h * a.eps[std::size_t(n + 1)], -b.lambar));
        rep.add("epsexp:b", n, "", rel_err(h * a.epss[std::size_t(n + 1)], b.rbar));
        rep.add("epsexp:b", n, "", rel_err(h * a.epss[std::size_t(n + 2)], C(c.rbar - b.rbar * c.lambar)));
    }
    return rep;
}

// The determinant representations of eps_n and eps*_n against their series.
template <class R>
Report check_eps_determinants(const MomentSequence<R>& ms, const std::vector<BopsLevel<R>>& L, int nmax) {
    Report rep;
    for (int n = 1; n <= nmax && n < int(L.size()); ++n) {
        const auto& a = L[std::size_t(n)];
        const std::size_t T = std::size_t(a.T);
        rep.add("epsRep", n, "", series_residual(eps_from_determinant(ms, a), a.eps, T));
        rep.add("epsSRep", n, "", series_residual(epss_from_determinant(ms, a), a.epss, T));
    }
    return rep;
}

}  // namespace biorth
