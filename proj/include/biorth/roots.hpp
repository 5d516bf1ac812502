#pragma once

// Polynomial roots as eigenvalues of the companion matrix, via single-shift
// complex QR on the (already Hessenberg) companion form, then Newton polish.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "poly.hpp"
#include "scalar.hpp"

namespace biorth {

namespace detail {

template <class C>
struct Givens {
    C c, s;  // [c s; -conj(s) c] with c real-valued
};

template <class C>
Givens<C> make_givens(const C& a, const C& b) {
    using std::abs;
    using std::conj;
    using std::sqrt;
    auto na = abs(a), nb = abs(b);
    using R = decltype(na);
    if (nb == R(0)) return {C(1), C(0)};
    if (na == R(0)) return {C(0), conj(b) / nb};
    R r = sqrt(na * na + nb * nb);
    C phase = a / na;
    return {C(na / r), phase * conj(b) / r};
}

}  // namespace detail

// Eigenvalues of an upper Hessenberg matrix h (n x n, row-major), destroyed.
template <class C>
std::vector<C> hessenberg_eigenvalues(std::vector<C> h, int n) {
    using std::abs;
    using std::conj;
    using std::sqrt;
    using R = decltype(abs(C(0)));
    auto H = [&](int i, int j) -> C& { return h[std::size_t(i * n + j)]; };
    const R eps = std::numeric_limits<R>::epsilon();
    std::vector<C> ev(static_cast<std::size_t>(n));
    int hi = n - 1;
    int iter = 0;
    while (hi >= 0) {
        if (hi == 0) {
            ev[0] = H(0, 0);
            break;
        }
        // find the active block [lo, hi]
        int lo = hi;
        while (lo > 0) {
            R s = abs(H(lo - 1, lo - 1)) + abs(H(lo, lo));
            if (abs(H(lo, lo - 1)) <= eps * s) {
                H(lo, lo - 1) = C(0);
                break;
            }
            --lo;
        }
        if (lo == hi) {
            ev[std::size_t(hi)] = H(hi, hi);
            --hi;
            iter = 0;
            continue;
        }
        if (++iter > 200 * n) throw std::runtime_error("QR iteration did not converge");
        // Wilkinson shift from the trailing 2x2 block
        C a = H(hi - 1, hi - 1), b = H(hi - 1, hi), c = H(hi, hi - 1), d = H(hi, hi);
        C tr = a + d, dt = a * d - b * c;
        C disc = sqrt(tr * tr / C(4) - dt);
        C l1 = tr / C(2) + disc, l2 = tr / C(2) - disc;
        C mu = abs(l1 - d) < abs(l2 - d) ? l1 : l2;
        if (iter % 11 == 10) mu = d + C(abs(H(hi, hi - 1)));  // exceptional shift
        for (int i = lo; i <= hi; ++i) H(i, i) -= mu;
        std::vector<detail::Givens<C>> gs;
        gs.reserve(std::size_t(hi - lo));
        for (int k = lo; k < hi; ++k) {
            auto g = detail::make_givens(H(k, k), H(k + 1, k));
            gs.push_back(g);
            for (int j = k; j < n; ++j) {
                C x = H(k, j), y = H(k + 1, j);
                H(k, j) = g.c * x + g.s * y;
                H(k + 1, j) = -conj(g.s) * x + g.c * y;
            }
        }
        for (int k = lo; k < hi; ++k) {
            const auto& g = gs[std::size_t(k - lo)];
            for (int i = 0; i <= std::min(k + 2, hi); ++i) {
                C x = H(i, k), y = H(i, k + 1);
                H(i, k) = x * g.c + y * conj(g.s);
                H(i, k + 1) = -x * g.s + y * g.c;
            }
        }
        for (int i = lo; i <= hi; ++i) H(i, i) += mu;
    }
    return ev;
}

// Roots of p (coefficients low to high, nonzero leading coefficient).
template <class C>
std::vector<C> poly_roots(const Poly<C>& p) {
    int n = int(p.size()) - 1;
    while (n > 0 && p[std::size_t(n)] == C(0)) --n;
    if (n <= 0) return {};
    const C lead = p[std::size_t(n)];
    std::vector<C> h(std::size_t(n * n), C(0));
    for (int j = 0; j < n; ++j) h[std::size_t(j)] = -p[std::size_t(n - 1 - j)] / lead;
    for (int i = 1; i < n; ++i) h[std::size_t(i * n + i - 1)] = C(1);
    auto roots = hessenberg_eigenvalues(std::move(h), n);
    Poly<C> q(p.begin(), p.begin() + n + 1);
    Poly<C> dq = pderiv(q);
    for (auto& x : roots) {
        C d = peval(dq, x);
        if (d != C(0)) x -= peval(q, x) / d;
    }
    return roots;
}

template <class C>
void sort_lex(std::vector<C>& xs) {
    std::sort(xs.begin(), xs.end(), [](const C& a, const C& b) {
        if (re(a) != re(b)) return re(a) < re(b);
        return im(a) < im(b);
    });
}

// Reorder xs so that xs[i] is the nearest unused element to ref[i].
template <class C>
std::vector<C> match_nearest(const std::vector<C>& ref, std::vector<C> xs) {
    using std::abs;
    std::vector<C> out;
    out.reserve(ref.size());
    for (const auto& r : ref) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < xs.size(); ++i)
            if (abs(xs[i] - r) < abs(xs[best] - r)) best = i;
        out.push_back(xs[best]);
        xs.erase(xs.begin() + long(best));
    }
    return out;
}

}  // namespace biorth
