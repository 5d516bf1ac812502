#pragma once

// Dense polynomials and truncated power series over a complex scalar.
// Coefficient i multiplies z^i.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "scalar.hpp"

namespace biorth {

template <class C>
using Poly = std::vector<C>;

template <class C>
C peval(const Poly<C>& p, const C& z) {
    C s(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * z + *it;
    return s;
}

template <class C>
Poly<C> pderiv(const Poly<C>& p) {
    if (p.size() <= 1) return Poly<C>{C(0)};
    Poly<C> d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * C(int(i));
    return d;
}

template <class C>
Poly<C> pmul(const Poly<C>& a, const Poly<C>& b) {
    if (a.empty() || b.empty()) return {};
    Poly<C> r(a.size() + b.size() - 1, C(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

template <class C>
Poly<C> padd(const Poly<C>& a, const Poly<C>& b) {
    Poly<C> r(std::max(a.size(), b.size()), C(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

template <class C>
Poly<C> psub(const Poly<C>& a, const Poly<C>& b) {
    Poly<C> r(std::max(a.size(), b.size()), C(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return r;
}

template <class C>
Poly<C> pscale(const Poly<C>& a, const C& s) {
    Poly<C> r(a);
    for (auto& x : r) x *= s;
    return r;
}

// Multiply by z^k (k >= 0).
template <class C>
Poly<C> pshift(const Poly<C>& a, std::size_t k) {
    Poly<C> r(a.size() + k, C(0));
    std::copy(a.begin(), a.end(), r.begin() + k);
    return r;
}

template <class C>
C pcoef(const Poly<C>& a, long i) {
    if (i < 0 || std::size_t(i) >= a.size()) return C(0);
    return a[std::size_t(i)];
}

// Monic polynomial with the given roots.
template <class C>
Poly<C> from_roots(const std::vector<C>& roots) {
    Poly<C> p{C(1)};
    for (const auto& r : roots) p = pmul(p, Poly<C>{-r, C(1)});
    return p;
}

template <class C>
auto max_abs(const Poly<C>& a) {
    using std::abs;
    using R = decltype(abs(C(0)));
    R m(0);
    for (const auto& x : a) {
        R v = abs(x);
        if (v > m) m = v;
    }
    return m;
}

// Truncated power series: coefficients z^0..z^T.

template <class C>
Poly<C> strunc(const Poly<C>& a, std::size_t T) {
    Poly<C> r(T + 1, C(0));
    for (std::size_t i = 0; i < std::min(a.size(), T + 1); ++i) r[i] = a[i];
    return r;
}

template <class C>
Poly<C> smul(const Poly<C>& a, const Poly<C>& b, std::size_t T) {
    Poly<C> r(T + 1, C(0));
    std::size_t na = std::min(a.size(), T + 1);
    for (std::size_t i = 0; i < na; ++i) {
        if (a[i] == C(0)) continue;
        std::size_t nb = std::min(b.size(), T + 1 - i);
        for (std::size_t j = 0; j < nb; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

template <class C>
Poly<C> sderiv(const Poly<C>& a, std::size_t T) {
    Poly<C> r(T + 1, C(0));
    for (std::size_t i = 1; i < a.size() && i - 1 <= T; ++i) r[i - 1] = a[i] * C(int(i));
    return r;
}

// Elementary symmetric function e_k(xs); e_0 = 1, zero outside 0..|xs|.
template <class C>
C esym(const std::vector<C>& xs, long k) {
    if (k < 0 || std::size_t(k) > xs.size()) return C(0);
    std::vector<C> e(xs.size() + 1, C(0));
    e[0] = C(1);
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j >= 1; --j) e[j] += e[j - 1] * xs[i];
    return e[std::size_t(k)];
}

// prod_{j<k} (x_k - x_j)
template <class C>
C vandermonde(const std::vector<C>& xs) {
    C d(1);
    for (std::size_t j = 0; j < xs.size(); ++j)
        for (std::size_t k = j + 1; k < xs.size(); ++k) d *= xs[k] - xs[j];
    return d;
}

template <class C>
C cprod(const std::vector<C>& xs) {
    C p(1);
    for (const auto& x : xs) p *= x;
    return p;
}

template <class C>
C ipow(const C& x, int k) {
    C r(1);
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

}  // namespace biorth
