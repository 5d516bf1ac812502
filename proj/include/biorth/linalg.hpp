#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace biorth {

// Row-major dense square matrix, just enough for determinants.
template <class C>
struct Matrix {
    std::size_t n = 0;
    std::vector<C> a;

    Matrix() = default;
    explicit Matrix(std::size_t n_) : n(n_), a(n_ * n_, C(0)) {}

    C& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const C& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

// Determinant by LU with partial pivoting. The matrix is taken by value.
template <class C>
C det_lu(Matrix<C> m) {
    using std::abs;
    const std::size_t n = m.n;
    if (n == 0) return C(1);
    C det(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        auto best = abs(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            auto v = abs(m(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0) return C(0);
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            det = -det;
        }
        const C d = m(k, k);
        det *= d;
        for (std::size_t i = k + 1; i < n; ++i) {
            C f = m(i, k) / d;
            if (f == C(0)) continue;
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

namespace detail {

template <class C>
C cofactor_rec(const Matrix<C>& m, std::vector<std::size_t>& cols, std::size_t row) {
    const std::size_t k = cols.size();
    if (k == 0) return C(1);
    if (k == 1) return m(row, cols[0]);
    C s(0);
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t col = cols[c];
        if (m(row, col) == C(0)) continue;
        cols.erase(cols.begin() + long(c));
        C minor = cofactor_rec(m, cols, row + 1);
        cols.insert(cols.begin() + long(c), col);
        if (c % 2 == 0)
            s += m(row, col) * minor;
        else
            s -= m(row, col) * minor;
    }
    return s;
}

}  // namespace detail

// Laplace expansion along the first row. O(n!) so only for small n; it does no
// division, which makes it a useful reference for the LU path.
template <class C>
C det_cofactor(const Matrix<C>& m) {
    std::vector<std::size_t> cols(m.n);
    for (std::size_t i = 0; i < m.n; ++i) cols[i] = i;
    return detail::cofactor_rec(m, cols, 0);
}

template <class C>
C det(const Matrix<C>& m) {
    return m.n <= 6 ? det_cofactor(m) : det_lu(m);
}

template <class C>
struct Mat2 {
    std::array<C, 4> v{C(0), C(0), C(0), C(0)};

    Mat2() = default;
    Mat2(const C& a, const C& b, const C& c, const C& d) : v{a, b, c, d} {}

    C& operator()(int i, int j) { return v[std::size_t(2 * i + j)]; }
    const C& operator()(int i, int j) const { return v[std::size_t(2 * i + j)]; }

    C trace() const { return v[0] + v[3]; }

    Mat2& operator+=(const Mat2& o) {
        for (int i = 0; i < 4; ++i) v[i] += o.v[i];
        return *this;
    }
    Mat2& operator-=(const Mat2& o) {
        for (int i = 0; i < 4; ++i) v[i] -= o.v[i];
        return *this;
    }
    friend Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
    friend Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return Mat2(a.v[0] * b.v[0] + a.v[1] * b.v[2], a.v[0] * b.v[1] + a.v[1] * b.v[3],
                    a.v[2] * b.v[0] + a.v[3] * b.v[2], a.v[2] * b.v[1] + a.v[3] * b.v[3]);
    }
    friend Mat2 operator*(const C& s, Mat2 a) {
        for (auto& x : a.v) x *= s;
        return a;
    }
    friend Mat2 operator/(Mat2 a, const C& s) {
        for (auto& x : a.v) x /= s;
        return a;
    }
};

template <class C>
Mat2<C> commutator(const Mat2<C>& a, const Mat2<C>& b) {
    return a * b - b * a;
}

// Max-entry norm.
template <class C>
auto norm_max(const Mat2<C>& a) {
    using std::abs;
    auto m = abs(a.v[0]);
    for (int i = 1; i < 4; ++i) {
        auto x = abs(a.v[std::size_t(i)]);
        if (x > m) m = x;
    }
    return m;
}

}  // namespace biorth
