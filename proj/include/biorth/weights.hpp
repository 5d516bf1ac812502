#pragma once

// Regular semi-classical weight data: singularities z_j, residues rho_j and the
// polynomials W = prod (z - z_j), 2V = W * sum rho_j / (z - z_j).

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "scalar.hpp"

namespace biorth {

enum class Placement { canonical, general };

// Exact input form.
struct WeightSpec {
    std::vector<crat> z;
    std::vector<crat> rho;
    Placement placement = Placement::canonical;
};

// Validated exact weight with exactly expanded coefficient vectors.
// Canonical order is z_0 = 0, z_1..z_N, z_{N+1} = 1.
struct ExactWeight {
    WeightSpec spec;
    std::vector<crat> W;   // degree M, low to high
    std::vector<crat> V2;  // degree M-1
};

inline std::vector<crat> exact_from_roots(const std::vector<crat>& roots) {
    std::vector<crat> p{crat(1)};
    for (const auto& r : roots) {
        std::vector<crat> q(p.size() + 1);
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i + 1] += p[i];
            q[i] -= p[i] * r;
        }
        p = std::move(q);
    }
    return p;
}

inline ExactWeight build_weight(WeightSpec spec) {
    if (spec.z.size() != spec.rho.size())
        throw ConfigError("singularities and residues differ in length");
    const std::size_t M = spec.z.size();
    if (M < 2) throw ConfigError("need at least two singularities");
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = i + 1; j < M; ++j)
            if (spec.z[i] == spec.z[j])
                throw DuplicateSingularity("singularities " + std::to_string(i) + " and " + std::to_string(j) +
                                           " coincide");
    for (std::size_t j = 0; j < M; ++j)
        if (is_nonnegative_integer(spec.rho[j]))
            throw NonnegativeIntegerResidue("residue " + std::to_string(j) + " is a nonnegative integer");
    if (spec.placement == Placement::canonical) {
        long i0 = -1, i1 = -1;
        for (std::size_t j = 0; j < M; ++j) {
            if (spec.z[j] == crat(0)) i0 = long(j);
            if (spec.z[j] == crat(1)) i1 = long(j);
        }
        if (i0 < 0 || i1 < 0) throw MissingCanonicalPoint("canonical placement needs z = 0 and z = 1");
        if (M < 3) throw MissingCanonicalPoint("canonical placement needs at least one free singularity");
        if (spec.rho[std::size_t(i0)].is_zero()) throw MissingCanonicalPoint("canonical placement needs rho_0 != 0");
        WeightSpec s;
        s.placement = Placement::canonical;
        s.z.push_back(spec.z[std::size_t(i0)]);
        s.rho.push_back(spec.rho[std::size_t(i0)]);
        for (std::size_t j = 0; j < M; ++j)
            if (long(j) != i0 && long(j) != i1) {
                s.z.push_back(spec.z[j]);
                s.rho.push_back(spec.rho[j]);
            }
        s.z.push_back(spec.z[std::size_t(i1)]);
        s.rho.push_back(spec.rho[std::size_t(i1)]);
        spec = std::move(s);
    }
    ExactWeight w;
    w.W = exact_from_roots(spec.z);
    w.V2.assign(M, crat(0));
    for (std::size_t j = 0; j < M; ++j) {
        std::vector<crat> others;
        for (std::size_t k = 0; k < M; ++k)
            if (k != j) others.push_back(spec.z[k]);
        auto P = exact_from_roots(others);
        for (std::size_t i = 0; i < P.size(); ++i) w.V2[i] += spec.rho[j] * P[i];
    }
    w.spec = std::move(spec);
    return w;
}

template <class R>
struct WeightData {
    using C = cplx<R>;

    std::vector<C> z, rho;
    Placement placement = Placement::canonical;
    int M = 0;  // number of finite singularities, deg W
    int N = 0;  // canonical: number of free singularities, M - 2

    Poly<C> W, V2;
    std::vector<C> e;  // W = sum_l (-1)^l e_l z^{M-l}
    std::vector<C> m;  // 2V = sum_l (-1)^l m_l z^{M-1-l}

    bool canonical() const { return placement == Placement::canonical; }

    C Wv(const C& x) const { return peval(W, x); }
    C Wp(const C& x) const { return peval(dW, x); }
    C Wpp(const C& x) const { return peval(ddW, x); }
    C V(const C& x) const { return peval(V2, x) / C(2); }
    C Vp(const C& x) const { return peval(dV2, x) / C(2); }
    C sum_rho() const {
        C s(0);
        for (const auto& r : rho) s += r;
        return s;
    }

    void finish() {
        M = int(z.size());
        N = M - 2;
        e.assign(std::size_t(M + 1), C(0));
        m.assign(std::size_t(M), C(0));
        for (int l = 0; l <= M; ++l) e[std::size_t(l)] = (l % 2 ? C(-1) : C(1)) * W[std::size_t(M - l)];
        for (int l = 0; l < M; ++l) m[std::size_t(l)] = (l % 2 ? C(-1) : C(1)) * V2[std::size_t(M - 1 - l)];
        dW = pderiv(W);
        ddW = pderiv(dW);
        dV2 = pderiv(V2);
    }

    // From exact data: coefficients are rounded once from their exact values.
    static WeightData from_exact(const ExactWeight& x) {
        WeightData w;
        w.placement = x.spec.placement;
        for (const auto& q : x.spec.z) w.z.push_back(to_complex<R>(q));
        for (const auto& q : x.spec.rho) w.rho.push_back(to_complex<R>(q));
        for (const auto& q : x.W) w.W.push_back(to_complex<R>(q));
        for (const auto& q : x.V2) w.V2.push_back(to_complex<R>(q));
        w.finish();
        return w;
    }

    // Floating-point construction, used for perturbed weights. The order of z
    // must already be canonical when placement is canonical.
    static WeightData from_values(std::vector<C> zs, std::vector<C> rhos, Placement pl) {
        WeightData w;
        w.placement = pl;
        w.z = std::move(zs);
        w.rho = std::move(rhos);
        const std::size_t M = w.z.size();
        w.W = from_roots(w.z);
        w.V2.assign(M, C(0));
        for (std::size_t j = 0; j < M; ++j) {
            std::vector<C> others;
            for (std::size_t k = 0; k < M; ++k)
                if (k != j) others.push_back(w.z[k]);
            w.V2 = padd(w.V2, pscale(from_roots(others), w.rho[j]));
        }
        if (pl == Placement::canonical) w.W[0] = C(0);  // z_0 = 0 exactly
        w.finish();
        return w;
    }

private:
    Poly<C> dW, ddW, dV2;
};

// Residual of the identity 2V(z_j) = rho_j W'(z_j), max over j, relative.
template <class R>
R residue_identity_residual(const WeightData<R>& w) {
    using std::abs;
    R worst(0);
    for (int j = 0; j < w.M; ++j) {
        auto lhs = w.V(w.z[std::size_t(j)]) * cplx<R>(2);
        auto rhs = w.rho[std::size_t(j)] * w.Wp(w.z[std::size_t(j)]);
        R s = std::max(R(abs(lhs)), R(abs(rhs)));
        if (s > 0) worst = std::max(worst, R(abs(lhs - rhs) / s));
    }
    return worst;
}

// Value of w(zeta) = prod (zeta - z_j)^{rho_j} at zeta = radius * e^{i theta},
// with arguments continued from principal values at theta = 0. A singularity
// sitting exactly at the base point zeta = radius is allowed; any other point
// on the contour is not.
template <class R>
struct CircleWeight {
    using C = cplx<R>;
    std::vector<C> z, rho;
    R radius{1};

    std::vector<int> where;  // -1 inside, +1 outside, 0 at the base point
    std::vector<R> offset;   // argument offsets for outside points

    CircleWeight(std::vector<C> zs, std::vector<C> rhos, R rad) : z(std::move(zs)), rho(std::move(rhos)), radius(rad) {
        using std::abs;
        using std::arg;
        const R tol = eps_of<R>() * R(64);
        for (std::size_t j = 0; j < z.size(); ++j) {
            R az = abs(z[j]);
            if (abs(z[j] - C(radius)) <= tol * radius) {
                where.push_back(0);
                offset.push_back(R(0));
                if (!(re(rho[j]) > R(-1)))
                    throw ConfigError("singularity on the contour needs Re rho > -1 for integrability");
            } else if (abs(az - radius) <= tol * radius) {
                throw ConfigError("singularity on the contour away from the base point is not supported");
            } else if (az < radius) {
                where.push_back(-1);
                offset.push_back(R(0));
            } else {
                where.push_back(1);
                offset.push_back(R(arg(C(radius) - z[j]) - arg(C(1) - C(radius) / z[j])));
            }
        }
    }

    C log_value(const R& theta) const {
        using std::abs;
        using std::arg;
        using std::cos;
        using std::log;
        using std::sin;
        C zeta(radius * cos(theta), radius * sin(theta));
        C tot(0);
        for (std::size_t j = 0; j < z.size(); ++j) {
            R lr = log(R(abs(zeta - z[j])));
            R a;
            if (where[j] < 0)
                a = theta + R(arg(C(1) - z[j] / zeta));
            else if (where[j] > 0)
                a = offset[j] + R(arg(C(1) - zeta / z[j]));
            else
                a = theta / 2 + pi_of<R>() / 2;
            tot += rho[j] * C(lr, a);
        }
        return tot;
    }

    C value(const R& theta) const {
        using std::exp;
        return exp(log_value(theta));
    }

    // |w(2pi-) / w(0+) - 1| for the part of the weight off the base point.
    R defect() const {
        using std::abs;
        using std::exp;
        C s(0);
        for (std::size_t j = 0; j < z.size(); ++j)
            if (where[j] < 0) s += rho[j];
        C two_pi_i(R(0), 2 * pi_of<R>());
        return R(abs(exp(two_pi_i * s) - C(1)));
    }

    bool has_base_singularity() const {
        for (int x : where)
            if (x == 0) return true;
        return false;
    }
};

}  // namespace biorth
