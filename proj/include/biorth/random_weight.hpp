#pragma once

// Reproducible random canonical weights with exact rational data.

#include <cstdint>
#include <random>
#include <vector>

#include "rational.hpp"
#include "weights.hpp"

namespace biorth {

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}

    // uniform integer in [lo, hi]; only the raw engine output is used so the
    // stream is identical on every platform
    long integer(long lo, long hi) { return lo + long(g() % std::uint64_t(hi - lo + 1)); }
    rational ratio(long lo, long hi, long den) { return rational(integer(lo, hi), den); }
    crat complex_ratio(long lo, long hi, long den) { return crat(ratio(lo, hi, den), ratio(lo, hi, den)); }
};

struct RandomFormalWeight {
    WeightSpec spec;
    std::vector<crat> seeds;  // w_{-1} .. w_{N-1}
};

// z_0 = 0, z_{N+1} = 1 and N free singularities with 0.55 <= |t_j| <= 0.95,
// at least 0.2 apart from each other and from 0 and 1. Moments then grow
// slowly enough that the Toeplitz determinants stay well conditioned. Every
// residue has a nonzero imaginary part, so no recurrence pivot can vanish.
inline RandomFormalWeight random_formal_weight(Rng& rng, int M) {
    const int N = M - 2;
    RandomFormalWeight out;
    out.spec.placement = Placement::canonical;
    std::vector<crat> z{crat(0)};
    auto dist2 = [](const crat& a, const crat& b) {
        crat d = a - b;
        return d.re * d.re + d.im * d.im;
    };
    while (int(z.size()) < N + 1) {
        crat t(rng.ratio(-95, 95, 100), rng.ratio(-95, 95, 100));
        rational r2 = t.re * t.re + t.im * t.im;
        if (r2 < rational(3025, 10000) || r2 > rational(9025, 10000)) continue;
        bool ok = dist2(t, crat(1)) >= rational(4, 100);
        for (const auto& x : z) ok = ok && dist2(t, x) >= rational(4, 100);
        if (ok) z.push_back(t);
    }
    z.push_back(crat(1));
    for (int j = 0; j < M; ++j) {
        rational im(0);
        while (im == 0) im = rng.ratio(-30, 30, 100);
        out.spec.rho.push_back(crat(rng.ratio(-45, 45, 100), im));
    }
    out.spec.z = std::move(z);
    for (int k = 0; k <= N; ++k) {
        crat s(0);
        while (s.is_zero()) s = rng.complex_ratio(-100, 100, 100);
        out.seeds.push_back(s);
    }
    return out;
}

}  // namespace biorth
