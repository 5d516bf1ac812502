#pragma once

// End-to-end constructions shared by the command line tool, the tests and
// the examples: lattices from formal or quadrature moments, the standard
// contour families for flow checks, and the first singular step of the
// discrete Garnier iteration.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deformation.hpp"
#include "discrete_garnier.hpp"
#include "garnier.hpp"
#include "moments.hpp"
#include "random_weight.hpp"
#include "spectral.hpp"
#include "toeplitz.hpp"
#include "weights.hpp"

namespace biorth {

template <class R>
std::vector<cplx<R>> to_complex_all(const std::vector<crat>& xs) {
    std::vector<cplx<R>> out;
    for (const auto& x : xs) out.push_back(to_complex<R>(x));
    return out;
}

// Lattice up to nmax from formal seed moments w_{seed_lo}, w_{seed_lo+1}, ...
template <class R>
Lattice<R> formal_lattice(const WeightData<R>& w, const std::vector<cplx<R>>& seeds, int seed_lo, int nmax) {
    auto ms = propagate(w, seeds, seed_lo, std::min(seed_lo, lattice_kmin(nmax)),
                        std::max(seed_lo + int(seeds.size()) - 1, lattice_kmax(nmax, w.M)));
    return build_lattice(w, ms, nmax);
}

template <class R>
Lattice<R> formal_lattice(const RandomFormalWeight& rf, int nmax) {
    auto w = WeightData<R>::from_exact(build_weight(rf.spec));
    return formal_lattice(w, to_complex_all<R>(rf.seeds), -1, nmax);
}

// Lattice from moments computed by quadrature on |zeta| = radius.
template <class R>
Lattice<R> quadrature_lattice(const WeightData<R>& w, const R& radius, int nmax) {
    ContourFamily<R> fam{w.z, w.rho, w.placement, radius, nmax};
    return fam.base();
}

// Canonical families with one and two free singularities; the contour
// |zeta| = 0.6 encloses 0 and the free points, whose residues sum to 1.
template <class R>
ContourFamily<R> standard_family(int N, int nmax) {
    using C = cplx<R>;
    auto c = [](int re, int im) { return C(R(re) / R(100), R(im) / R(100)); };
    ContourFamily<R> fam;
    if (N == 1) {
        fam.z = {C(0), c(25, 10), C(1)};
        fam.rho = {c(30, 10), c(70, -10), c(-35, 20)};
    } else if (N == 2) {
        fam.z = {C(0), c(25, 10), c(-20, 30), C(1)};
        fam.rho = {c(30, 10), c(40, -5), c(30, -5), c(-35, 20)};
    } else {
        throw ConfigError("standard families exist for one and two free singularities");
    }
    fam.nmax = nmax;
    return fam;
}

// Result of iterating the discrete Garnier system until it breaks down.
struct SingularityReport {
    int first_singular_n = -1;  // -1 when every step up to the limit succeeded
    std::string where, message;
};

template <class R>
SingularityReport first_singular_step(const WeightData<R>& w, const MomentSequence<R>& ms, int n_limit) {
    SingularityReport out;
    try {
        DGFrame<R> fr(w);
        auto U = build_U(w, ms);
        auto s = dg_initial(fr, U, ms[0], ms[-1]);
        for (int n = 0; n < n_limit; ++n) s = dg_step(fr, s);
    } catch (const SingularStep& e) {
        out.first_singular_n = e.index;
        out.where = e.where;
        out.message = e.what();
    }
    return out;
}

}  // namespace biorth
