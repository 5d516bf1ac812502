#pragma once

#include <biorth/biorth.hpp>

namespace biorth::testing {

using R = real128;
using C = cplx<R>;

inline crat q(const char* re, const char* im = "0") { return crat(parse_rational(re), parse_rational(im)); }

// The three-point weight used across the unit tests.
inline WeightSpec m3_spec() {
    WeightSpec s;
    s.placement = Placement::canonical;
    s.z = {q("0"), q("3/10", "1/5"), q("1")};
    s.rho = {q("0.31", "0.1"), q("-0.45", "0.2"), q("0.27", "-0.15")};
    return s;
}

inline Lattice<R> random_lattice(std::uint64_t seed, int M, int nmax) {
    Rng rng(seed);
    return formal_lattice<R>(random_formal_weight(rng, M), nmax);
}

}  // namespace biorth::testing
