#include <gtest/gtest.h>

#include "common.hpp"

using namespace biorth;
using namespace biorth::testing;

TEST(Weight, CanonicalOrderAndResidueIdentity) {
    WeightSpec s;
    s.z = {q("1"), q("0"), q("-1/2", "1/3")};
    s.rho = {q("1/4"), q("1/3", "1/7"), q("-2/5", "1/2")};
    auto x = build_weight(s);
    EXPECT_EQ(x.spec.z[0], q("0"));
    EXPECT_EQ(x.spec.z[1], q("-1/2", "1/3"));
    EXPECT_EQ(x.spec.z[2], q("1"));
    EXPECT_EQ(x.spec.rho[0], q("1/3", "1/7"));
    // 2V(z_j) = rho_j W'(z_j), exactly
    for (std::size_t j = 0; j < 3; ++j) {
        crat v(0), d(0), p(1);
        for (std::size_t i = 0; i < x.V2.size(); ++i, p = p * x.spec.z[j]) v += x.V2[i] * p;
        p = crat(1);
        for (std::size_t i = 1; i < x.W.size(); ++i, p = p * x.spec.z[j]) d += crat(int(i)) * x.W[i] * p;
        EXPECT_EQ(v, x.spec.rho[j] * d);
    }
}

TEST(Weight, RejectsInvalidInput) {
    WeightSpec s = m3_spec();
    s.z[1] = q("0");
    EXPECT_THROW(build_weight(s), DuplicateSingularity);
    s = m3_spec();
    s.rho[1] = q("2");
    EXPECT_THROW(build_weight(s), NonnegativeIntegerResidue);
    s = m3_spec();
    s.z[2] = q("1/2");
    EXPECT_THROW(build_weight(s), MissingCanonicalPoint);
    s = m3_spec();
    s.rho.pop_back();
    EXPECT_THROW(build_weight(s), ConfigError);
}

TEST(Weight, ParsesExactRationals) {
    EXPECT_EQ(parse_rational("1/3"), rational(1, 3));
    EXPECT_EQ(parse_rational("-0.25"), rational(-1, 4));
    EXPECT_EQ(parse_rational("2.5e-3"), rational(1, 400));
    EXPECT_THROW(parse_rational("abc"), ConfigError);
}

TEST(Moments, ForwardBackwardRoundTrip) {
    auto w = WeightData<R>::from_exact(build_weight(m3_spec()));
    std::vector<C> seeds{C(R(1) / 2, R(-1) / 5), C(R(1) / 3, R(-1) / 35)};
    auto up = propagate(w, seeds, -1, -1, 12);
    // restart from the last two and run back down
    auto down = propagate(w, {up[11], up[12]}, 11, -1, 12);
    EXPECT_LT(rel_err(down[-1], seeds[0]), 1e-25);
    EXPECT_LT(rel_err(down[0], seeds[1]), 1e-25);
    for (int j = 2; j <= 12; ++j) EXPECT_LT(moment_equation_residual(w, up, j), 1e-30);
}

TEST(Moments, AgreesWithExactArithmetic) {
    // sum_a [(a - j) W_a + 2V_{a-1}] w_{j-a} = 0 at j = 2, solved for w_1 exactly
    auto x = build_weight(m3_spec());
    auto w = WeightData<R>::from_exact(x);
    std::vector<crat> s{q("1/2", "-1/5"), q("1/3", "-1/35")};
    auto c = [&](int a) { return crat(a - 2) * x.W[std::size_t(a)] + x.V2[std::size_t(a - 1)]; };
    const crat w1 = crat(0) - (c(2) * s[1] + c(3) * s[0]) / c(1);
    auto ms = propagate(w, to_complex_all<R>(s), -1, -1, 6);
    EXPECT_LT(rel_err(ms[1], to_complex<R>(w1)), 1e-35);
}

TEST(Moments, QuadratureMatchesDifferenceEquation) {
    auto fam = standard_family<R>(1, 2);
    auto w = WeightData<R>::from_values(fam.z, fam.rho, Placement::canonical);
    CircleWeight<R> cw(fam.z, fam.rho, fam.radius);
    auto ms = quadrature_moments(cw, -3, 8, R(1024) * eps_of<R>());
    for (int j = -1; j <= 8; ++j) EXPECT_LT(canonical_moment_residual(w, ms, j), 1e-30);
    // the difference equation run from two quadrature seeds reproduces the rest
    auto prop = propagate(w, {ms[-1], ms[0]}, -1, -1, 8);
    for (int k = 1; k <= 8; ++k) EXPECT_LT(rel_err(prop[k], ms[k]), 1e-25);
}

TEST(Moments, UFromSeriesMatchesClosedForm) {
    auto lat = random_lattice(11, 4, 3);
    auto U = build_U(lat.w, lat.ms);
    for (std::size_t i = 0; i < U.size(); ++i) EXPECT_LT(scaled_err(U[i], lat.U[i], R(1)), 1e-30);
}

TEST(Moments, RandomWeightsAreReproducible) {
    Rng a(5), b(5);
    auto x = random_formal_weight(a, 5), y = random_formal_weight(b, 5);
    EXPECT_EQ(x.spec.z, y.spec.z);
    EXPECT_EQ(x.spec.rho, y.spec.rho);
    EXPECT_EQ(x.seeds, y.seeds);
    EXPECT_EQ(x.spec.z.size(), 5u);
    EXPECT_EQ(x.seeds.size(), 4u);
    EXPECT_NO_THROW(build_weight(x.spec));
}
