#include <gtest/gtest.h>

#include "common.hpp"

using namespace biorth;
using namespace biorth::testing;

TEST(DiscreteGarnier, IterationMatchesSpectralData) {
    for (int M : {3, 4, 5}) {
        auto lat = random_lattice(41 + std::uint64_t(M), M, 8);
        DGFrame<R> fr(lat.w);
        auto s = dg_initial(fr, build_U(lat.w, lat.ms), lat.ms[0], lat.ms[-1]);
        auto traj = dg_trajectory(fr, s, 8);
        for (int n = 0; n <= 8; ++n)
            EXPECT_LT(state_delta(traj[std::size_t(n)], dg_from_spectral(lat, n)), 1e-25) << "M = " << M << " n = " << n;
    }
}

TEST(DiscreteGarnier, FullReportPasses) {
    auto lat = random_lattice(47, 4, 6);
    auto rep = dg_report(lat, 6, 3);
    for (const char* label : {"dGarnier:a", "dGarnier:b", "dGarnier:c", "dGarnier:d", "dGaux:a", "dGaux:b", "tau:I",
                              "HamRem", "Rem:omega", "P41:a", "P41:b", "L2:a", "L2:d", "L2Th:a", "L2Om:c", "P42:init",
                              "dPV:a", "dPV:b", "Vandermonde"})
        EXPECT_TRUE(rep.has(label)) << label;
    EXPECT_TRUE(rep.passes(1e-25)) << rep.max_all();
}

TEST(DiscreteGarnier, VandermondeMinorsExactly) {
    std::vector<crat> t{q("1/2", "1/3"), q("-2", "1/7"), q("3/4", "-1")};
    const crat d = vandermonde_minor(t, 3);
    EXPECT_EQ(d, vandermonde(t));
    for (int j = 0; j <= 3; ++j) EXPECT_EQ(vandermonde_minor(t, j), esym(t, long(3 - j)) * d);
}

TEST(DiscreteGarnier, VanishingFactorIsReported) {
    auto lat = random_lattice(48, 3, 2);
    DGFrame<R> fr(lat.w);
    const int n = 1;
    const C t = fr.t[0];
    // choose omega so that the factor B of the f-update is exactly zero
    const C omega = -((C(n) - fr.rho0()) * t + fr.sg * (C(1) + fr.m(0)));
    try {
        dg_next_f(fr, n, {C(R(1) / 3)}, {omega});
        FAIL() << "expected SingularStep";
    } catch (const SingularStep& e) {
        EXPECT_EQ(e.index, n);
        EXPECT_NE(std::string(e.what()).find("B_1"), std::string::npos);
    }
}

TEST(DiscreteGarnier, FirstSingularStepIsMinusOneWhenRegular) {
    auto lat = random_lattice(49, 3, 2);
    EXPECT_EQ(first_singular_step(lat.w, lat.ms, 12).first_singular_n, -1);
}
