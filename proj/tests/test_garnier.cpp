#include <gtest/gtest.h>

#include "common.hpp"

using namespace biorth;
using namespace biorth::testing;

TEST(Garnier, PointwiseIdentitiesOnFormalWeights) {
    for (int M : {3, 4}) {
        auto lat = random_lattice(31 + std::uint64_t(M), M, 4);
        for (int n = 0; n <= 4; ++n) {
            auto rep = garnier_report(lat, n);
            EXPECT_TRUE(rep.passes(1e-25)) << "M = " << M << " n = " << n << " " << rep.max_all();
        }
    }
}

TEST(Garnier, ExponentTable) {
    auto lat = random_lattice(35, 3, 2);
    auto e = exponent_table(lat.w, 2);
    EXPECT_LT(rel_err(e.theta[0], C(C(2) - lat.w.rho[0])), 1e-35);
    EXPECT_LT(rel_err(e.theta[1], C(-lat.w.rho[1])), 1e-35);
    EXPECT_LT(rel_err(e.theta_inf, C(C(3) + lat.w.m[0])), 1e-35);
    EXPECT_LT(rel_err(e.accessory, C(-C(2) * (C(1) + lat.w.m[0]))), 1e-35);
}

TEST(Garnier, RequiresCanonicalPlacement) {
    WeightSpec s;
    s.placement = Placement::general;
    s.z = {q("1/2", "1/3"), q("-2/5", "1/4"), q("1/5", "-3/5")};
    s.rho = {q("0.3", "0.1"), q("-0.2", "0.25"), q("0.15", "-0.1")};
    auto w = WeightData<R>::from_exact(build_weight(s));
    std::vector<C> seeds{C(R(1) / 2, R(1) / 9), C(R(2) / 3, R(-1) / 7), C(R(1) / 5, R(1) / 3)};
    auto lat = formal_lattice(w, seeds, -1, 2);
    EXPECT_THROW(garnier_point(lat, 1), ConfigError);
}

TEST(Garnier, ContourFamilyIsSingleValued) {
    auto fam = standard_family<R>(1, 2);
    EXPECT_NO_THROW(fam.base());
    fam.rho[1] += C(R(1) / 10);
    EXPECT_THROW(fam.base(), NotSingleValued);
}

TEST(Garnier, HamiltonFlowIsSecondOrder) {
    // 128 bits keep this quick; the 256-bit run is part of the acceptance suite
    auto fam = standard_family<R>(1, 1);
    auto flow = hamilton_flow_check(fam, 1, 1);
    EXPECT_TRUE(flow.has("Ham_qDer"));
    EXPECT_TRUE(flow.has("Ham_pDer"));
    EXPECT_TRUE(flow.passes(1.9)) << flow.min_order();
}

TEST(Deformation, RatesAreSecondOrder) {
    auto fam = standard_family<R>(1, 1);
    auto flow = deformation_check(fam, 1, {C(0), C(1), C(0)});
    for (const char* label : {"rdot", "rCdot", "kdot", "Schlesinger", "AnSE:a", "AnSE:b"}) EXPECT_TRUE(flow.has(label)) << label;
    EXPECT_TRUE(flow.passes(1.9)) << flow.min_order();
}
