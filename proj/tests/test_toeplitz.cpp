#include <gtest/gtest.h>

#include "common.hpp"

using namespace biorth;
using namespace biorth::testing;

TEST(Toeplitz, LuAgreesWithCofactorExpansion) {
    auto lat = random_lattice(3, 3, 6);
    for (int n = 1; n <= 6; ++n) {
        auto T = toeplitz_matrix(lat.ms, n);
        EXPECT_LT(rel_err(det_lu(T), det_cofactor(T)), 1e-33) << "n = " << n;
    }
}

TEST(Toeplitz, FirstPolynomialFromMoments) {
    auto lat = random_lattice(4, 3, 2);
    const auto& L1 = lat.L[1];
    // phi_1 / kappa_1 = z - w_{-1} / w_0 in the bordered-determinant convention
    EXPECT_LT(rel_err(C(L1.phi[0] / L1.kappa), C(-lat.ms[-1] / lat.ms[0])), 1e-35);
    EXPECT_LT(rel_err(L1.I, lat.ms[0]), 1e-35);
}

TEST(Toeplitz, DeterminantIdentitiesHold) {
    for (int M : {3, 4, 5}) {
        auto lat = random_lattice(100 + std::uint64_t(M), M, 8);
        auto rep = check_oracle(lat.ms, lat.L, 8);
        rep.append(check_eps_determinants(lat.ms, lat.L, 8));
        for (const char* label : {"I0", "l:kappa", "l:lambda", "Cas:a", "Cas:b", "Cas:c", "Geronimus", "orthog:a",
                                  "orthog:b", "onorm", "epsexp:a", "epsexp:b", "epsRep", "epsSRep"}) {
            ASSERT_TRUE(rep.has(label)) << label;
            EXPECT_LT(rep.max_of(label), 1e-25) << label << " M = " << M;
        }
    }
}

TEST(Toeplitz, GaugeFlipLeavesResidualsInvariant) {
    auto lat = random_lattice(9, 3, 4);
    auto flipped = flip_gauges(lat, 0b1010);
    auto a = spectral_report(lat, 1, 3), b = spectral_report(flipped, 1, 3);
    EXPECT_LT(a.max_all(), 1e-25);
    EXPECT_LT(b.max_all(), 1e-25);
}

TEST(Toeplitz, SingularMatrixIsReported) {
    // w_k = 1 for all k: every 2 x 2 Toeplitz minor vanishes
    MomentSequence<R> ms;
    ms.kmin = -6;
    ms.kmax = 6;
    ms.vals.assign(13, C(1));
    EXPECT_THROW(bops_levels(ms, 3, 4), DegenerateDeterminant);
}
