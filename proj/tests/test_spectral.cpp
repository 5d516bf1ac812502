#include <gtest/gtest.h>

#include "common.hpp"

using namespace biorth;
using namespace biorth::testing;

namespace {

void expect_family(const Report& rep, const std::string& prefix, const std::vector<std::string>& tags, double tol) {
    for (const auto& t : tags) {
        const std::string label = prefix + t;
        ASSERT_TRUE(rep.has(label)) << label;
        EXPECT_LT(rep.max_of(label), tol) << label;
    }
}

}  // namespace

TEST(Spectral, CoefficientsRespectDegreeBound) {
    auto lat = random_lattice(21, 4, 6);
    auto rep = check_degree_bounds(lat);
    EXPECT_LT(rep.max_of("deg:above"), 1e-30);
    EXPECT_LT(rep.max_of("deg:below"), 1e-30);
    auto init = check_initial_members(lat);
    EXPECT_LT(init.max_all(), 1e-30);
}

TEST(Spectral, LinearAndBilinearRecurrences) {
    auto lat = random_lattice(22, 3, 6);
    Report rep;
    for (int n = 1; n <= 6; ++n) {
        rep.append(check_linear(lat, n));
        rep.append(check_bilinear(lat, n));
    }
    expect_family(rep, "rrCf:", {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k"}, 1e-25);
    expect_family(rep, "OTeq:", {"a", "b", "c", "d", "e"}, 1e-25);
}

TEST(Spectral, EndpointExpansionsAndResidues) {
    auto lat = random_lattice(23, 5, 5);
    Report rep;
    for (int n = 1; n <= 5; ++n) {
        rep.append(check_endpoints(lat, n));
        rep.append(check_residues(lat, n));
        rep.append(check_transition_forms(lat, n));
    }
    expect_family(rep, "", {"Thexp:a", "Thexp:b", "Omexp:a", "Omexp:b", "ThSexp:a", "ThSexp:b", "OmSexp:a", "OmSexp:b"}, 1e-25);
    expect_family(rep, "", {"AnPF", "An_res0", "An_resInfty", "trace", "Tform:a", "Tform:b"}, 1e-25);
}

TEST(Spectral, SummationIdentities) {
    auto lat = random_lattice(24, 4, 4);
    Report rep;
    for (int n = 1; n <= 4; ++n) {
        rep.append(check_sums(lat, n));
        rep.append(check_garnier_sums(lat, n));
    }
    EXPECT_TRUE(rep.passes(1e-25)) << rep.max_all();
}

TEST(Spectral, ScalarOdeAndExponents) {
    auto lat = random_lattice(25, 3, 4);
    Report rep;
    for (int n = 0; n <= 4; ++n) rep.append(check_scalar_ode(lat, n));
    expect_family(rep, "", {"ODE:a", "ODE:b", "p1:res", "p2:res", "p2:inf"}, 1e-25);
}

TEST(Spectral, GeneralPlacement) {
    // no singularity at 0 or 1; the origin becomes an apparent point
    WeightSpec s;
    s.placement = Placement::general;
    s.z = {q("1/2", "1/3"), q("-2/5", "1/4"), q("1/5", "-3/5")};
    s.rho = {q("0.3", "0.1"), q("-0.2", "0.25"), q("0.15", "-0.1")};
    auto w = WeightData<R>::from_exact(build_weight(s));
    std::vector<C> seeds{C(R(1) / 2, R(1) / 9), C(R(2) / 3, R(-1) / 7), C(R(1) / 5, R(1) / 3)};
    auto lat = formal_lattice(w, seeds, -1, 4);
    auto rep = spectral_report(lat, 0, 4);
    EXPECT_TRUE(rep.passes(1e-25)) << rep.max_all();
}
