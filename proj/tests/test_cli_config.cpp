#include <gtest/gtest.h>

#include "run_config.hpp"

using namespace biorth;
using namespace biorth::cli;

namespace {

json base() {
    return json::parse(R"({
        "weight": {"placement": "canonical", "z": [[0, 0], ["3/10", "1/5"], [1, 0]],
                   "rho": [["31/100", "1/10"], ["-9/20", "1/5"], ["27/100", "-3/20"]]},
        "seeds": [["1/2", "-1/5"], ["1/3", "-1/35"]],
        "n_max": 6
    })");
}

}  // namespace

TEST(Config, ParsesExactComplexNumbers) {
    auto c = parse_config(base(), std::nullopt);
    EXPECT_EQ(c.weight.z[1], crat(rational(3, 10), rational(1, 5)));
    EXPECT_EQ(c.seeds[1], crat(rational(1, 3), rational(-1, 35)));
    EXPECT_EQ(c.n_max, 6);
    EXPECT_EQ(c.precision_bits, 128);
    EXPECT_EQ(c.checks.size(), 6u);
    EXPECT_NO_THROW(validate(c));
}

TEST(Config, RejectsBadInput) {
    auto j = base();
    j["n_max"] = 0;
    EXPECT_THROW(validate(parse_config(j, std::nullopt)), ConfigError);
    j = base();
    j["colour"] = "red";
    EXPECT_THROW(parse_config(j, std::nullopt), ConfigError);
    j = base();
    j["checks"] = {"identities", "everything"};
    EXPECT_THROW(parse_config(j, std::nullopt), ConfigError);
    j = base();
    j["weight"]["z"][1] = {0, 0};
    EXPECT_THROW(validate(parse_config(j, std::nullopt)), DuplicateSingularity);
    j = base();
    j.erase("seeds");
    EXPECT_THROW(parse_config(j, std::nullopt), ConfigError);
    j = base();
    j["precision_bits"] = 32;
    EXPECT_THROW(validate(parse_config(j, std::nullopt)), ConfigError);
}

TEST(Config, RandomWeightFollowsSeed) {
    json j{{"random_weight", {{"M", 4}}}};
    auto a = parse_config(j, std::uint64_t(7)), b = parse_config(j, std::uint64_t(7)), c = parse_config(j, std::uint64_t(8));
    EXPECT_EQ(a.weight.z, b.weight.z);
    EXPECT_EQ(a.seeds, b.seeds);
    EXPECT_NE(a.weight.z, c.weight.z);
    EXPECT_EQ(a.weight.z.size(), 4u);
}
