//---------------------------------------------------------------------------//
// Copyright (c) 2026 swstab developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "swstab/corpus.hpp"
#include "swstab/model.hpp"

#include <gtest/gtest.h>

using namespace swstab;

namespace {

SwitchedSystem make(const nlohmann::json& j) { return SwitchedSystem::from_json(j); }

nlohmann::json cubic_pair() {
    return {{"dim", 2},
            {"lyapunov", "x1^4 + x2^4"},
            {"modes",
             {{{"name", "f1"}, {"field", {"x2^3", "-x1^3 - 2*x2^3"}}},
              {{"name", "f2"}, {"field", {"-2*x1^3 - x2^3", "x1^3"}}}}}};
}

} // namespace

TEST(SwitchedSystem, ValidatesOriginAndDimensions) {
    EXPECT_NO_THROW(make(cubic_pair()));
    // field not vanishing at the origin
    nlohmann::json bad = cubic_pair();
    bad["modes"][0]["field"][0] = "x2^3 + 1";
    EXPECT_THROW(make(bad), std::invalid_argument);
    // V not vanishing at the origin
    bad = cubic_pair();
    bad["lyapunov"] = "x1^4 + 1";
    EXPECT_THROW(make(bad), std::invalid_argument);
    // wrong component count
    bad = cubic_pair();
    bad["modes"][0]["field"] = {"x2^3"};
    EXPECT_THROW(make(bad), std::invalid_argument);
    // missing keys
    EXPECT_THROW(make(nlohmann::json{{"dim", 2}}), std::invalid_argument);
}

TEST(SwitchedSystem, TranscendentalOriginCheckUsesTolerance) {
    // x1*cos(x1) vanishes at 0; cos(x1) alone does not
    nlohmann::json j{{"dim", 1},
                     {"lyapunov", "x1^2"},
                     {"modes", {{{"name", "m"}, {"field", {"0 - x1*cos(x1)"}}}}}};
    EXPECT_NO_THROW(make(j));
    j["modes"][0]["field"][0] = "cos(x1)";
    EXPECT_THROW(make(j), std::invalid_argument);
}

TEST(SwitchedSystem, JsonRoundTrip) {
    SwitchedSystem sys = make(cubic_pair());
    SwitchedSystem back = SwitchedSystem::from_json(sys.to_json());
    EXPECT_EQ(back.dim(), 2);
    EXPECT_EQ(back.mode_count(), 2);
    EXPECT_EQ(back.lyapunov().poly(), sys.lyapunov().poly());
    EXPECT_EQ(back.field(1).components[0].poly(), sys.field(1).components[0].poly());
}

TEST(Certify, CubicPairPasses) {
    SwitchedSystem sys = make(cubic_pair());
    auto rep = certify_weak_lyapunov(sys, 2.0, 10000, 1e-12);
    EXPECT_TRUE(rep.pass);
    ASSERT_EQ(rep.per_mode.size(), 2u);
    for (const auto& m : rep.per_mode) EXPECT_LE(m.worst_value, 1e-12);
}

TEST(Certify, UnstableModeFailsWithWitness) {
    nlohmann::json j{{"dim", 1},
                     {"lyapunov", "x1^2"},
                     {"modes", {{{"name", "up"}, {"field", {"x1"}}}}}};
    auto rep = certify_weak_lyapunov(make(j), 1.0, 2000, 1e-12);
    EXPECT_FALSE(rep.pass);
    ASSERT_FALSE(rep.per_mode[0].worst_point.empty());
    double x = rep.per_mode[0].worst_point[0];
    EXPECT_GT(2.0 * x * x, 0.0);
    EXPECT_NEAR(rep.per_mode[0].worst_value, 2.0 * x * x, 1e-12);
}

TEST(Certify, ZeroFieldWorstValueZero) {
    nlohmann::json j{{"dim", 2},
                     {"lyapunov", "x1^2 + x2^2"},
                     {"modes", {{{"name", "zero"}, {"field", {"0", "0"}}}}}};
    auto rep = certify_weak_lyapunov(make(j), 1.0, 500, 1e-12);
    EXPECT_TRUE(rep.pass);
    EXPECT_DOUBLE_EQ(rep.per_mode[0].worst_value, 0.0);
}

TEST(Certify, DeterministicGivenSeed) {
    SwitchedSystem sys = make(cubic_pair());
    auto a = certify_weak_lyapunov(sys, 2.0, 3000, 1e-12, 17);
    auto b = certify_weak_lyapunov(sys, 2.0, 3000, 1e-12, 17);
    EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
}

TEST(PositiveDefinite, PassAndFailCases) {
    EXPECT_TRUE(positive_definite_check(Expr::parse("x1^4 + 2*x2^2", 2), 1.0, 5000).pass);

    auto indef = positive_definite_check(Expr::parse("x1^2 - x2^2", 2), 1.0, 5000);
    ASSERT_FALSE(indef.pass);
    EXPECT_GE(std::abs(indef.witness[1]), std::abs(indef.witness[0]));

    // semidefinite: vanishes on the x2 axis, caught by hyperplane samples
    auto semi = positive_definite_check(Expr::parse("x1^2", 2), 1.0, 5000);
    ASSERT_FALSE(semi.pass);
    EXPECT_NEAR(semi.witness[0], 0.0, 1e-15);
}

TEST(Corpus, EverySystemCertifiesAtPaperScale) {
    for (const auto& c : builtin_corpus()) {
        SwitchedSystem sys = c.build();
        auto rep = certify_weak_lyapunov(sys, 2.0, 10000, 1e-12);
        EXPECT_TRUE(rep.pass) << c.name;
        auto pd = positive_definite_check(sys.lyapunov(), 2.0, 10000);
        EXPECT_TRUE(pd.pass) << c.name;
    }
}
