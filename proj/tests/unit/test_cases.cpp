#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "vw/cases.hpp"
#include "vw/error.hpp"

using namespace vw;
using namespace vw::testing;

TEST(Cases, SharedDataOfCaseOne)
{
    const auto s = builtin_case(1);
    EXPECT_EQ(s.T, 1.0);
    EXPECT_EQ(s.alpha, 1.0);
    EXPECT_TRUE(s.is_regular());
    EXPECT_TRUE(s.homogeneous_boundary());
    const auto inst = build_instance(s, unit_net(), 1.0, {40, 40}, sampled());
    // exp(1/((x-0.5)^2 + 0.025)) at the centre and at x = 0.45.
    EXPECT_NEAR(inst.u0[20], std::exp(40.0), 1e-10 * std::exp(40.0));
    EXPECT_NEAR(inst.u0[18], std::exp(1.0 / 0.0275), 1e-10 * std::exp(1.0 / 0.0275));
    for (std::size_t i = 0; i <= 40; ++i) {
        EXPECT_DOUBLE_EQ(inst.a(0, i), 1.0);
        EXPECT_DOUBLE_EQ(inst.b(0, i), 1.0);
        EXPECT_DOUBLE_EQ(inst.q[i], 1.0);
    }
}

TEST(Cases, SingularTermPerCase)
{
    EXPECT_FALSE(builtin_case(1).a.is_singular());
    EXPECT_TRUE(builtin_case(2).a.is_singular());
    EXPECT_TRUE(builtin_case(3).b.is_singular());
    EXPECT_FALSE(builtin_case(3).b.time_independent());
    EXPECT_TRUE(builtin_case(4).q.has_delta());
    EXPECT_TRUE(builtin_case(5).g1.has_delta());
    EXPECT_FALSE(builtin_case(5).homogeneous_boundary());
}

TEST(Cases, Locations)
{
    EXPECT_TRUE(std::isnan(singular_location(1)));
    EXPECT_EQ(singular_location(2), 0.45);
    EXPECT_EQ(singular_location(3), 0.5);
    EXPECT_EQ(singular_location(4), 0.45);
    EXPECT_EQ(singular_location(5), 0.45);
    EXPECT_EQ(singular_location(3, CaseVariant::Figure), 0.25);
    EXPECT_EQ(singular_location(4, CaseVariant::Figure), 0.6);
    EXPECT_EQ(singular_location(5, CaseVariant::Figure), 0.25);
    EXPECT_EQ(singular_location(2, CaseVariant::Figure), 0.45);
}

TEST(Cases, ReactionSpikeSitsAtLocation)
{
    const auto inst = build_instance(builtin_case(4, CaseVariant::Figure), MollifierNet::standard({0.1}),
                                     0.1, {40, 40});
    const auto peak = std::max_element(inst.q.begin(), inst.q.end()) - inst.q.begin();
    EXPECT_EQ(peak, 24);
}

TEST(Cases, UnknownIdThrows)
{
    for (int id : {0, 6, -1}) {
        try {
            builtin_case(id);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::UnknownCase);
        }
    }
    EXPECT_THROW(case_description(9), Error);
    EXPECT_THROW(case_excess(9), Error);
}

TEST(Cases, ExcessReferences)
{
    EXPECT_FALSE(case_excess(1).has_value());
    for (int id : {2, 3, 4}) {
        const auto ex = case_excess(id);
        ASSERT_TRUE(ex.has_value());
        EXPECT_TRUE(ex->subtract);
        EXPECT_TRUE(ex->problem.is_regular());
    }
    const auto ex5 = case_excess(5);
    ASSERT_TRUE(ex5.has_value());
    EXPECT_FALSE(ex5->subtract);
    EXPECT_TRUE(ex5->problem.g1.has_delta());
    const auto inst = build_instance(ex5->problem, unit_net(), 1.0, {40, 40}, sampled());
    for (double v : inst.u0) EXPECT_EQ(v, 0.0);
}

TEST(Cases, Descriptions)
{
    EXPECT_NE(case_description(2).find("delta(x-0.45"), std::string::npos);
    EXPECT_NE(case_description(3, CaseVariant::Figure).find("delta(t-0.25"), std::string::npos);
    EXPECT_NE(case_description(5).find("g1 = delta"), std::string::npos);
}
