#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "oracles.hpp"
#include "vw/cases.hpp"
#include "vw/error.hpp"
#include "vw/sweep.hpp"

using namespace vw;
using namespace vw::testing;

namespace {

ProblemSpec smooth_spec()
{
    ProblemSpec s;
    s.a = SpaceTimeExpr::in_space(DistExpr::sum(
        {DistExpr::constant(1.0), DistExpr::smooth(SmoothFn::sine(0.2, 1.0))}));
    s.q = DistExpr::constant(1.0);
    s.u0 = DistExpr::smooth(SmoothFn::sine(1.0, 1.0));
    return s;
}

}  // namespace

TEST(Pool, WorkerCountHonoursEnvironment)
{
    setenv("VW_THREADS", "3", 1);
    EXPECT_EQ(worker_count(10), 3u);
    EXPECT_EQ(worker_count(2), 2u);
    setenv("VW_THREADS", "1", 1);
    EXPECT_EQ(worker_count(10), 1u);
    unsetenv("VW_THREADS");
    EXPECT_GE(worker_count(10), 1u);
    EXPECT_LE(worker_count(1), 1u);
}

TEST(Pool, RunsEveryJobOnce)
{
    std::vector<std::atomic<int>> hits(50);
    parallel_for(50, [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(Pool, RethrowsLowestIndexFailure)
{
    setenv("VW_THREADS", "4", 1);
    try {
        parallel_for(8, [](std::size_t i) {
            if (i == 5 || i == 2) throw std::runtime_error("job " + std::to_string(i));
        });
        FAIL();
    } catch (const std::runtime_error& e) {
        EXPECT_STREQ(e.what(), "job 2");
    }
    unsetenv("VW_THREADS");
}

TEST(Sweep, SharedGridUsesSmallestEpsilon)
{
    SweepOptions opt;
    const std::vector<double> eps{0.3, 0.1};
    EXPECT_EQ(sweep_grid(opt, eps, 0.3, 1.0), opt.grids.for_epsilon(0.1, 1.0));
    opt.shared_grid = false;
    EXPECT_EQ(sweep_grid(opt, eps, 0.3, 1.0), opt.grids.for_epsilon(0.3, 1.0));
}

TEST(Sweep, RegularCaseIsFlatAndModerate)
{
    const auto report = run_sweep(builtin_case(1), MollifierNet::standard({0.3, 0.1}));
    ASSERT_EQ(report.rows.size(), 2u);
    EXPECT_EQ(report.norms.front().name, "moderateness");
    EXPECT_EQ(report.norms.size(), 8u);
    const auto& m = report.norm("moderateness");
    EXPECT_NEAR(m.values[0], m.values[1], 1e-12 * m.values[0]);
    EXPECT_EQ(report.classification, NetClass::Moderate);
    EXPECT_NEAR(report.exponent, 0.0, 1e-10);
    EXPECT_TRUE(report.trajectories.empty());
    for (const auto& r : report.rows) {
        EXPECT_DOUBLE_EQ(r.moderateness, r.energy.norms.dtu_l2 + r.energy.norms.dxx);
    }
}

TEST(Sweep, ExcessNormsAndTrajectories)
{
    SweepOptions opt;
    opt.keep_trajectories = true;
    opt.excess = case_excess(4);
    const auto report = run_sweep(builtin_case(4), MollifierNet::standard({0.3, 0.1}), opt);
    EXPECT_EQ(report.trajectories.size(), 2u);
    EXPECT_EQ(report.norms.size(), 10u);
    const auto& ex = report.norm("excess_moderateness");
    // The sharper spike adds more.
    EXPECT_GT(ex.values[1], ex.values[0]);
    EXPECT_GT(ex.values[0], 0.0);
    EXPECT_THROW(report.norm("nope"), Error);
}

TEST(Sweep, NotesSingularDriftInTime)
{
    const auto report = run_sweep(builtin_case(3), MollifierNet::standard({0.3, 0.1}));
    bool found = false;
    for (const auto& n : report.notes) found |= n.find("hypothesis violation") != std::string::npos;
    EXPECT_TRUE(found);
}

TEST(Sweep, ErrorsCarryEpsilon)
{
    ProblemSpec s = builtin_case(2);
    s.a = SpaceTimeExpr::in_space(DistExpr::sum({DistExpr::constant(1.0), DistExpr::delta(0.45, -1.0)}));
    try {
        run_sweep(s, MollifierNet::standard({0.3, 0.1}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EllipticityViolated);
        EXPECT_NE(std::string(e.what()).find("eps="), std::string::npos);
    }
}

TEST(MollifiedLinf, DeltaGrowsLikeInverseEpsilon)
{
    const auto net = MollifierNet::standard({0.3, 0.1, 0.05});
    const auto tracked = mollified_linf_sweep(DistExpr::delta(0.5), net);
    EXPECT_EQ(tracked.name, "linf");
    EXPECT_TRUE(tracked.reliable());
    EXPECT_NEAR(tracked.fit.growth(), 1.0, 1e-3);
}

TEST(DifferenceNormsTest, ZeroForIdenticalTrajectories)
{
    const auto inst = heat_instance(32, 32);
    const auto tr = solve(inst, {});
    const auto d = difference_norms(tr, tr);
    EXPECT_EQ(d.linf_l2, 0.0);
    EXPECT_EQ(d.composite, 0.0);
}

TEST(CompareNets, SameNetGivesZeroDifference)
{
    const auto net = MollifierNet::standard({0.3, 0.1});
    const auto cmp = compare_nets(builtin_case(4), net, net);
    for (double v : cmp.composite.values) EXPECT_EQ(v, 0.0);
    EXPECT_EQ(cmp.classification, NetClass::Unclassified);
}

TEST(CompareNets, RejectsMismatchedLadders)
{
    EXPECT_THROW(compare_nets(builtin_case(1), MollifierNet::standard({0.3, 0.1}),
                              MollifierNet::standard({0.3})),
                 Error);
}

TEST(CompareNets, SingularReactionDifferenceDecreases)
{
    const std::vector<double> eps{0.3, 0.1, 0.05};
    const auto cmp = compare_nets(builtin_case(4), MollifierNet::standard(eps), MollifierNet(cosine_bump(), eps));
    EXPECT_TRUE(cmp.linf_decreasing());
    // The delta potential kinks u, so the H2 part grows instead.
    EXPECT_FALSE(cmp.strictly_decreasing());
}

TEST(Consistency, RejectsSingularSpec)
{
    try {
        consistency_test(builtin_case(2), MollifierNet::standard({0.3, 0.1}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedVariant);
    }
}

TEST(Consistency, SmoothSpecConverges)
{
    const auto rep = consistency_test(smooth_spec(), MollifierNet::standard({0.3, 0.1, 0.05}));
    EXPECT_GT(rep.floor, 0.0);
    EXPECT_TRUE(rep.monotone());
    EXPECT_EQ(rep.error.values.size(), 3u);
}
