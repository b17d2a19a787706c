#include <gtest/gtest.h>

#include <cmath>

#include "vw/cases.hpp"
#include "vw/error.hpp"
#include "vw/problem.hpp"

using namespace vw;

namespace {

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no exception";
    return ErrorCode::IoError;
}

ProblemSpec with_a(DistExpr a)
{
    ProblemSpec s;
    s.a = SpaceTimeExpr::in_space(std::move(a));
    return s;
}

}  // namespace

TEST(GridPolicy, CouplesGridToEpsilon)
{
    GridPolicy p;
    EXPECT_EQ(p.for_epsilon(0.1, 1.0), (GridSpec{40, 40}));
    EXPECT_EQ(p.for_epsilon(0.05, 1.0), (GridSpec{80, 80}));
    EXPECT_EQ(p.for_epsilon(0.031, 1.0), (GridSpec{160, 160}));
    EXPECT_EQ(p.for_epsilon(0.003, 1.0), (GridSpec{1360, 1360}));
    for (double e : MollifierNet::default_ladder()) {
        const auto g = p.for_epsilon(e, 1.0);
        EXPECT_LE(1.0 / g.nx, e / 4.0 * (1 + 1e-12));
        EXPECT_EQ(g.nx % 40, 0u);
    }
    EXPECT_EQ(GridPolicy::fixed_grid({64, 32}).for_epsilon(0.001, 1.0), (GridSpec{64, 32}));
}

TEST(Validate, ConstantCoefficientPasses)
{
    const auto r = validate(with_a(DistExpr::constant(1.0)), MollifierNet::standard(), GridPolicy{});
    EXPECT_TRUE(r.ok()) << r.summary();
}

TEST(Validate, PositiveDeltaPasses)
{
    const auto r = validate(builtin_case(2), MollifierNet::standard(), GridPolicy{});
    EXPECT_TRUE(r.ok()) << r.summary();
    EXPECT_NEAR(r.min_a_largest_eps, 1.0, 1e-12);
}

TEST(Validate, NegativeDeltaBreaksEllipticity)
{
    const auto spec = with_a(DistExpr::sum({DistExpr::constant(1.0), DistExpr::delta(0.45, -2.0)}));
    const auto r = validate(spec, MollifierNet::standard({0.1}), GridPolicy{});
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.issues.front().code, ErrorCode::EllipticityViolated);
    const double peak = MollifierNet::standard({0.1}).normalization() * std::exp(-1.0) / 0.1;
    EXPECT_NEAR(r.min_a_largest_eps, 1.0 - 2.0 * peak, 1e-9);
    EXPECT_EQ(code_of([&] { build_instance(spec, MollifierNet::standard({0.1}), 0.1, {40, 40}); }),
              ErrorCode::EllipticityViolated);
}

TEST(Validate, CoarseGridIsRejected)
{
    const auto r = validate(builtin_case(1), MollifierNet::standard({0.1}), GridSpec{20, 40});
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.issues.front().code, ErrorCode::ResolutionInsufficient);
    EXPECT_EQ(code_of([] { build_instance(builtin_case(1), MollifierNet::standard({0.1}), 0.1, {40, 39}); }),
              ErrorCode::ResolutionInsufficient);
}

TEST(Validate, PecletWarning)
{
    ProblemSpec s;
    s.b = SpaceTimeExpr::in_space(DistExpr::constant(200.0));
    const auto r = validate(s, MollifierNet::standard({0.1}), GridSpec{40, 40});
    EXPECT_TRUE(r.ok());
    EXPECT_FALSE(r.warnings.empty());
}

TEST(BuildInstance, CaseOneIsConstant)
{
    const auto inst = build_instance(builtin_case(1), MollifierNet::standard({0.1}), 0.1, {40, 40});
    for (double v : inst.a.data()) EXPECT_EQ(v, 1.0);
    for (double v : inst.b.data()) EXPECT_EQ(v, 1.0);
    for (double v : inst.q) EXPECT_EQ(v, 1.0);
    EXPECT_DOUBLE_EQ(inst.h, 1.0 / 40);
    EXPECT_DOUBLE_EQ(inst.tau, 1.0 / 40);
    EXPECT_TRUE(inst.a_time_independent);
}

TEST(BuildInstance, CaseTwoHasSinglePeakAtSingularPoint)
{
    const auto inst = build_instance(builtin_case(2), MollifierNet::standard({0.05}), 0.05, {80, 80});
    const auto row = inst.a.row(0);
    const auto peak = std::max_element(row.begin(), row.end()) - row.begin();
    EXPECT_NEAR(inst.x(static_cast<std::size_t>(peak)), 0.45, 1e-12);
    int maxima = 0;
    for (std::size_t i = 1; i + 1 < row.size(); ++i) maxima += row[i] > row[i - 1] && row[i] > row[i + 1];
    EXPECT_EQ(maxima, 1);
}

TEST(BuildInstance, CaseFiveBoundaryIsShiftedKernel)
{
    const auto net = MollifierNet::standard({0.1});
    const auto inst = build_instance(builtin_case(5), net, 0.1, {40, 40});
    for (std::size_t n = 0; n <= inst.nt; ++n) {
        EXPECT_NEAR(inst.g1[n], net.kernel(inst.t(n) - 0.45, 0.1), 1e-12);
        EXPECT_EQ(inst.g0[n], 0.0);
    }
}

TEST(BuildInstance, Deterministic)
{
    const auto net = MollifierNet::standard();
    const auto a = build_instance(builtin_case(3), net, 0.05, {80, 80});
    const auto b = build_instance(builtin_case(3), net, 0.05, {80, 80});
    EXPECT_TRUE(a == b);
}

TEST(BuildInstance, DoublySingularTermRejected)
{
    ProblemSpec s;
    s.f = SpaceTimeExpr::product(DistExpr::delta(0.5), DistExpr::delta(0.5));
    EXPECT_EQ(code_of([&] { build_instance(s, MollifierNet::standard({0.1}), 0.1, {40, 40}); }),
              ErrorCode::InvalidArgument);
}

TEST(Lift, ZeroBoundaryIsIdentity)
{
    const auto inst = build_instance(builtin_case(2), MollifierNet::standard({0.1}), 0.1, {40, 40});
    const auto L = lift(inst);
    EXPECT_TRUE(L.f_tilde == inst.f);
    EXPECT_EQ(L.w0, inst.u0);
}

TEST(Lift, ConstantBoundaryIsAnnihilated)
{
    ProblemSpec s;
    s.g0 = DistExpr::constant(1.0);
    s.g1 = DistExpr::constant(1.0);
    const auto inst = build_instance(s, MollifierNet::standard({0.1}), 0.1, {40, 40});
    const auto L = lift(inst);
    for (double v : L.f_tilde.data()) EXPECT_NEAR(v, 0.0, 1e-14);
    for (double v : L.lifting.psi_field().data()) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(Lift, LinearInTimeBoundary)
{
    ProblemSpec s;
    s.q = DistExpr::constant(1.0);
    s.g1 = DistExpr::smooth(SmoothFn::polynomial({0.0, 1.0}));
    const auto inst = build_instance(s, MollifierNet::standard({0.1}), 0.1, {40, 40}, {SmoothHandling::Sample});
    const auto L = lift(inst);
    for (std::size_t n = 0; n <= inst.nt; ++n) {
        for (std::size_t i = 0; i <= inst.nx; ++i) {
            const double x = inst.x(i), t = inst.t(n);
            EXPECT_NEAR(L.f_tilde(n, i), -x - x * t, 1e-8);
        }
    }
}

TEST(Lift, EndpointsAndLinearity)
{
    ProblemSpec s;
    s.g0 = DistExpr::smooth(SmoothFn::sine(1.0, 1.0));
    s.g1 = DistExpr::delta(0.5);
    s.b = SpaceTimeExpr::in_space(DistExpr::constant(0.7));
    const auto net = MollifierNet::standard({0.1});
    const auto inst = build_instance(s, net, 0.1, {40, 40});
    const auto L1 = lift(inst);
    const auto inst2 = build_instance(s.scaled_data(2.0), net, 0.1, {40, 40});
    const auto L2 = lift(inst2);
    const auto psi = L1.lifting.psi_field();
    for (std::size_t n = 0; n <= inst.nt; ++n) {
        EXPECT_EQ(psi(n, 0), inst.g0[n]);
        EXPECT_EQ(psi(n, inst.nx), inst.g1[n]);
        for (std::size_t i = 0; i <= inst.nx; ++i) {
            EXPECT_NEAR(L2.f_tilde(n, i), 2.0 * L1.f_tilde(n, i), 1e-12 * (1 + std::abs(L1.f_tilde(n, i))));
        }
    }
}

TEST(Derivative, SecondOrderEverywhere)
{
    std::vector<double> v;
    for (int i = 0; i <= 10; ++i) v.push_back(0.01 * i * i);
    const auto d = derivative(v, 0.1);
    for (int i = 0; i <= 10; ++i) EXPECT_NEAR(d[i], 0.2 * i * 1.0, 1e-12);
}
