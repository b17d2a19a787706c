#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "vw/dist.hpp"
#include "vw/error.hpp"
#include "vw/quadrature.hpp"

using namespace vw;

namespace {

// Independent normalization: 4000-panel Simpson of exp(1/(x^2-1)).
double reference_c()
{
    const int n = 4000;
    const double h = 2.0 / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = -1.0 + i * h;
        const double f = std::abs(x) < 1.0 ? std::exp(1.0 / (x * x - 1.0)) : 0.0;
        s += f * (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0));
    }
    return 1.0 / (s * h / 3.0);
}

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

}  // namespace

TEST(Bump, Values)
{
    const auto b = default_bump();
    EXPECT_NEAR(b.shape(0.0), std::exp(-1.0), 1e-15);
    EXPECT_EQ(b.shape(1.0), 0.0);
    EXPECT_EQ(b.shape(-1.0), 0.0);
    EXPECT_EQ(b.shape(1.5), 0.0);
}

TEST(Bump, NormalizationMatchesQuotedConstant)
{
    const auto net = MollifierNet::standard();
    EXPECT_NEAR(net.normalization(), 2.2523, 1e-4);
    EXPECT_NEAR(net.normalization(), reference_c(), 1e-10);
}

TEST(NormalizeBump, ClosedForms)
{
    EXPECT_NEAR(normalize_bump([](double x) { return std::abs(x) <= 0.5 ? 1.0 : 0.0; }), 1.0, 1e-9);
    EXPECT_NEAR(normalize_bump([](double x) { return std::abs(x) < 1 ? 1 - x * x : 0.0; }), 0.75, 1e-12);
    EXPECT_NEAR(MollifierNet(cosine_bump(), {0.5}).normalization(), 1.0, 1e-12);
}

TEST(NormalizeBump, ZeroMass)
{
    EXPECT_EQ(code_of([] { normalize_bump([](double) { return 0.0; }); }), ErrorCode::ZeroMass);
}

TEST(MollifierNet, KernelHasUnitMassForEveryEpsilon)
{
    const auto net = MollifierNet::standard();
    for (double eps : net.epsilons()) {
        const double m = quad::adaptive_simpson([&](double x) { return net.kernel(x, eps); }, -eps, eps, 1e-14);
        EXPECT_NEAR(m, 1.0, 1e-8) << eps;
    }
}

TEST(MollifierNet, RejectsBadLadders)
{
    EXPECT_EQ(code_of([] { MollifierNet::standard({0.1, 0.2}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { MollifierNet::standard({1.5}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { MollifierNet::standard({0.1, 0.1}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { MollifierNet::standard({0.0}); }), ErrorCode::InvalidArgument);
}

TEST(MollifierNet, CumulativeIsCdf)
{
    const auto net = MollifierNet::standard();
    EXPECT_EQ(net.cumulative(-2.0), 0.0);
    EXPECT_EQ(net.cumulative(2.0), 1.0);
    EXPECT_NEAR(net.cumulative(0.0), 0.5, 1e-12);
    EXPECT_NEAR(net.cumulative(0.3) + net.cumulative(-0.3), 1.0, 1e-12);
}

TEST(DistExpr, SumIsFlattened)
{
    const auto s = DistExpr::sum({DistExpr::constant(1.0),
                                  DistExpr::sum({DistExpr::delta(0.3), DistExpr::delta(0.6)})});
    const auto* sum = std::get_if<expr::Sum>(&s.node());
    ASSERT_NE(sum, nullptr);
    EXPECT_EQ(sum->terms.size(), 3u);
    for (const auto& t : sum->terms) EXPECT_FALSE(std::holds_alternative<expr::Sum>(t.node()));
    EXPECT_TRUE(s.is_singular());
    EXPECT_FALSE(s.is_regular());
}

TEST(DistExpr, SingleTermSumCollapses)
{
    const auto s = DistExpr::sum({DistExpr::delta(0.5)});
    EXPECT_TRUE(std::holds_alternative<expr::Delta>(s.node()));
}

TEST(Mollify, DeltaPeak)
{
    const auto net = MollifierNet::standard({0.1});
    const double expected = net.normalization() * std::exp(-1.0) / 0.1;
    // The rounded figure 8.2862 is within 1e-4 relative of the oracle.
    EXPECT_NEAR(expected, 8.2862, 1e-4 * 8.2862);
    const double x[] = {0.45};
    const auto v = mollify_at(DistExpr::delta(0.45), net, 0.1, {0.0, 1.0}, x);
    EXPECT_NEAR(v[0], expected, 1e-12);
}

TEST(Mollify, ConstantIsFixedPoint)
{
    const auto net = MollifierNet::standard({0.05});
    const double x[] = {0.5, 0.0, 1.0};
    const auto v = mollify_at(DistExpr::constant(1.0), net, 0.05, {0.0, 1.0}, x);
    for (double y : v) EXPECT_NEAR(y, 1.0, 1e-10);
}

TEST(Mollify, SumOfConstantAndDelta)
{
    const auto net = MollifierNet::standard({0.1});
    const double x[] = {0.45};
    const auto v = mollify_at(DistExpr::sum({DistExpr::constant(1.0), DistExpr::delta(0.45)}), net, 0.1,
                              {0.0, 1.0}, x);
    EXPECT_NEAR(v[0], 1.0 + net.normalization() * std::exp(-1.0) / 0.1, 1e-12);
}

TEST(Mollify, SiftingIsExact)
{
    const auto net = MollifierNet::standard({0.05});
    const auto f = mollify(DistExpr::delta(0.3, 2.5), net, 0.05, Grid1D{0.0, 1.0, 200});
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        EXPECT_NEAR(f.values[i], 2.5 * net.kernel(f.grid.point(i) - 0.3, 0.05), 1e-12);
    }
}

TEST(Mollify, Linearity)
{
    const auto net = MollifierNet::standard({0.1});
    const Grid1D g{0.0, 1.0, 100};
    const auto A = DistExpr::smooth(SmoothFn::sine(1.0, 2.0));
    const auto B = DistExpr::heaviside(0.4, 0.5, 2.0);
    const auto sum = mollify(DistExpr::sum({A, B}), net, 0.1, g);
    const auto a = mollify(A, net, 0.1, g);
    const auto b = mollify(B, net, 0.1, g);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(sum.values[i], a.values[i] + b.values[i], 1e-12);
}

TEST(Mollify, MassIsPreserved)
{
    const auto net = MollifierNet::standard();
    std::vector<double> pts;
    const int n = 8000;
    for (int i = 0; i <= n; ++i) pts.push_back(-0.5 + 2.0 * i / n);
    for (double eps : net.epsilons()) {
        if (eps < 0.01) continue;
        const auto d = mollify_at(DistExpr::delta(0.45, 1.5), net, eps, {0.0, 1.0}, pts);
        EXPECT_NEAR(quad::trapezoid(d, 2.0 / n), 1.5, 1e-8) << eps;
        const auto h = mollify_at(DistExpr::heaviside(0.5, 0.0, 1.0), net, eps, {0.0, 1.0}, pts);
        EXPECT_NEAR(quad::trapezoid(h, 2.0 / n), 0.5, 1e-8) << eps;
    }
}

TEST(Mollify, SupportGrowsByEpsilon)
{
    const double eps = 0.05;
    const auto net = MollifierNet::standard({eps});
    std::vector<double> pts;
    for (int i = 0; i <= 400; ++i) pts.push_back(-0.5 + 2.0 * i / 400);
    const auto v = mollify_at(DistExpr::heaviside(0.5, 0.0, 1.0), net, eps, {0.0, 1.0}, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i] <= 0.5 - eps || pts[i] >= 1.0 + eps) {
            EXPECT_EQ(v[i], 0.0) << pts[i];
        }
    }
}

TEST(Mollify, PositivityFloor)
{
    const auto net = MollifierNet::standard();
    for (double eps : net.epsilons()) {
        const auto f = mollify(DistExpr::sum({DistExpr::constant(1.0), DistExpr::delta(0.45)}), net, eps,
                               Grid1D{0.0, 1.0, 400});
        for (double v : f.values) EXPECT_GE(v, 1.0);
    }
}

TEST(Mollify, SmoothConvolutionOfLinearIsExact)
{
    const auto net = MollifierNet::standard({0.1});
    const double x[] = {0.2, 0.5, 0.9};
    const auto v = mollify_at(DistExpr::smooth(SmoothFn::polynomial({1.0, 2.0})), net, 0.1, {0.0, 1.0}, x);
    // Exact up to the Simpson error of the kernel mass.
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(v[i], 1.0 + 2.0 * x[i], 1e-6);
}

TEST(Mollify, SampleModeEvaluatesDirectly)
{
    const auto net = MollifierNet::standard({0.1});
    const double x[] = {0.3};
    MollifyOptions o;
    o.smooth = SmoothHandling::Sample;
    const auto v = mollify_at(DistExpr::smooth(SmoothFn::bell(0.5, 0.025)), net, 0.1, {0.0, 1.0}, x, o);
    EXPECT_DOUBLE_EQ(v[0], std::exp(1.0 / (0.04 + 0.025)));
}

TEST(Mollify, Errors)
{
    const auto net = MollifierNet::standard({0.1});
    const Grid1D g{0.0, 1.0, 40};
    EXPECT_EQ(code_of([&] { mollify(DistExpr{}, net, 0.1, g); }), ErrorCode::UnsupportedVariant);
    EXPECT_EQ(code_of([&] { mollify(DistExpr::delta(0.5), net, 0.2, g); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([&] { mollify(DistExpr::delta(1.0), net, 0.1, g); }), ErrorCode::InvalidArgument);
}

TEST(Norms, LinfAndL2)
{
    SampledField1D zero{Grid1D{0.0, 1.0, 10}, std::vector<double>(11, 0.0), 0.1, nullptr};
    EXPECT_EQ(linf_norm(zero), 0.0);
    EXPECT_EQ(l2_norm(zero), 0.0);
    SampledField1D two{Grid1D{0.0, 1.0, 100}, std::vector<double>(101, 2.0), 0.1, nullptr};
    EXPECT_NEAR(l2_norm(two), 2.0, 1e-6);
    std::vector<double> w(101, 0.25);
    EXPECT_NEAR(l2_norm(two, w), 1.0, 1e-12);
}

TEST(Norms, DeltaPeakScalesLikeOneOverEpsilon)
{
    const auto net = MollifierNet::standard();
    const double c = net.normalization() * std::exp(-1.0);
    for (double eps : net.epsilons()) {
        // 0.5 is a grid node for any even cell count.
        const auto f = mollify(DistExpr::delta(0.5), net, eps, Grid1D{0.0, 1.0, 2000});
        EXPECT_NEAR(linf_norm(f) * eps, c, 1e-6 * c) << eps;
    }
}
