#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "vw/error.hpp"
#include "vw/linalg.hpp"

using namespace vw;

TEST(Field2D, RowMajorLayout)
{
    Field2D f(2, 3);
    f(1, 2) = 5.0;
    EXPECT_EQ(f.data()[5], 5.0);
    EXPECT_EQ(f.row(1)[2], 5.0);
}

TEST(Thomas, SolvesRandomDiagonallyDominantSystem)
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t n = 50;
    Tridiagonal m(n);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        m.lower[i] = u(rng);
        m.upper[i] = u(rng);
        m.diag[i] = 3.0 + u(rng);
        x[i] = u(rng);
    }
    const auto rhs = m.apply(x);
    const auto y = solve_tridiagonal(m, rhs);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y[i], x[i], 1e-12);
}

TEST(Thomas, ZeroPivotIsSingular)
{
    Tridiagonal m(3);
    m.diag = {0.0, 1.0, 1.0};
    std::vector<double> rhs(3, 1.0);
    try {
        solve_tridiagonal(m, rhs);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularSystem);
    }
}

TEST(Dense, PartialPivotingHandlesZeroLeadingEntry)
{
    Field2D a(2, 2);
    a(0, 0) = 0.0;
    a(0, 1) = 1.0;
    a(1, 0) = 2.0;
    a(1, 1) = 1.0;
    const auto x = solve_dense(a, {1.0, 4.0});
    EXPECT_NEAR(x[0], 1.5, 1e-15);
    EXPECT_NEAR(x[1], 1.0, 1e-15);
}

TEST(Dense, SingularMatrixThrows)
{
    Field2D a(2, 2, 1.0);
    EXPECT_THROW(solve_dense(a, {1.0, 2.0}), Error);
}
