#pragma once

// Analytic solutions and instance builders shared by unit and acceptance tests.

#include <cmath>
#include <numbers>
#include <vector>

#include "vw/fdsolver.hpp"
#include "vw/problem.hpp"
#include "vw/quadrature.hpp"

namespace vw::testing {

using std::numbers::pi;

/// Net with one epsilon of 1; grids only need h, tau <= 1/4.
inline MollifierNet unit_net()
{
    return MollifierNet::standard({1.0});
}

inline InstanceOptions sampled()
{
    return {SmoothHandling::Sample};
}

/// a = 1, b = 0, q = 0, u0 = sin(pi x), zero boundary.
inline RegularizedInstance heat_instance(std::size_t nx, std::size_t nt, double T = 1.0)
{
    ProblemSpec s;
    s.T = T;
    s.u0 = DistExpr::smooth(SmoothFn::sine(1.0, 1.0));
    return build_instance(s, unit_net(), 1.0, {nx, nt}, sampled());
}

/// Discrete eigenvalue of -D-D+ for sin(pi x).
inline double discrete_lambda(double h)
{
    const double s = std::sin(pi * h / 2.0);
    return 4.0 / (h * h) * s * s;
}

/// Final-time L2 error against e^{-lambda T} sin(pi x).
inline double heat_error(const SolutionTrajectory& tr, double lambda)
{
    std::vector<double> e(tr.nx + 1);
    const double decay = std::exp(-lambda * tr.T);
    for (std::size_t i = 0; i <= tr.nx; ++i) e[i] = tr.u(tr.nt, i) - decay * std::sin(pi * tr.x(i));
    return std::sqrt(quad::trapezoid_sq(e, tr.h));
}

/// Manufactured solution u(t,x) = e^{-t} sin(pi x) + (1-x)(1+t) + x cos t
/// with a = 1 + x^2/2, b = (1 + sin(pi x))/2, q = 1 + cos(pi x)/2.
struct Manufactured {
    static double u(double t, double x)
    {
        return std::exp(-t) * std::sin(pi * x) + (1 - x) * (1 + t) + x * std::cos(t);
    }
    static double ut(double t, double x)
    {
        return -std::exp(-t) * std::sin(pi * x) + (1 - x) - x * std::sin(t);
    }
    static double ux(double t, double x)
    {
        return pi * std::exp(-t) * std::cos(pi * x) - (1 + t) + std::cos(t);
    }
    static double uxx(double t, double x) { return -pi * pi * std::exp(-t) * std::sin(pi * x); }
    static double a(double x) { return 1 + 0.5 * x * x; }
    static double ax(double x) { return x; }
    static double b(double x) { return 0.5 + 0.5 * std::sin(pi * x); }
    static double q(double x) { return 1 + 0.5 * std::cos(pi * x); }
    static double f(double t, double x)
    {
        return ut(t, x) - (ax(x) * ux(t, x) + a(x) * uxx(t, x)) + b(x) * ux(t, x) + q(x) * u(t, x);
    }

    static ProblemSpec spec()
    {
        ProblemSpec s;
        s.a = SpaceTimeExpr::in_space(DistExpr::smooth(SmoothFn::polynomial({1.0, 0.0, 0.5})));
        s.b = SpaceTimeExpr::in_space(DistExpr::sum(
            {DistExpr::constant(0.5), DistExpr::smooth(SmoothFn::sine(0.5, 1.0))}));
        s.q = DistExpr::sum({DistExpr::constant(1.0), DistExpr::smooth(SmoothFn::cosine(0.5, 1.0))});
        return s;
    }

    /// Instance with f, u0, g0, g1 sampled from the exact solution.
    static RegularizedInstance instance(std::size_t nx, std::size_t nt)
    {
        auto inst = build_instance(spec(), unit_net(), 1.0, {nx, nt}, sampled());
        for (std::size_t n = 0; n <= nt; ++n) {
            const double t = inst.t(n);
            for (std::size_t i = 0; i <= nx; ++i) inst.f(n, i) = f(t, inst.x(i));
            inst.g0[n] = u(t, 0.0);
            inst.g1[n] = u(t, 1.0);
        }
        for (std::size_t i = 0; i <= nx; ++i) inst.u0[i] = u(0.0, inst.x(i));
        return inst;
    }

    /// L2(0,T; L2) error of a trajectory.
    static double error(const SolutionTrajectory& tr)
    {
        std::vector<double> per_t(tr.nt + 1), e(tr.nx + 1);
        for (std::size_t n = 0; n <= tr.nt; ++n) {
            for (std::size_t i = 0; i <= tr.nx; ++i) e[i] = tr.u(n, i) - u(tr.t(n), tr.x(i));
            per_t[n] = std::sqrt(quad::trapezoid_sq(e, tr.h));
        }
        return std::sqrt(quad::trapezoid_sq(per_t, tr.tau));
    }
};

/// Solve through the lifting: homogenize, solve, add psi back.
inline SolutionTrajectory solve_lifted(const RegularizedInstance& inst, SchemeConfig scheme)
{
    const auto lifted = lift(inst);
    return add_lifting(solve(homogenized(inst, lifted), scheme), lifted.lifting);
}

inline double observed_order(double coarse, double fine, double ratio = 2.0)
{
    return std::log(coarse / fine) / std::log(ratio);
}

/// Relative L2L2 difference of two trajectories on the same grid.
inline double relative_l2l2(const SolutionTrajectory& a, const SolutionTrajectory& b)
{
    std::vector<double> dn(a.nt + 1), bn(a.nt + 1), d(a.nx + 1);
    for (std::size_t n = 0; n <= a.nt; ++n) {
        for (std::size_t i = 0; i <= a.nx; ++i) d[i] = a.u(n, i) - b.u(n, i);
        dn[n] = std::sqrt(quad::trapezoid_sq(d, a.h));
        bn[n] = std::sqrt(quad::trapezoid_sq(b.u.row(n), a.h));
    }
    return std::sqrt(quad::trapezoid_sq(dn, a.tau)) / std::sqrt(quad::trapezoid_sq(bn, a.tau));
}

}  // namespace vw::testing
