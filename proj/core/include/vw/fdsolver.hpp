#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vw/linalg.hpp"
#include "vw/problem.hpp"

namespace vw {

struct SchemeConfig {
    /// 1 = implicit Euler, 1/2 = Crank-Nicolson. Must lie in [1/2, 1].
    double theta = 1.0;
};

/// Space-time samples u[n][i] ~ u(n*tau, i*h) of one solve.
struct SolutionTrajectory {
    std::size_t nx = 0;
    std::size_t nt = 0;
    double h = 0.0;
    double tau = 0.0;
    double T = 0.0;
    double theta = 1.0;
    Field2D u;

    double wall_seconds = 0.0;
    double max_value = 0.0;
    double min_value = 0.0;
    std::vector<std::string> warnings;

    double x(std::size_t i) const { return i == nx ? 1.0 : static_cast<double>(i) * h; }
    double t(std::size_t n) const { return n == nt ? T : static_cast<double>(n) * tau; }
    /// Nearest time node to t.
    std::size_t time_index(double t) const;
};

/// Conservative three-point discretization of -(a u_x)_x + b u_x + q u at
/// time node n; arithmetic-mean face coefficients, centred drift, identity
/// rows at the two boundary nodes.
Tridiagonal discretize_operator(const RegularizedInstance& inst, std::size_t n);

/// Advances u at time node n to node n+1 with the theta scheme; the
/// boundary entries of the result are g0, g1 at t_{n+1}.
std::vector<double> step(std::span<const double> u_n, const RegularizedInstance& inst,
                         std::size_t n, const SchemeConfig& scheme);

/// Full trajectory over all nt steps. Row 0 holds u0 at interior nodes and
/// the boundary data at the two end nodes.
SolutionTrajectory solve(const RegularizedInstance& inst, const SchemeConfig& scheme = {});

/// Adds the lifting psi to a trajectory of the homogenized problem.
SolutionTrajectory add_lifting(SolutionTrajectory w, const Lifting& lifting);

}  // namespace vw
