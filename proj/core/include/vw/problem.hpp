#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vw/dist.hpp"
#include "vw/error.hpp"
#include "vw/linalg.hpp"

namespace vw {

/// c_t(t) * c_x(x); at most one of the two factors may be singular.
struct SeparableTerm {
    DistExpr time = DistExpr::constant(1.0);
    DistExpr space = DistExpr::constant(1.0);
};

/// Finite sum of separable products over [0,T] x [0,1]. An empty sum is zero.
struct SpaceTimeExpr {
    std::vector<SeparableTerm> terms;

    static SpaceTimeExpr zero() { return {}; }
    static SpaceTimeExpr in_space(DistExpr space);
    static SpaceTimeExpr in_time(DistExpr time);
    static SpaceTimeExpr product(DistExpr time, DistExpr space);

    bool is_zero() const noexcept { return terms.empty(); }
    bool is_singular() const;
    bool is_regular() const;
    bool time_independent() const;

    SpaceTimeExpr operator+(const SpaceTimeExpr& other) const;
    friend SpaceTimeExpr operator*(double factor, const SpaceTimeExpr& e);
};

/// Data of  u_t - (a u_x)_x + b u_x + q u = f  on [0,T] x (0,1),
/// u(0,x) = u0(x), u(t,0) = g0(t), u(t,1) = g1(t).
struct ProblemSpec {
    SpaceTimeExpr a = SpaceTimeExpr::in_space(DistExpr::constant(1.0));
    SpaceTimeExpr b = SpaceTimeExpr::zero();
    DistExpr q = DistExpr::constant(0.0);
    SpaceTimeExpr f = SpaceTimeExpr::zero();
    DistExpr u0 = DistExpr::constant(0.0);
    DistExpr g0 = DistExpr::constant(0.0);
    DistExpr g1 = DistExpr::constant(0.0);
    double T = 1.0;
    double alpha = 1.0;

    /// True when every component is built from Constant/Smooth terms only.
    bool is_regular() const;
    bool homogeneous_boundary() const;

    /// Multiplies u0, f, g0, g1 by `factor` (the solution scales with it).
    ProblemSpec scaled_data(double factor) const;
};

struct GridSpec {
    std::size_t nx = 64;
    std::size_t nt = 64;
    bool operator==(const GridSpec&) const = default;
};

/// Chooses the grid for each epsilon. Unless `fixed` is set, the grid keeps
/// h <= eps/cells_per_eps and tau <= eps/cells_per_eps and rounds the counts
/// up to a multiple of `multiple` so that the singular locations of the
/// built-in cases (and the default snapshot times) are grid nodes.
struct GridPolicy {
    std::size_t min_nx = 40;
    std::size_t min_nt = 40;
    double cells_per_eps = 4.0;
    std::size_t multiple = 40;
    std::optional<GridSpec> fixed;

    GridSpec for_epsilon(double eps, double T) const;
    static GridPolicy fixed_grid(GridSpec grid);
};

/// Regular fields are sampled directly by default; with Convolve they are
/// mollified like the singular terms (used by consistency and
/// net-comparison experiments).
struct InstanceOptions {
    SmoothHandling smooth = SmoothHandling::Sample;
};

/// Grid-sampled smooth data of the regularized problem for one epsilon.
/// Space-time fields are indexed (time node n, space node i).
struct RegularizedInstance {
    double epsilon = 1.0;
    double T = 1.0;
    double alpha = 1.0;
    std::size_t nx = 0;
    std::size_t nt = 0;
    double h = 0.0;
    double tau = 0.0;

    Field2D a;
    Field2D b;
    Field2D f;
    std::vector<double> q;
    std::vector<double> u0;
    std::vector<double> g0;
    std::vector<double> g1;

    bool a_time_independent = false;
    bool b_time_independent = false;

    Grid1D space_grid() const { return {0.0, 1.0, nx}; }
    Grid1D time_grid() const { return {0.0, T, nt}; }
    double x(std::size_t i) const { return space_grid().point(i); }
    double t(std::size_t n) const { return time_grid().point(n); }

    bool operator==(const RegularizedInstance&) const = default;
};

struct ValidationIssue {
    ErrorCode code;
    double epsilon;
    std::string message;
};

struct ValidationReport {
    std::vector<double> epsilons_checked;
    double min_a_largest_eps = 0.0;
    double min_a_smallest_eps = 0.0;
    std::vector<ValidationIssue> issues;
    std::vector<std::string> warnings;

    bool ok() const noexcept { return issues.empty(); }
    /// Throws the first issue as an Error.
    void throw_if_invalid() const;
    std::string summary() const;
};

/// Checks ellipticity (a_eps >= alpha) at the largest and smallest epsilon,
/// finiteness of all sampled fields, the coupling h <= eps/4, tau <= eps/4
/// for every epsilon of the net, and warns on cell Peclet numbers above 1.
ValidationReport validate(const ProblemSpec& spec, const MollifierNet& net,
                          const GridPolicy& grids, InstanceOptions options = {});
ValidationReport validate(const ProblemSpec& spec, const MollifierNet& net, GridSpec grid,
                          InstanceOptions options = {});

/// Builds the regularized instance. Throws EllipticityViolated or
/// ResolutionInsufficient when the instance would be invalid.
RegularizedInstance build_instance(const ProblemSpec& spec, const MollifierNet& net,
                                   double epsilon, GridSpec grid, InstanceOptions options = {});

/// Boundary lifting psi(t,x) = (1-x) g0(t) + x g1(t) of an instance.
struct Lifting {
    std::size_t nx = 0;
    std::size_t nt = 0;
    std::vector<double> g0;
    std::vector<double> g1;
    std::vector<double> dg0;  ///< g0' on the time grid
    std::vector<double> dg1;

    double psi(std::size_t n, double x) const { return (1.0 - x) * g0[n] + x * g1[n]; }
    double dpsi_dx(std::size_t n) const { return g1[n] - g0[n]; }
    double dpsi_dt(std::size_t n, double x) const { return (1.0 - x) * dg0[n] + x * dg1[n]; }
    Field2D psi_field() const;
};

struct LiftResult {
    Lifting lifting;
    Field2D f_tilde;
    std::vector<double> w0;
};

/// f_tilde = f - (1-x) g0' - x g1' + (a_x - b)(g1 - g0) - q((1-x) g0 + x g1),
/// w0 = u0 - psi(0, .). Time derivatives by centred differences (second-order
/// one-sided at the ends), a_x by centred differences.
LiftResult lift(const RegularizedInstance& instance);

/// Copy of `instance` with source f_tilde, initial datum w0 and zero
/// boundary data; its solution w gives u = w + psi.
RegularizedInstance homogenized(const RegularizedInstance& instance, const LiftResult& lifted);

/// Second-order finite-difference derivative of uniformly sampled values.
std::vector<double> derivative(std::span<const double> values, double step);

}  // namespace vw
