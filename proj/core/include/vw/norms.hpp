#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "vw/fdsolver.hpp"
#include "vw/problem.hpp"

namespace vw {

/// Norms that depend on the trajectory alone. Space integrals use the
/// composite trapezoid rule, time integrals the trapezoid rule over nodes.
struct SolutionNorms {
    double linf_l2 = 0.0;   ///< max_t ||u||_{L2}
    double l2_l2 = 0.0;     ///< ||u||_{L2 L2}
    double l2_h1 = 0.0;     ///< ||u_x||_{L2 L2}
    double linf_h1 = 0.0;   ///< max_t ||u_x||_{L2}
    double dtu_l2 = 0.0;    ///< ||u_t||_{L2 L2}
    double dtu_hneg = 0.0;  ///< ||u_t||_{L2 H^-1}
    double dxx = 0.0;       ///< ||u_xx||_{L2 L2}
};

SolutionNorms solution_norms(const SolutionTrajectory& traj);

/// Coefficient and data norms of an instance that enter the a priori bounds.
struct DataNorms {
    double u0_l2 = 0.0;
    double u0_h10 = 0.0;  ///< ||u0'||_{L2}
    double f_l2l2 = 0.0;
    double g0_h1 = 0.0;   ///< H1(0,T)
    double g1_h1 = 0.0;
    double a_inf = 0.0;
    double a_linf_l2 = 0.0;  ///< max_t ||a(t)||_{L2}
    double dxa_inf = 0.0;
    double dta_inf = 0.0;
    double b_inf = 0.0;
    double dxb_inf = 0.0;
    double q_inf = 0.0;
};

DataNorms data_norms(const RegularizedInstance& inst);

enum class Estimate { Energy, Regularity, BoundaryEnergy, BoundaryRegularity };

std::string_view to_string(Estimate which);

struct EstimateCheck {
    Estimate which = Estimate::Energy;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;  ///< lhs / rhs with the existential constant set to 1
};

struct EnergyReport {
    SolutionNorms norms;
    double weighted = 0.0;  ///< ||sqrt(q) u||_{L2 L2}, q clipped at 0
    double dx_a_dx = 0.0;   ///< ||(a u_x)_x||_{L2 L2}
    double q_clip = 0.0;    ///< largest |q| removed by clipping
    DataNorms data;
    double alpha = 1.0;
    double T = 1.0;

    /// Filled by evaluate_estimates.
    std::vector<EstimateCheck> estimates;

    const EstimateCheck* find(Estimate which) const;
};

EnergyReport energy_norms(const SolutionTrajectory& traj, const RegularizedInstance& inst);

/// Assembles the right-hand side of the chosen a priori bound with C = 1 and
/// returns lhs/rhs. Bounds that list several quantities use the largest one.
EstimateCheck check_estimate(const EnergyReport& report, Estimate which);

/// Runs check_estimate for all four bounds and stores the results.
void evaluate_estimates(EnergyReport& report);

/// Discrete H^-1 norm of v given on the interior nodes of a uniform grid
/// with spacing h: ||D+ w|| where -D-D+ w = v and w vanishes at both ends.
double hneg_norm(std::span<const double> v_interior, double h);

/// ||D+ w||_{L2} over cells for nodal w (including the two end nodes).
double discrete_h1_seminorm(std::span<const double> w, double h);

/// h * sum over interior nodes of v_i w_i.
double discrete_inner(std::span<const double> v_interior, std::span<const double> w_interior,
                      double h);

}  // namespace vw
