#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vw/fdsolver.hpp"
#include "vw/fit.hpp"
#include "vw/norms.hpp"
#include "vw/problem.hpp"

namespace vw {

/// R^2 required before a fit is used to classify a net.
inline constexpr double kFitThreshold = 0.98;

/// Number of workers for independent per-epsilon jobs: VW_THREADS when set
/// to a positive integer, otherwise the hardware concurrency; never more
/// than `jobs`.
std::size_t worker_count(std::size_t jobs);

/// Runs job(i) for i in [0, count) on a worker pool. The first exception
/// (lowest index) is rethrown after all workers finished.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& job);

struct TrackedNorm {
    std::string name;
    std::vector<double> values;  ///< one per epsilon
    PowerLawFit fit;
    bool reliable() const noexcept { return fit.valid && fit.r_squared >= kFitThreshold; }
};

enum class NetClass { Unclassified, Moderate, Negligible, Converging };
std::string_view to_string(NetClass c);

struct SweepRow {
    double epsilon = 0.0;
    GridSpec grid;
    EnergyReport energy;
    double moderateness = 0.0;  ///< ||u_t||_{L2L2} + ||u_xx||_{L2L2}
    double excess_moderateness = 0.0;  ///< same for the singular contribution
    double excess_linf_l2 = 0.0;
    double seconds = 0.0;
    std::vector<std::string> warnings;
};

/// How the singular contribution is isolated. With `subtract` the excess is
/// u_eps minus the solution of `problem`; otherwise `problem` is the
/// singular part itself (valid by linearity when only the data differ),
/// which avoids cancellation when that part is tiny next to u_eps.
struct ExcessSpec {
    ProblemSpec problem;
    bool subtract = true;
};

struct SweepOptions {
    GridPolicy grids;
    SchemeConfig scheme;
    InstanceOptions instance;
    /// Solve every epsilon on the grid of the smallest one, so norms differ
    /// only through the regularization. Otherwise each epsilon gets its own
    /// grid from `grids`.
    bool shared_grid = true;
    bool keep_trajectories = false;
    /// When set, the sweep also tracks "excess_*" norms of the part of
    /// u_eps that the singular data add on top of a reference solution.
    std::optional<ExcessSpec> excess;
};

/// Grid used for `eps` under the sweep options.
GridSpec sweep_grid(const SweepOptions& options, const std::vector<double>& epsilons, double eps,
                    double T);

struct SweepReport {
    std::vector<double> epsilons;
    std::vector<SweepRow> rows;
    /// "moderateness" first, then the energy norms.
    std::vector<TrackedNorm> norms;
    NetClass classification = NetClass::Unclassified;
    double exponent = 0.0;  ///< N of the moderateness fit when classified
    std::vector<std::string> notes;
    std::vector<SolutionTrajectory> trajectories;  ///< only with keep_trajectories

    const TrackedNorm& norm(const std::string& name) const;
};

/// Solves the regularized problem for every epsilon of the net, records the
/// energy norms and fits each against epsilon.
SweepReport run_sweep(const ProblemSpec& spec, const MollifierNet& net,
                      const SweepOptions& options = {});

/// L-infinity norms of one mollified expression across the net, on the
/// grids chosen by `grids`, with the power-law fit.
TrackedNorm mollified_linf_sweep(const DistExpr& expr, const MollifierNet& net,
                                 const GridPolicy& grids = {},
                                 SmoothHandling smooth = SmoothHandling::Convolve);

/// Norms of a space-time difference field used by the net comparisons.
struct DifferenceNorms {
    double linf_l2 = 0.0;
    /// ||d||_{H1(L2)} + ||d||_{L2(H2)}
    double composite = 0.0;
};

DifferenceNorms difference_norms(const SolutionTrajectory& lhs, const SolutionTrajectory& rhs);

struct NetComparison {
    std::vector<double> epsilons;
    std::vector<GridSpec> grids;
    TrackedNorm linf_l2;
    TrackedNorm composite;
    NetClass classification = NetClass::Unclassified;
    double order = 0.0;  ///< decay order K of the composite fit when classified

    /// Composite difference strictly decreasing along the ladder.
    bool strictly_decreasing() const;
    /// Same for the L-infinity(L2) difference, which stays meaningful when
    /// a singular coefficient makes the H2 part of each solution blow up.
    bool linf_decreasing() const;
};

/// Solves both regularizations for each epsilon on the same grid and fits
/// the decay of their difference. Both nets must list the same epsilons.
NetComparison compare_nets(const ProblemSpec& spec, const MollifierNet& a, const MollifierNet& b,
                           const SweepOptions& options = {});

struct ConsistencyReport {
    std::vector<double> epsilons;
    GridSpec grid;
    /// ||u - u_eps||_{H1L2} + ||u - u_eps||_{L2H2} per epsilon.
    TrackedNorm error;
    /// Same composite between the reference and the un-mollified solve on
    /// the common grid.
    double floor = 0.0;
    NetClass classification = NetClass::Unclassified;

    bool monotone() const;
    bool reaches_floor(double factor = 10.0) const;
};

/// The reference is the un-mollified problem on a grid refined twice in
/// each direction and injected onto the common grid, which is fine enough
/// for the smallest epsilon. Requires a spec without singular terms.
ConsistencyReport consistency_test(const ProblemSpec& spec, const MollifierNet& net,
                                   const SweepOptions& options = {});

}  // namespace vw
