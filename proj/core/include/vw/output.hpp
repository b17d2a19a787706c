#pragma once

#include <string>
#include <vector>

#include "vw/fdsolver.hpp"
#include "vw/galerkin.hpp"
#include "vw/norms.hpp"
#include "vw/sweep.hpp"

namespace vw {

/// Shortest round-trip-safe decimal form with at most 12 significant
/// digits; independent of the global locale.
std::string format_number(double v);

/// Writes `content` to `path`, creating parent directories. Throws IoError.
void write_text(const std::string& path, const std::string& content);

/// `t,x,u` rows. With an empty `times` every time node is written,
/// otherwise the nearest node to each requested time.
std::string trajectory_csv(const SolutionTrajectory& traj, const std::vector<double>& times = {});

/// `t,k,d_k` rows.
std::string galerkin_csv(const CoefficientTrajectory& coeffs);

struct EnergyRow {
    std::string label;
    double epsilon = 0.0;
    EnergyReport report;
};

/// One row per run: norms, then lhs/rhs/ratio of every estimate.
std::string energy_csv(const std::vector<EnergyRow>& rows);

/// `epsilon,norm_name,value` rows.
std::string sweep_csv(const SweepReport& report);
/// `norm_name,exponent,constant,r_squared,points,reliable` rows.
std::string fit_csv(const std::vector<TrackedNorm>& norms);
std::string fit_summary(const std::vector<TrackedNorm>& norms);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    bool log_x = false;
    bool log_y = false;
};

/// Self-contained 800x600 SVG line chart with axes and a legend.
std::string render_svg(const Chart& chart);

/// Profiles u(t, .) at the time node nearest `t` for each trajectory.
Chart profile_chart(const std::vector<SolutionTrajectory>& trajs,
                    const std::vector<std::string>& labels, double t, const std::string& title);

/// ||u(t, .)||_{L2} over time for each trajectory.
Chart norm_history_chart(const std::vector<SolutionTrajectory>& trajs,
                         const std::vector<std::string>& labels, const std::string& title);

}  // namespace vw
