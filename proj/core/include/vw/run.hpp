#pragma once

#include <string>
#include <vector>

#include "vw/config.hpp"
#include "vw/problem.hpp"

namespace vw {

enum class RunMode { Solve, Sweep, CompareNets, Consistency, Validate };

std::string_view to_string(RunMode mode);

struct RunResult {
    std::vector<std::string> files;  ///< paths written, in order
    std::string summary;             ///< human-readable report
    bool ok = true;                  ///< false when validation found issues
};

/// Validates the configuration against every epsilon it will use. Solve
/// mode only uses the first epsilon.
ValidationReport validate_config(const RunConfig& config, RunMode mode);

/// Executes one run and writes its artifacts under config.output_dir:
///  - Solve: trajectory.csv, energy.csv, profiles.svg
///  - Sweep: trajectory_eps<e>.csv per epsilon, energy.csv, sweep.csv,
///    sweep_fit.csv, profiles_t<t>.svg per snapshot, norm_history.svg,
///    moderateness.svg
///  - CompareNets: compare.csv, compare_fit.csv
///  - Consistency: consistency.csv
///  - every mode: run.log
/// Validation runs first, so grid/ellipticity problems surface before any
/// solve. Solver errors carry the case and epsilon.
RunResult run(const RunConfig& config, RunMode mode);

}  // namespace vw
