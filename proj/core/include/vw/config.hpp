#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vw/cases.hpp"
#include "vw/fdsolver.hpp"
#include "vw/problem.hpp"

namespace vw {

/// Everything a run needs. Produced by parse_config or assembled in code.
struct RunConfig {
    std::optional<int> case_id = 1;  ///< empty when the problem is given inline
    CaseVariant variant = CaseVariant::Text;
    ProblemSpec problem = builtin_case(1);

    SchemeConfig scheme;
    GridPolicy grids;
    bool shared_grid = true;  ///< sweeps solve every epsilon on one grid
    InstanceOptions instance;
    std::vector<double> epsilons = MollifierNet::default_ladder();
    std::string mollifier = "exp";  ///< "exp" or "cosine"

    std::string output_dir = "out";
    std::vector<double> snapshots = {0.0, 0.125, 0.25, 0.5, 1.0};
    bool svg = true;

    MollifierNet net() const;
    /// Throws InvalidArgument for snapshot times outside [0, T], theta
    /// outside [1/2, 1] or an unknown mollifier.
    void check() const;
};

/// Parses the YAML run configuration. An empty document gives the defaults
/// (case 1, theta = 1, default epsilon ladder). Unknown or malformed keys
/// raise ParseError with the key name and its 1-based line and column.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Parses a distribution expression written in the configuration syntax,
/// e.g. "{delta: {at: 0.45}}" or "[1, {delta: {at: 0.45}}]".
DistExpr parse_expr(const std::string& text);

/// YAML text that parse_config reads back into an equivalent config.
/// Throws UnsupportedVariant when the problem holds a custom function.
std::string to_yaml(const RunConfig& config);
std::string to_yaml(const ProblemSpec& spec);

/// Reads a problem given in the `problem:` syntax of the run configuration.
ProblemSpec parse_problem(const std::string& text);

}  // namespace vw
