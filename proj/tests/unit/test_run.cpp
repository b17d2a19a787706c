#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "vw/error.hpp"
#include "vw/run.hpp"

using namespace vw;
namespace fs = std::filesystem;

namespace {

RunConfig small(int id, const std::string& dir)
{
    RunConfig cfg;
    cfg.case_id = id;
    cfg.problem = builtin_case(id);
    cfg.epsilons = {0.3, 0.1};
    cfg.output_dir = (fs::temp_directory_path() / "vw_run_test" / dir).string();
    fs::remove_all(cfg.output_dir);
    return cfg;
}

bool has_file(const RunResult& r, const std::string& name)
{
    for (const auto& f : r.files) {
        if (fs::path(f).filename() == name && fs::exists(f)) return true;
    }
    return false;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Run, ModeNames)
{
    EXPECT_EQ(to_string(RunMode::CompareNets), "compare-nets");
    EXPECT_EQ(to_string(RunMode::Solve), "solve");
}

TEST(Run, SolveWritesArtifacts)
{
    const auto cfg = small(2, "solve");
    const auto r = run(cfg, RunMode::Solve);
    EXPECT_TRUE(r.ok);
    EXPECT_TRUE(has_file(r, "trajectory.csv"));
    EXPECT_TRUE(has_file(r, "energy.csv"));
    EXPECT_TRUE(has_file(r, "profiles.svg"));
    EXPECT_TRUE(has_file(r, "run.log"));
    const auto log = slurp(r.files.back());
    for (const char* section : {"[run]", "[config]", "[validation]", "[timings]", "[summary]", "[files]"}) {
        EXPECT_NE(log.find(section), std::string::npos) << section;
    }
    EXPECT_NE(r.summary.find("eps = 0.3"), std::string::npos);
}

TEST(Run, SweepWritesArtifacts)
{
    auto cfg = small(4, "sweep");
    cfg.snapshots = {0.0, 0.5};
    const auto r = run(cfg, RunMode::Sweep);
    for (const char* f : {"trajectory_eps0.3.csv", "trajectory_eps0.1.csv", "energy.csv", "sweep.csv",
                          "sweep_fit.csv", "profiles_t0.svg", "profiles_t0.5.svg", "norm_history.svg",
                          "moderateness.svg", "run.log"}) {
        EXPECT_TRUE(has_file(r, f)) << f;
    }
    EXPECT_NE(slurp((fs::path(cfg.output_dir) / "sweep.csv").string()).find("excess_moderateness"),
              std::string::npos);
}

TEST(Run, SvgCanBeDisabled)
{
    auto cfg = small(1, "nosvg");
    cfg.svg = false;
    const auto r = run(cfg, RunMode::Solve);
    EXPECT_FALSE(has_file(r, "profiles.svg"));
}

TEST(Run, CompareAndConsistency)
{
    auto cfg = small(4, "compare");
    const auto r = run(cfg, RunMode::CompareNets);
    EXPECT_TRUE(has_file(r, "compare.csv"));
    EXPECT_TRUE(has_file(r, "compare_fit.csv"));

    auto smooth = small(1, "consistency");
    const auto c = run(smooth, RunMode::Consistency);
    const auto csv = slurp((fs::path(smooth.output_dir) / "consistency.csv").string());
    EXPECT_NE(csv.find("floor,h1l2_l2h2,"), std::string::npos);
    EXPECT_TRUE(has_file(c, "run.log"));
}

TEST(Run, ValidateReportsWithoutThrowing)
{
    auto cfg = small(1, "validate");
    cfg.grids = GridPolicy::fixed_grid({20, 20});
    const auto r = run(cfg, RunMode::Validate);
    EXPECT_FALSE(r.ok);
    EXPECT_TRUE(has_file(r, "run.log"));
    EXPECT_NE(r.summary.find("ResolutionInsufficient"), std::string::npos);
}

TEST(Run, InvalidConfigThrowsBeforeSolving)
{
    auto cfg = small(1, "invalid");
    cfg.epsilons = {0.1};
    cfg.grids = GridPolicy::fixed_grid({20, 20});
    try {
        run(cfg, RunMode::Solve);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ResolutionInsufficient);
    }
    EXPECT_FALSE(fs::exists(fs::path(cfg.output_dir) / "trajectory.csv"));
}

TEST(Run, NegativeDiffusionRejected)
{
    auto cfg = small(2, "elliptic");
    cfg.case_id.reset();
    cfg.problem.a = SpaceTimeExpr::in_space(DistExpr::sum({DistExpr::constant(1.0), DistExpr::delta(0.45, -1.0)}));
    const auto report = validate_config(cfg, RunMode::Sweep);
    ASSERT_FALSE(report.ok());
    EXPECT_EQ(report.issues.front().code, ErrorCode::EllipticityViolated);
}
