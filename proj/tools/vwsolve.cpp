#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "vw/config.hpp"
#include "vw/error.hpp"
#include "vw/run.hpp"

namespace {

struct Overrides {
    std::string config;
    std::vector<double> eps;
    std::optional<std::size_t> nx;
    std::optional<std::size_t> nt;
    std::optional<double> theta;
    std::optional<double> T;
    std::optional<std::string> out;
    std::vector<double> snapshots;
    std::string variant = "text";
    std::string mollifier;
};

void add_common(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--config", o.config, "YAML run configuration")->check(CLI::ExistingFile);
    cmd->add_option("--eps", o.eps, "epsilon or comma-separated ladder")->delimiter(',');
    cmd->add_option("--nx", o.nx, "spatial cells (fixed grid)");
    cmd->add_option("--nt", o.nt, "time steps (fixed grid)");
    cmd->add_option("--theta", o.theta, "theta of the time scheme, in [0.5, 1]");
    cmd->add_option("--T", o.T, "final time");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--snapshots", o.snapshots, "comma-separated snapshot times")->delimiter(',');
    cmd->add_option("--mollifier", o.mollifier, "exp or cosine");
}

vw::RunConfig make_config(const Overrides& o, std::optional<int> case_id)
{
    vw::RunConfig cfg = o.config.empty() ? vw::RunConfig{} : vw::load_config(o.config);
    if (case_id) {
        cfg.variant = o.variant == "figure" ? vw::CaseVariant::Figure : vw::CaseVariant::Text;
        cfg.problem = vw::builtin_case(*case_id, cfg.variant);
        cfg.case_id = case_id;
    }
    if (!o.eps.empty()) cfg.epsilons = o.eps;
    if (o.theta) cfg.scheme.theta = *o.theta;
    if (o.T) {
        const double scale = *o.T / cfg.problem.T;
        cfg.problem.T = *o.T;
        if (o.snapshots.empty()) {
            for (double& t : cfg.snapshots) t *= scale;
        }
    }
    if (!o.snapshots.empty()) cfg.snapshots = o.snapshots;
    if (o.out) cfg.output_dir = *o.out;
    if (!o.mollifier.empty()) cfg.mollifier = o.mollifier;
    if (o.nx || o.nt) {
        double eps_min = cfg.epsilons.front();
        for (double e : cfg.epsilons) eps_min = std::min(eps_min, e);
        vw::GridSpec g = cfg.grids.fixed ? *cfg.grids.fixed : cfg.grids.for_epsilon(eps_min, cfg.problem.T);
        if (o.nx) g.nx = *o.nx;
        if (o.nt) g.nt = *o.nt;
        cfg.grids.fixed = g;
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite-difference solver for parabolic problems with mollified singular data"};
    app.require_subcommand(1);

    Overrides o;
    int case_id = 1;
    auto* solve = app.add_subcommand("solve", "solve one problem for one epsilon");
    auto* cases = app.add_subcommand("case", "run the epsilon sweep of a built-in case");
    auto* sweep = app.add_subcommand("sweep", "run the epsilon sweep of the configured problem");
    auto* compare = app.add_subcommand("compare-nets", "compare the exp and cosine mollifier nets");
    auto* consistency = app.add_subcommand("consistency", "convergence to the un-mollified solution");
    auto* validate = app.add_subcommand("validate", "check the configuration without solving");
    for (auto* c : {solve, cases, sweep, compare, consistency, validate}) add_common(c, o);
    cases->add_option("id", case_id, "case number 1..5")->required();
    cases->add_option("--variant", o.variant, "text or figure singular locations")
        ->check(CLI::IsMember({"text", "figure"}));

    CLI11_PARSE(app, argc, argv);

    try {
        vw::RunMode mode = vw::RunMode::Solve;
        std::optional<int> id;
        if (*cases) {
            mode = vw::RunMode::Sweep;
            id = case_id;
        } else if (*sweep) {
            mode = vw::RunMode::Sweep;
        } else if (*compare) {
            mode = vw::RunMode::CompareNets;
        } else if (*consistency) {
            mode = vw::RunMode::Consistency;
        } else if (*validate) {
            mode = vw::RunMode::Validate;
        }
        const auto cfg = make_config(o, id);
        const auto result = vw::run(cfg, mode);
        std::cout << result.summary;
        for (const auto& f : result.files) std::cout << "wrote " << f << "\n";
        return result.ok ? 0 : 2;
    } catch (const vw::ParseError& e) {
        std::cerr << "error [ParseError] line " << e.line() << ", column " << e.column() << ": " << e.what()
                  << "\n";
        return 1;
    } catch (const vw::Error& e) {
        std::cerr << "error [" << vw::to_string(e.code()) << "]: " << e.what() << "\n";
        return 1;
    }
}
