#include "vw/run.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <sstream>

#include "vw/error.hpp"
#include "vw/norms.hpp"
#include "vw/output.hpp"
#include "vw/sweep.hpp"

namespace vw {

std::string_view to_string(RunMode mode)
{
    switch (mode) {
    case RunMode::Solve: return "solve";
    case RunMode::Sweep: return "sweep";
    case RunMode::CompareNets: return "compare-nets";
    case RunMode::Consistency: return "consistency";
    case RunMode::Validate: return "validate";
    }
    return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

MollifierNet net_for(const RunConfig& cfg, RunMode mode)
{
    auto net = cfg.net();
    if (mode == RunMode::Solve) return net.with_epsilons({cfg.epsilons.front()});
    return net;
}

std::string context(const RunConfig& cfg)
{
    return cfg.case_id ? "case " + std::to_string(*cfg.case_id) : std::string("inline problem");
}

std::string eps_tag(double eps)
{
    return format_number(eps);
}

class RunLog {
public:
    RunLog(const RunConfig& cfg, RunMode mode)
    {
        out_ << "[run]\n";
        out_ << "mode = " << to_string(mode) << "\n";
        out_ << "problem = " << context(cfg) << "\n";
        out_ << "threads = " << worker_count(cfg.epsilons.size()) << "\n\n";
        out_ << "[config]\n" << to_yaml(cfg) << "\n\n";
    }

    void section(const std::string& name) { out_ << "\n[" << name << "]\n"; }
    std::ostringstream& stream() { return out_; }
    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
};

std::string path_in(const RunConfig& cfg, const std::string& name)
{
    return (std::filesystem::path(cfg.output_dir) / name).string();
}

void emit(RunResult& result, const RunConfig& cfg, const std::string& name, const std::string& content)
{
    const auto p = path_in(cfg, name);
    write_text(p, content);
    result.files.push_back(p);
}

std::string estimates_line(const EnergyReport& r)
{
    std::ostringstream os;
    for (const auto& e : r.estimates) {
        os << " " << to_string(e.which) << "=" << format_number(e.ratio);
    }
    return os.str();
}

SweepOptions sweep_options(const RunConfig& cfg)
{
    SweepOptions o;
    o.grids = cfg.grids;
    o.scheme = cfg.scheme;
    o.instance = cfg.instance;
    o.shared_grid = cfg.shared_grid;
    return o;
}

void run_solve(const RunConfig& cfg, RunResult& result, RunLog& log)
{
    const double eps = cfg.epsilons.front();
    const auto net = net_for(cfg, RunMode::Solve);
    const auto grid = cfg.grids.for_epsilon(eps, cfg.problem.T);
    const auto start = Clock::now();
    RegularizedInstance inst;
    SolutionTrajectory traj;
    try {
        inst = build_instance(cfg.problem, net, eps, grid, cfg.instance);
        traj = solve(inst, cfg.scheme);
    } catch (const Error& e) {
        throw Error(e.code(), std::string(e.what()) + " (" + context(cfg) + ", eps=" + eps_tag(eps) + ")");
    }
    auto energy = energy_norms(traj, inst);
    evaluate_estimates(energy);

    emit(result, cfg, "trajectory.csv", trajectory_csv(traj, cfg.snapshots));
    emit(result, cfg, "energy.csv", energy_csv({{context(cfg), eps, energy}}));
    if (cfg.svg) {
        Chart chart;
        chart.title = context(cfg) + ", eps = " + eps_tag(eps);
        chart.x_label = "x";
        chart.y_label = "u(t, x)";
        for (double t : cfg.snapshots) {
            chart.series.push_back(profile_chart({traj}, {"t = " + format_number(t)}, t, "").series.front());
        }
        emit(result, cfg, "profiles.svg", render_svg(chart));
    }

    log.section("timings");
    log.stream() << "eps = " << eps_tag(eps) << " grid = " << grid.nx << "x" << grid.nt
                 << " seconds = " << format_number(seconds_since(start)) << "\n";
    std::ostringstream s;
    s << context(cfg) << ", eps = " << eps_tag(eps) << ", grid " << grid.nx << "x" << grid.nt << "\n";
    s << "  linf_l2 = " << format_number(energy.norms.linf_l2) << ", l2_h1 = " << format_number(energy.norms.l2_h1)
      << ", dtu_hneg = " << format_number(energy.norms.dtu_hneg) << "\n";
    s << "  estimate ratios:" << estimates_line(energy) << "\n";
    for (const auto& w : traj.warnings) s << "  warning: " << w << "\n";
    result.summary = s.str();
}

void run_sweep_mode(const RunConfig& cfg, RunResult& result, RunLog& log)
{
    const auto net = net_for(cfg, RunMode::Sweep);
    auto opts = sweep_options(cfg);
    opts.keep_trajectories = true;
    // Built-in singular cases are also measured against the smooth case.
    if (cfg.case_id) {
        opts.excess = case_excess(*cfg.case_id, cfg.variant);
        if (opts.excess) opts.excess->problem.T = cfg.problem.T;
    }
    SweepReport report;
    try {
        report = run_sweep(cfg.problem, net, opts);
    } catch (const Error& e) {
        throw Error(e.code(), std::string(e.what()) + " (" + context(cfg) + ")");
    }

    std::vector<EnergyRow> rows;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < report.rows.size(); ++k) {
        const double eps = report.epsilons[k];
        labels.push_back("eps = " + eps_tag(eps));
        rows.push_back({context(cfg), eps, report.rows[k].energy});
        emit(result, cfg, "trajectory_eps" + eps_tag(eps) + ".csv",
             trajectory_csv(report.trajectories[k], cfg.snapshots));
    }
    emit(result, cfg, "energy.csv", energy_csv(rows));
    emit(result, cfg, "sweep.csv", sweep_csv(report));
    emit(result, cfg, "sweep_fit.csv", fit_csv(report.norms));

    if (cfg.svg) {
        for (double t : cfg.snapshots) {
            const auto title = context(cfg) + ", t = " + format_number(t);
            emit(result, cfg, "profiles_t" + format_number(t) + ".svg",
                 render_svg(profile_chart(report.trajectories, labels, t, title)));
        }
        emit(result, cfg, "norm_history.svg",
             render_svg(norm_history_chart(report.trajectories, labels, context(cfg) + ", L2 norm over time")));
        Chart mod;
        mod.title = context(cfg) + ", ||u_t|| + ||u_xx|| against eps";
        mod.x_label = "eps";
        mod.y_label = "norm";
        mod.log_x = mod.log_y = true;
        for (const auto& n : report.norms) {
            if (n.name != "moderateness" && n.name != "linf_l2" && n.name != "l2_h1") continue;
            mod.series.push_back({n.name, report.epsilons, n.values});
        }
        emit(result, cfg, "moderateness.svg", render_svg(mod));
    }

    log.section("timings");
    for (const auto& r : report.rows) {
        log.stream() << "eps = " << eps_tag(r.epsilon) << " grid = " << r.grid.nx << "x" << r.grid.nt
                     << " seconds = " << format_number(r.seconds) << "\n";
    }
    std::ostringstream s;
    s << context(cfg) << ": sweep over " << report.epsilons.size() << " epsilons, classification "
      << to_string(report.classification);
    if (report.classification == NetClass::Moderate) s << " (N = " << format_number(report.exponent) << ")";
    s << "\n" << fit_summary(report.norms);
    for (const auto& r : report.rows) {
        s << "  eps = " << eps_tag(r.epsilon) << " estimate ratios:" << estimates_line(r.energy) << "\n";
    }
    for (const auto& n : report.notes) s << "  note: " << n << "\n";
    result.summary = s.str();
}

void run_compare(const RunConfig& cfg, RunResult& result, RunLog& log)
{
    const MollifierNet a(default_bump(), cfg.epsilons);
    const MollifierNet b(cosine_bump(), cfg.epsilons);
    const auto start = Clock::now();
    NetComparison cmp;
    try {
        cmp = compare_nets(cfg.problem, a, b, sweep_options(cfg));
    } catch (const Error& e) {
        throw Error(e.code(), std::string(e.what()) + " (" + context(cfg) + ")");
    }
    std::string csv = "epsilon,norm_name,value\n";
    for (std::size_t k = 0; k < cmp.epsilons.size(); ++k) {
        csv += format_number(cmp.epsilons[k]) + ",linf_l2," + format_number(cmp.linf_l2.values[k]) + "\n";
        csv += format_number(cmp.epsilons[k]) + ",h1l2_l2h2," + format_number(cmp.composite.values[k]) + "\n";
    }
    emit(result, cfg, "compare.csv", csv);
    emit(result, cfg, "compare_fit.csv", fit_csv({cmp.linf_l2, cmp.composite}));

    log.section("timings");
    log.stream() << "total seconds = " << format_number(seconds_since(start)) << "\n";
    std::ostringstream s;
    s << context(cfg) << ": exp bump against cosine bump, classification " << to_string(cmp.classification)
      << ", linf_l2 " << (cmp.linf_decreasing() ? "strictly decreasing" : "not monotone")
      << ", composite " << (cmp.strictly_decreasing() ? "strictly decreasing" : "not monotone") << "\n";
    s << fit_summary({cmp.linf_l2, cmp.composite});
    for (std::size_t k = 0; k < cmp.epsilons.size(); ++k) {
        s << "  eps = " << eps_tag(cmp.epsilons[k]) << " linf_l2 = " << format_number(cmp.linf_l2.values[k])
          << " composite = " << format_number(cmp.composite.values[k]) << "\n";
    }
    result.summary = s.str();
}

void run_consistency(const RunConfig& cfg, RunResult& result, RunLog& log)
{
    const auto start = Clock::now();
    const auto rep = consistency_test(cfg.problem, cfg.net(), sweep_options(cfg));
    std::string csv = "epsilon,norm_name,value\n";
    for (std::size_t k = 0; k < rep.epsilons.size(); ++k) {
        csv += format_number(rep.epsilons[k]) + ",h1l2_l2h2," + format_number(rep.error.values[k]) + "\n";
    }
    csv += "floor,h1l2_l2h2," + format_number(rep.floor) + "\n";
    emit(result, cfg, "consistency.csv", csv);

    log.section("timings");
    log.stream() << "total seconds = " << format_number(seconds_since(start)) << "\n";
    std::ostringstream s;
    s << context(cfg) << ": consistency on grid " << rep.grid.nx << "x" << rep.grid.nt << ", floor "
      << format_number(rep.floor) << ", " << (rep.monotone() ? "monotone" : "not monotone") << ", "
      << (rep.reaches_floor() ? "reaches 10x floor" : "above 10x floor") << "\n";
    s << fit_summary({rep.error});
    result.summary = s.str();
}

}  // namespace

ValidationReport validate_config(const RunConfig& config, RunMode mode)
{
    config.check();
    const auto net = net_for(config, mode);
    if (mode == RunMode::Consistency) {
        const double eps_min = *std::min_element(config.epsilons.begin(), config.epsilons.end());
        return validate(config.problem, net, config.grids.for_epsilon(eps_min, config.problem.T), config.instance);
    }
    return validate(config.problem, net, config.grids, config.instance);
}

RunResult run(const RunConfig& config, RunMode mode)
{
    RunResult result;
    RunLog log(config, mode);
    const auto start = Clock::now();

    const auto report = validate_config(config, mode);
    log.section("validation");
    log.stream() << report.summary() << "\n";
    if (mode == RunMode::Validate) {
        result.ok = report.ok();
        result.summary = report.summary();
        emit(result, config, "run.log", log.str());
        return result;
    }
    report.throw_if_invalid();

    switch (mode) {
    case RunMode::Solve: run_solve(config, result, log); break;
    case RunMode::Sweep: run_sweep_mode(config, result, log); break;
    case RunMode::CompareNets: run_compare(config, result, log); break;
    case RunMode::Consistency: run_consistency(config, result, log); break;
    case RunMode::Validate: break;
    }

    log.section("summary");
    log.stream() << result.summary;
    log.stream() << "total_seconds = " << format_number(seconds_since(start)) << "\n";
    log.section("files");
    for (const auto& f : result.files) log.stream() << f << "\n";
    emit(result, config, "run.log", log.str());
    return result;
}

}  // namespace vw
