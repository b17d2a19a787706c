#include "vw/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

#include "vw/error.hpp"

namespace vw {

std::size_t worker_count(std::size_t jobs)
{
    std::size_t n = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("VW_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) n = static_cast<std::size_t>(v);
    }
    return std::max<std::size_t>(1, std::min(n, jobs));
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& job)
{
    std::vector<std::exception_ptr> errors(count);
    const std::size_t workers = worker_count(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            try {
                job(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        job(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::string_view to_string(NetClass c)
{
    switch (c) {
    case NetClass::Unclassified: return "unclassified";
    case NetClass::Moderate: return "moderate";
    case NetClass::Negligible: return "negligible";
    case NetClass::Converging: return "converging";
    }
    return "unclassified";
}

const TrackedNorm& SweepReport::norm(const std::string& name) const
{
    for (const auto& n : norms) {
        if (n.name == name) return n;
    }
    throw Error(ErrorCode::InvalidArgument, "sweep report has no norm '" + name + "'");
}

namespace {

TrackedNorm tracked(std::string name, const std::vector<double>& eps, std::vector<double> values)
{
    TrackedNorm t;
    t.name = std::move(name);
    t.values = std::move(values);
    if (eps.size() >= 2) t.fit = fit_power_law(eps, t.values);
    return t;
}

std::string eps_context(double eps)
{
    std::ostringstream os;
    os << "eps=" << eps;
    return os.str();
}

/// Notes on existence-theory hypotheses that this problem violates.
std::vector<std::string> hypothesis_notes(const ProblemSpec& spec)
{
    std::vector<std::string> notes;
    for (const auto& term : spec.b.terms) {
        if (term.time.is_singular()) {
            notes.push_back(
                "hypothesis violation: b is singular in time, so ||b_eps||_inf grows like 1/eps "
                "and the log-moderate bound on the drift does not hold");
            break;
        }
        if (term.space.is_singular()) {
            notes.push_back(
                "hypothesis violation: b is singular in space, so ||d_x b_eps||_inf is not "
                "log-moderate");
            break;
        }
    }
    return notes;
}

SolutionTrajectory solve_at(const ProblemSpec& spec, const MollifierNet& net, double eps,
                            GridSpec grid, const SweepOptions& options)
{
    try {
        const auto inst = build_instance(spec, net, eps, grid, options.instance);
        return solve(inst, options.scheme);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        const std::string what = e.what();
        if (what.find("eps=") != std::string::npos) throw;
        throw Error(e.code(), what + " (" + eps_context(eps) + ")");
    }
}

SolutionTrajectory difference(const SolutionTrajectory& lhs, const SolutionTrajectory& rhs)
{
    if (lhs.nx != rhs.nx || lhs.nt != rhs.nt) {
        throw Error(ErrorCode::InvalidArgument, "difference of trajectories on different grids");
    }
    SolutionTrajectory d = lhs;
    d.warnings.clear();
    auto out = d.u.data();
    const auto r = rhs.u.data();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= r[i];
    return d;
}

/// Injection of a trajectory onto the grid coarser by `factor` in both
/// directions.
SolutionTrajectory inject(const SolutionTrajectory& fine, std::size_t factor)
{
    SolutionTrajectory c = fine;
    c.nx = fine.nx / factor;
    c.nt = fine.nt / factor;
    c.h = fine.h * static_cast<double>(factor);
    c.tau = fine.tau * static_cast<double>(factor);
    c.u = Field2D(c.nt + 1, c.nx + 1);
    for (std::size_t n = 0; n <= c.nt; ++n) {
        for (std::size_t i = 0; i <= c.nx; ++i) c.u(n, i) = fine.u(n * factor, i * factor);
    }
    return c;
}

}  // namespace

GridSpec sweep_grid(const SweepOptions& options, const std::vector<double>& epsilons, double eps,
                    double T)
{
    if (options.shared_grid && !epsilons.empty()) {
        eps = *std::min_element(epsilons.begin(), epsilons.end());
    }
    return options.grids.for_epsilon(eps, T);
}

SweepReport run_sweep(const ProblemSpec& spec, const MollifierNet& net, const SweepOptions& options)
{
    SweepReport report;
    report.epsilons = net.epsilons();
    const std::size_t count = report.epsilons.size();
    report.rows.resize(count);
    if (options.keep_trajectories) report.trajectories.resize(count);

    // Baseline solutions, one per distinct grid.
    std::vector<GridSpec> grids(count);
    for (std::size_t k = 0; k < count; ++k) {
        grids[k] = sweep_grid(options, report.epsilons, report.epsilons[k], spec.T);
    }
    std::vector<SolutionTrajectory> baselines(count);
    const bool subtract = options.excess && options.excess->subtract;
    if (options.excess && !subtract) {
        parallel_for(count, [&](std::size_t k) {
            baselines[k] = solve_at(options.excess->problem, net, report.epsilons[k], grids[k], options);
        });
    } else if (subtract) {
        parallel_for(count, [&](std::size_t k) {
            for (std::size_t j = 0; j < k; ++j) {
                if (grids[j] == grids[k]) return;
            }
            baselines[k] = solve_at(options.excess->problem, net, report.epsilons[k], grids[k], options);
        });
        for (std::size_t k = 0; k < count; ++k) {
            for (std::size_t j = 0; j < k; ++j) {
                if (grids[j] == grids[k]) {
                    baselines[k] = baselines[j];
                    break;
                }
            }
        }
    }

    parallel_for(count, [&](std::size_t k) {
        const double eps = report.epsilons[k];
        const auto start = std::chrono::steady_clock::now();
        SweepRow row;
        row.epsilon = eps;
        row.grid = grids[k];
        RegularizedInstance inst;
        SolutionTrajectory traj;
        try {
            inst = build_instance(spec, net, eps, row.grid, options.instance);
            traj = solve(inst, options.scheme);
        } catch (const Error& e) {
            const std::string what = e.what();
            if (what.find("eps=") != std::string::npos) throw;
            throw Error(e.code(), what + " (" + eps_context(eps) + ")");
        }
        row.energy = energy_norms(traj, inst);
        evaluate_estimates(row.energy);
        row.moderateness = row.energy.norms.dtu_l2 + row.energy.norms.dxx;
        if (options.excess) {
            const auto excess =
                solution_norms(subtract ? difference(traj, baselines[k]) : baselines[k]);
            row.excess_moderateness = excess.dtu_l2 + excess.dxx;
            row.excess_linf_l2 = excess.linf_l2;
        }
        row.warnings = traj.warnings;
        row.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.rows[k] = std::move(row);
        if (options.keep_trajectories) report.trajectories[k] = std::move(traj);
    });

    auto column = [&](auto get) {
        std::vector<double> v;
        for (const auto& r : report.rows) v.push_back(get(r));
        return v;
    };
    const auto& e = report.epsilons;
    report.norms.push_back(tracked("moderateness", e, column([](const SweepRow& r) { return r.moderateness; })));
    report.norms.push_back(tracked("linf_l2", e, column([](const SweepRow& r) { return r.energy.norms.linf_l2; })));
    report.norms.push_back(tracked("l2_h1", e, column([](const SweepRow& r) { return r.energy.norms.l2_h1; })));
    report.norms.push_back(tracked("weighted", e, column([](const SweepRow& r) { return r.energy.weighted; })));
    report.norms.push_back(tracked("dtu_l2", e, column([](const SweepRow& r) { return r.energy.norms.dtu_l2; })));
    report.norms.push_back(tracked("dtu_hneg", e, column([](const SweepRow& r) { return r.energy.norms.dtu_hneg; })));
    report.norms.push_back(tracked("dxx", e, column([](const SweepRow& r) { return r.energy.norms.dxx; })));
    report.norms.push_back(tracked("dx_a_dx", e, column([](const SweepRow& r) { return r.energy.dx_a_dx; })));
    if (options.excess) {
        report.norms.push_back(tracked("excess_moderateness", e, column([](const SweepRow& r) { return r.excess_moderateness; })));
        report.norms.push_back(tracked("excess_linf_l2", e, column([](const SweepRow& r) { return r.excess_linf_l2; })));
    }

    const auto& primary = report.norms.front();
    if (primary.reliable()) {
        report.classification = NetClass::Moderate;
        report.exponent = primary.fit.growth();
    } else if (count >= 2) {
        report.notes.push_back("fit unreliable: moderateness R^2 below threshold, no classification");
    }
    for (auto& n : hypothesis_notes(spec)) report.notes.push_back(std::move(n));
    return report;
}

TrackedNorm mollified_linf_sweep(const DistExpr& expr, const MollifierNet& net,
                                 const GridPolicy& grids, SmoothHandling smooth)
{
    const auto& eps = net.epsilons();
    std::vector<double> values(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k) {
        const auto grid = grids.for_epsilon(eps[k], 1.0);
        MollifyOptions opts;
        opts.smooth = smooth;
        values[k] = linf_norm(mollify(expr, net, eps[k], Grid1D{0.0, 1.0, grid.nx}, opts));
    }
    return tracked("linf", eps, std::move(values));
}

DifferenceNorms difference_norms(const SolutionTrajectory& lhs, const SolutionTrajectory& rhs)
{
    const auto n = solution_norms(difference(lhs, rhs));
    DifferenceNorms d;
    d.linf_l2 = n.linf_l2;
    const double h1_l2 = std::sqrt(n.l2_l2 * n.l2_l2 + n.dtu_l2 * n.dtu_l2);
    const double l2_h2 = std::sqrt(n.l2_l2 * n.l2_l2 + n.l2_h1 * n.l2_h1 + n.dxx * n.dxx);
    d.composite = h1_l2 + l2_h2;
    return d;
}

namespace {

bool decreasing(const std::vector<double>& v)
{
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] < v[i - 1])) return false;
    }
    return true;
}

}  // namespace

bool NetComparison::strictly_decreasing() const
{
    return decreasing(composite.values);
}

bool NetComparison::linf_decreasing() const
{
    return decreasing(linf_l2.values);
}

NetComparison compare_nets(const ProblemSpec& spec, const MollifierNet& a, const MollifierNet& b,
                           const SweepOptions& options)
{
    if (a.epsilons() != b.epsilons()) {
        throw Error(ErrorCode::InvalidArgument, "compare_nets: nets list different epsilons");
    }
    NetComparison out;
    out.epsilons = a.epsilons();
    const std::size_t count = out.epsilons.size();
    std::vector<DifferenceNorms> diffs(count);
    out.grids.resize(count);

    parallel_for(count, [&](std::size_t k) {
        const double eps = out.epsilons[k];
        const auto grid = sweep_grid(options, out.epsilons, eps, spec.T);
        out.grids[k] = grid;
        const auto ua = solve_at(spec, a, eps, grid, options);
        const auto ub = solve_at(spec, b, eps, grid, options);
        diffs[k] = difference_norms(ua, ub);
    });

    std::vector<double> linf, comp;
    for (const auto& d : diffs) {
        linf.push_back(d.linf_l2);
        comp.push_back(d.composite);
    }
    out.linf_l2 = tracked("linf_l2", out.epsilons, std::move(linf));
    out.composite = tracked("h1l2_l2h2", out.epsilons, std::move(comp));
    if (out.composite.reliable() && out.composite.fit.slope > 0.0) {
        out.classification = NetClass::Negligible;
        out.order = out.composite.fit.slope;
    }
    return out;
}

bool ConsistencyReport::monotone() const
{
    return decreasing(error.values);
}

bool ConsistencyReport::reaches_floor(double factor) const
{
    return !error.values.empty() && error.values.back() <= factor * floor;
}

ConsistencyReport consistency_test(const ProblemSpec& spec, const MollifierNet& net,
                                   const SweepOptions& options)
{
    if (!spec.is_regular()) {
        throw Error(ErrorCode::UnsupportedVariant,
                    "consistency_test needs a spec without Delta or Heaviside terms");
    }
    ConsistencyReport out;
    out.epsilons = net.epsilons();
    const double eps_min = *std::min_element(out.epsilons.begin(), out.epsilons.end());
    out.grid = options.grids.for_epsilon(eps_min, spec.T);

    SweepOptions sampled = options;
    sampled.instance.smooth = SmoothHandling::Sample;
    SweepOptions convolved = options;
    convolved.instance.smooth = SmoothHandling::Convolve;

    const GridSpec fine{2 * out.grid.nx, 2 * out.grid.nt};
    const auto reference = inject(solve_at(spec, net, eps_min, fine, sampled), 2);
    const auto coarse = solve_at(spec, net, eps_min, out.grid, sampled);
    out.floor = difference_norms(reference, coarse).composite;

    std::vector<double> errors(out.epsilons.size());
    parallel_for(out.epsilons.size(), [&](std::size_t k) {
        const auto u = solve_at(spec, net, out.epsilons[k], out.grid, convolved);
        errors[k] = difference_norms(reference, u).composite;
    });
    out.error = tracked("h1l2_l2h2", out.epsilons, std::move(errors));
    if (out.monotone() && out.reaches_floor()) out.classification = NetClass::Converging;
    return out;
}

}  // namespace vw
