#include "vw/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace vw {

// ---------------------------------------------------------------------------
// SpaceTimeExpr / ProblemSpec

SpaceTimeExpr SpaceTimeExpr::in_space(DistExpr space)
{
    return {{SeparableTerm{DistExpr::constant(1.0), std::move(space)}}};
}

SpaceTimeExpr SpaceTimeExpr::in_time(DistExpr time)
{
    return {{SeparableTerm{std::move(time), DistExpr::constant(1.0)}}};
}

SpaceTimeExpr SpaceTimeExpr::product(DistExpr time, DistExpr space)
{
    return {{SeparableTerm{std::move(time), std::move(space)}}};
}

bool SpaceTimeExpr::is_singular() const
{
    return std::any_of(terms.begin(), terms.end(), [](const SeparableTerm& t) {
        return t.time.is_singular() || t.space.is_singular();
    });
}

bool SpaceTimeExpr::is_regular() const
{
    return std::all_of(terms.begin(), terms.end(), [](const SeparableTerm& t) {
        return t.time.is_regular() && t.space.is_regular();
    });
}

bool SpaceTimeExpr::time_independent() const
{
    return std::all_of(terms.begin(), terms.end(),
                       [](const SeparableTerm& t) { return t.time.is_constant(); });
}

SpaceTimeExpr SpaceTimeExpr::operator+(const SpaceTimeExpr& other) const
{
    SpaceTimeExpr out = *this;
    out.terms.insert(out.terms.end(), other.terms.begin(), other.terms.end());
    return out;
}

SpaceTimeExpr operator*(double factor, const SpaceTimeExpr& e)
{
    SpaceTimeExpr out;
    for (const auto& t : e.terms) out.terms.push_back({t.time, factor * t.space});
    return out;
}

bool ProblemSpec::is_regular() const
{
    return a.is_regular() && b.is_regular() && f.is_regular() && q.is_regular() &&
           u0.is_regular() && g0.is_regular() && g1.is_regular();
}

bool ProblemSpec::homogeneous_boundary() const
{
    auto is_zero = [](const DistExpr& e) {
        const auto* c = std::get_if<expr::Constant>(&e.node());
        return c != nullptr && c->value == 0.0;
    };
    return is_zero(g0) && is_zero(g1);
}

ProblemSpec ProblemSpec::scaled_data(double factor) const
{
    ProblemSpec out = *this;
    out.u0 = factor * u0;
    out.f = factor * f;
    out.g0 = factor * g0;
    out.g1 = factor * g1;
    return out;
}

// ---------------------------------------------------------------------------
// Grid policy

GridSpec GridPolicy::for_epsilon(double eps, double T) const
{
    if (fixed) return *fixed;
    auto round_up = [this](std::size_t n) {
        if (multiple <= 1) return n;
        return (n + multiple - 1) / multiple * multiple;
    };
    // Shave a relative 1e-9 so that exact ratios such as 4/0.1 do not round up.
    auto cells = [this](double length, double e) {
        return static_cast<std::size_t>(std::ceil(cells_per_eps * length / e * (1.0 - 1e-9)));
    };
    GridSpec g;
    g.nx = round_up(std::max(min_nx, cells(1.0, eps)));
    g.nt = round_up(std::max(min_nt, cells(T, eps)));
    return g;
}

GridPolicy GridPolicy::fixed_grid(GridSpec grid)
{
    GridPolicy p;
    p.fixed = grid;
    return p;
}

// ---------------------------------------------------------------------------
// Instance assembly

namespace {

void check_basic(const ProblemSpec& spec, GridSpec grid)
{
    if (!(spec.T > 0.0)) throw Error(ErrorCode::InvalidArgument, "T must be positive");
    if (!(spec.alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
    if (grid.nx < 2 || grid.nt < 1) {
        throw Error(ErrorCode::InvalidArgument, "grid needs nx >= 2 and nt >= 1");
    }
}

void check_separable(const SpaceTimeExpr& e, const char* name)
{
    for (const auto& t : e.terms) {
        if (t.time.is_singular() && t.space.is_singular()) {
            std::ostringstream msg;
            msg << "coefficient " << name
                << " has a term that is singular in both t and x; only one factor may be singular";
            throw Error(ErrorCode::InvalidArgument, msg.str());
        }
    }
}

Field2D sample_space_time(const SpaceTimeExpr& e, const MollifierNet& net, double eps,
                          const Grid1D& tgrid, const Grid1D& xgrid, MollifyOptions opt)
{
    Field2D out(tgrid.size(), xgrid.size(), 0.0);
    for (const auto& term : e.terms) {
        const auto tv = mollify(term.time, net, eps, tgrid, opt).values;
        const auto xv = mollify(term.space, net, eps, xgrid, opt).values;
        for (std::size_t n = 0; n < tv.size(); ++n) {
            auto row = out.row(n);
            for (std::size_t i = 0; i < xv.size(); ++i) row[i] += tv[n] * xv[i];
        }
    }
    return out;
}

bool all_finite(std::span<const double> v)
{
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

RegularizedInstance assemble(const ProblemSpec& spec, const MollifierNet& net, double eps,
                             GridSpec grid, InstanceOptions options)
{
    check_basic(spec, grid);
    check_separable(spec.a, "a");
    check_separable(spec.b, "b");
    check_separable(spec.f, "f");

    RegularizedInstance inst;
    inst.epsilon = eps;
    inst.T = spec.T;
    inst.alpha = spec.alpha;
    inst.nx = grid.nx;
    inst.nt = grid.nt;
    const Grid1D xg = inst.space_grid();
    const Grid1D tg = inst.time_grid();
    inst.h = xg.step();
    inst.tau = tg.step();

    MollifyOptions opt;
    opt.smooth = options.smooth;
    inst.a = sample_space_time(spec.a, net, eps, tg, xg, opt);
    inst.b = sample_space_time(spec.b, net, eps, tg, xg, opt);
    inst.f = sample_space_time(spec.f, net, eps, tg, xg, opt);
    inst.q = mollify(spec.q, net, eps, xg, opt).values;
    inst.u0 = mollify(spec.u0, net, eps, xg, opt).values;
    inst.g0 = mollify(spec.g0, net, eps, tg, opt).values;
    inst.g1 = mollify(spec.g1, net, eps, tg, opt).values;
    inst.a_time_independent = spec.a.time_independent();
    inst.b_time_independent = spec.b.time_independent();
    return inst;
}

struct InstanceChecks {
    double min_a = 0.0;
    bool finite = true;
    double peclet = 0.0;
};

InstanceChecks inspect(const RegularizedInstance& inst)
{
    InstanceChecks c;
    const auto a = inst.a.data();
    c.min_a = a.empty() ? 0.0 : *std::min_element(a.begin(), a.end());
    c.finite = all_finite(inst.a.data()) && all_finite(inst.b.data()) &&
               all_finite(inst.f.data()) && all_finite(inst.q) && all_finite(inst.u0) &&
               all_finite(inst.g0) && all_finite(inst.g1);
    double max_b = 0.0;
    for (double v : inst.b.data()) max_b = std::max(max_b, std::abs(v));
    if (c.min_a > 0.0) c.peclet = max_b * inst.h / (2.0 * c.min_a);
    return c;
}

bool resolved(double step, double eps, double cells_per_eps = 4.0)
{
    return step <= eps / cells_per_eps * (1.0 + 1e-12);
}

void check_resolution(ValidationReport& report, double eps, GridSpec grid, double T)
{
    const double h = 1.0 / static_cast<double>(grid.nx);
    const double tau = T / static_cast<double>(grid.nt);
    if (!resolved(h, eps) || !resolved(tau, eps)) {
        std::ostringstream msg;
        msg << "grid too coarse for eps=" << eps << ": need h <= eps/4 and tau <= eps/4 (h=" << h
            << ", tau=" << tau << "; nx >= " << std::ceil(4.0 / eps * (1.0 - 1e-9))
            << ", nt >= " << std::ceil(4.0 * T / eps * (1.0 - 1e-9)) << ")";
        report.issues.push_back({ErrorCode::ResolutionInsufficient, eps, msg.str()});
    }
}

void check_instance(ValidationReport& report, const RegularizedInstance& inst)
{
    const auto c = inspect(inst);
    if (!c.finite) {
        report.issues.push_back(
            {ErrorCode::InvalidArgument, inst.epsilon, "sampled fields contain non-finite values"});
    }
    if (c.min_a < inst.alpha * (1.0 - 1e-12)) {
        std::ostringstream msg;
        msg << "a_eps drops to " << c.min_a << " < alpha=" << inst.alpha
            << " at eps=" << inst.epsilon;
        report.issues.push_back({ErrorCode::EllipticityViolated, inst.epsilon, msg.str()});
    }
    if (c.peclet > 1.0) {
        std::ostringstream msg;
        msg << "cell Peclet number " << c.peclet << " > 1 at eps=" << inst.epsilon
            << "; centred drift differencing may oscillate";
        report.warnings.push_back(msg.str());
    }
}

}  // namespace

void ValidationReport::throw_if_invalid() const
{
    if (issues.empty()) return;
    throw Error(issues.front().code, issues.front().message);
}

std::string ValidationReport::summary() const
{
    std::ostringstream out;
    out << (ok() ? "valid" : "invalid") << ": checked " << epsilons_checked.size()
        << " epsilon value(s); min a_eps = " << min_a_largest_eps << " (largest eps), "
        << min_a_smallest_eps << " (smallest eps)\n";
    for (const auto& i : issues) out << "  error[" << to_string(i.code) << "]: " << i.message << "\n";
    for (const auto& w : warnings) out << "  warning: " << w << "\n";
    return out.str();
}

ValidationReport validate(const ProblemSpec& spec, const MollifierNet& net,
                          const GridPolicy& grids, InstanceOptions options)
{
    ValidationReport report;
    const auto& eps = net.epsilons();
    if (eps.empty()) throw Error(ErrorCode::InvalidArgument, "mollifier net has no epsilon values");
    report.epsilons_checked = eps;

    for (double e : eps) check_resolution(report, e, grids.for_epsilon(e, spec.T), spec.T);

    const double largest = eps.front();
    const double smallest = eps.back();
    const auto big = assemble(spec, net, largest, grids.for_epsilon(largest, spec.T), options);
    check_instance(report, big);
    report.min_a_largest_eps = inspect(big).min_a;
    if (smallest != largest) {
        const auto small =
            assemble(spec, net, smallest, grids.for_epsilon(smallest, spec.T), options);
        check_instance(report, small);
        report.min_a_smallest_eps = inspect(small).min_a;
    } else {
        report.min_a_smallest_eps = report.min_a_largest_eps;
    }
    return report;
}

ValidationReport validate(const ProblemSpec& spec, const MollifierNet& net, GridSpec grid,
                          InstanceOptions options)
{
    return validate(spec, net, GridPolicy::fixed_grid(grid), options);
}

RegularizedInstance build_instance(const ProblemSpec& spec, const MollifierNet& net,
                                   double epsilon, GridSpec grid, InstanceOptions options)
{
    ValidationReport report;
    check_resolution(report, epsilon, grid, spec.T);
    report.throw_if_invalid();
    auto inst = assemble(spec, net, epsilon, grid, options);
    check_instance(report, inst);
    report.throw_if_invalid();
    return inst;
}

// ---------------------------------------------------------------------------
// Lifting

std::vector<double> derivative(std::span<const double> v, double step)
{
    const std::size_t n = v.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    if (n == 2) {
        d[0] = d[1] = (v[1] - v[0]) / step;
        return d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * step);
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * step);
    d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * step);
    return d;
}

Field2D Lifting::psi_field() const
{
    Field2D out(nt + 1, nx + 1);
    for (std::size_t n = 0; n <= nt; ++n) {
        for (std::size_t i = 0; i <= nx; ++i) {
            const double x = i == nx ? 1.0 : static_cast<double>(i) / static_cast<double>(nx);
            out(n, i) = psi(n, x);
        }
    }
    return out;
}

LiftResult lift(const RegularizedInstance& inst)
{
    if (inst.g0.size() != inst.nt + 1 || inst.g1.size() != inst.nt + 1 ||
        inst.f.rows() != inst.nt + 1 || inst.f.cols() != inst.nx + 1 ||
        inst.q.size() != inst.nx + 1 || inst.u0.size() != inst.nx + 1) {
        throw Error(ErrorCode::InvalidArgument, "instance shapes do not match its grid");
    }
    LiftResult out;
    Lifting& L = out.lifting;
    L.nx = inst.nx;
    L.nt = inst.nt;
    L.g0 = inst.g0;
    L.g1 = inst.g1;
    L.dg0 = derivative(inst.g0, inst.tau);
    L.dg1 = derivative(inst.g1, inst.tau);

    out.f_tilde = Field2D(inst.nt + 1, inst.nx + 1);
    std::vector<double> ax;
    for (std::size_t n = 0; n <= inst.nt; ++n) {
        if (n == 0 || !inst.a_time_independent) ax = derivative(inst.a.row(n), inst.h);
        const double jump = L.dpsi_dx(n);
        for (std::size_t i = 0; i <= inst.nx; ++i) {
            const double x = inst.x(i);
            out.f_tilde(n, i) = inst.f(n, i) - L.dpsi_dt(n, x) + (ax[i] - inst.b(n, i)) * jump -
                                inst.q[i] * L.psi(n, x);
        }
    }
    out.w0.resize(inst.nx + 1);
    for (std::size_t i = 0; i <= inst.nx; ++i) out.w0[i] = inst.u0[i] - L.psi(0, inst.x(i));
    return out;
}

RegularizedInstance homogenized(const RegularizedInstance& inst, const LiftResult& lifted)
{
    RegularizedInstance out = inst;
    out.f = lifted.f_tilde;
    out.u0 = lifted.w0;
    std::fill(out.g0.begin(), out.g0.end(), 0.0);
    std::fill(out.g1.begin(), out.g1.end(), 0.0);
    return out;
}

}  // namespace vw
