#include "vw/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vw/error.hpp"
#include "vw/quadrature.hpp"

namespace vw {

namespace {

double max_abs(std::span<const double> v)
{
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double l2_space(std::span<const double> v, double h)
{
    return std::sqrt(quad::trapezoid_sq(v, h));
}

/// Fills the two end entries of an interior-only stencil by linear
/// extrapolation.
void extrapolate_ends(std::vector<double>& v)
{
    const std::size_t n = v.size();
    if (n < 4) {
        if (n >= 3) v[0] = v[n - 1] = v[1];
        return;
    }
    v[0] = 2.0 * v[1] - v[2];
    v[n - 1] = 2.0 * v[n - 2] - v[n - 3];
}

std::vector<double> second_difference(std::span<const double> u, double h)
{
    std::vector<double> d(u.size(), 0.0);
    for (std::size_t i = 1; i + 1 < u.size(); ++i) d[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
    extrapolate_ends(d);
    return d;
}

std::vector<double> flux_difference(std::span<const double> u, std::span<const double> a, double h)
{
    std::vector<double> d(u.size(), 0.0);
    for (std::size_t i = 1; i + 1 < u.size(); ++i) {
        const double ap = 0.5 * (a[i] + a[i + 1]);
        const double am = 0.5 * (a[i] + a[i - 1]);
        d[i] = (ap * (u[i + 1] - u[i]) - am * (u[i] - u[i - 1])) / (h * h);
    }
    extrapolate_ends(d);
    return d;
}

/// u_t at node n: forward difference, backward at the last node.
std::vector<double> time_difference(const Field2D& u, std::size_t n, double tau)
{
    const std::size_t nt = u.rows() - 1;
    const std::size_t lo = n < nt ? n : n - 1;
    const auto a = u.row(lo);
    const auto b = u.row(lo + 1);
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = (b[i] - a[i]) / tau;
    return d;
}

double safe_ratio(double lhs, double rhs)
{
    if (rhs > 0.0) return lhs / rhs;
    return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

double h1_time(std::span<const double> g, double tau)
{
    const auto dg = derivative(g, tau);
    return std::sqrt(quad::trapezoid_sq(g, tau) + quad::trapezoid_sq(dg, tau));
}

}  // namespace

SolutionNorms solution_norms(const SolutionTrajectory& traj)
{
    SolutionNorms out;
    const std::size_t nt = traj.nt;
    const double h = traj.h;
    std::vector<double> l2(nt + 1), h1(nt + 1), dt(nt + 1), dth(nt + 1), dxx(nt + 1);
    for (std::size_t n = 0; n <= nt; ++n) {
        const auto u = traj.u.row(n);
        l2[n] = l2_space(u, h);
        h1[n] = l2_space(derivative(u, h), h);
        dxx[n] = l2_space(second_difference(u, h), h);
        if (nt > 0) {
            const auto ut = time_difference(traj.u, n, traj.tau);
            dt[n] = l2_space(ut, h);
            dth[n] = hneg_norm(std::span<const double>(ut).subspan(1, ut.size() - 2), h);
        }
    }
    out.linf_l2 = *std::max_element(l2.begin(), l2.end());
    out.linf_h1 = *std::max_element(h1.begin(), h1.end());
    out.l2_l2 = std::sqrt(quad::trapezoid_sq(l2, traj.tau));
    out.l2_h1 = std::sqrt(quad::trapezoid_sq(h1, traj.tau));
    out.dtu_l2 = std::sqrt(quad::trapezoid_sq(dt, traj.tau));
    out.dtu_hneg = std::sqrt(quad::trapezoid_sq(dth, traj.tau));
    out.dxx = std::sqrt(quad::trapezoid_sq(dxx, traj.tau));
    return out;
}

DataNorms data_norms(const RegularizedInstance& inst)
{
    DataNorms d;
    const double h = inst.h;
    const double tau = inst.tau;
    d.u0_l2 = l2_space(inst.u0, h);
    d.u0_h10 = l2_space(derivative(inst.u0, h), h);

    std::vector<double> f_t(inst.nt + 1), a_t(inst.nt + 1);
    for (std::size_t n = 0; n <= inst.nt; ++n) {
        f_t[n] = l2_space(inst.f.row(n), h);
        a_t[n] = l2_space(inst.a.row(n), h);
        d.dxa_inf = std::max(d.dxa_inf, max_abs(derivative(inst.a.row(n), h)));
        d.dxb_inf = std::max(d.dxb_inf, max_abs(derivative(inst.b.row(n), h)));
    }
    d.f_l2l2 = std::sqrt(quad::trapezoid_sq(f_t, tau));
    d.a_linf_l2 = *std::max_element(a_t.begin(), a_t.end());
    d.g0_h1 = h1_time(inst.g0, tau);
    d.g1_h1 = h1_time(inst.g1, tau);
    d.a_inf = max_abs(inst.a.data());
    d.b_inf = max_abs(inst.b.data());
    d.q_inf = max_abs(inst.q);

    if (!inst.a_time_independent && inst.nt > 0) {
        std::vector<double> column(inst.nt + 1);
        for (std::size_t i = 0; i <= inst.nx; ++i) {
            for (std::size_t n = 0; n <= inst.nt; ++n) column[n] = inst.a(n, i);
            d.dta_inf = std::max(d.dta_inf, max_abs(derivative(column, tau)));
        }
    }
    return d;
}

std::string_view to_string(Estimate which)
{
    switch (which) {
    case Estimate::Energy: return "energy";
    case Estimate::Regularity: return "regularity";
    case Estimate::BoundaryEnergy: return "boundary_energy";
    case Estimate::BoundaryRegularity: return "boundary_regularity";
    }
    return "unknown";
}

const EstimateCheck* EnergyReport::find(Estimate which) const
{
    for (const auto& e : estimates) {
        if (e.which == which) return &e;
    }
    return nullptr;
}

EnergyReport energy_norms(const SolutionTrajectory& traj, const RegularizedInstance& inst)
{
    if (traj.nx != inst.nx || traj.nt != inst.nt) {
        throw Error(ErrorCode::InvalidArgument, "trajectory grid does not match instance");
    }
    EnergyReport r;
    r.norms = solution_norms(traj);
    r.data = data_norms(inst);
    r.alpha = inst.alpha;
    r.T = inst.T;

    const double h = inst.h;
    std::vector<double> sq(inst.nx + 1);
    for (double q : inst.q) r.q_clip = std::max(r.q_clip, q < 0.0 ? -q : 0.0);

    std::vector<double> weighted(inst.nt + 1), flux(inst.nt + 1);
    for (std::size_t n = 0; n <= inst.nt; ++n) {
        const auto u = traj.u.row(n);
        for (std::size_t i = 0; i <= inst.nx; ++i) {
            sq[i] = std::max(inst.q[i], 0.0) * u[i] * u[i];
        }
        weighted[n] = std::sqrt(std::max(quad::trapezoid(sq, h), 0.0));
        flux[n] = l2_space(flux_difference(u, inst.a.row(n), h), h);
    }
    r.weighted = std::sqrt(quad::trapezoid_sq(weighted, inst.tau));
    r.dx_a_dx = std::sqrt(quad::trapezoid_sq(flux, inst.tau));
    return r;
}

EstimateCheck check_estimate(const EnergyReport& r, Estimate which)
{
    const auto& n = r.norms;
    const auto& d = r.data;
    const double sa = std::sqrt(r.alpha);
    const double gronwall = std::exp(r.T * d.dxb_inf);

    // Coefficient factor shared by the L2 energy bounds.
    const double energy_factor = 1.0 + (d.a_inf + d.b_inf) / sa + std::sqrt(d.q_inf);
    // Coefficient factor of the second-derivative bounds.
    const double second_factor =
        gronwall / r.alpha *
        (std::sqrt(d.a_linf_l2) + d.q_inf + (std::sqrt(d.dta_inf) + d.dxa_inf + d.b_inf) / sa);
    const double g_data = d.g0_h1 + d.g1_h1;

    EstimateCheck c;
    c.which = which;
    switch (which) {
    case Estimate::Energy:
        c.lhs = n.linf_l2 + sa * n.l2_h1 + r.weighted + n.dtu_hneg;
        c.rhs = gronwall * (1.0 + d.a_inf / sa + d.b_inf + std::sqrt(d.q_inf)) *
                (d.u0_l2 + d.f_l2l2);
        break;
    case Estimate::Regularity:
        c.lhs = std::max({n.dtu_l2, std::sqrt(2.0 * r.alpha) * n.linf_h1, r.dx_a_dx, n.dxx});
        c.rhs = second_factor * energy_factor * (d.u0_h10 + d.f_l2l2);
        break;
    case Estimate::BoundaryEnergy:
        c.lhs = n.linf_l2 + sa * n.l2_h1 + r.weighted;
        c.rhs = gronwall * (1.0 + std::sqrt(d.a_inf) + std::sqrt(d.q_inf)) *
                (d.u0_l2 + d.f_l2l2 + g_data);
        break;
    case Estimate::BoundaryRegularity:
        c.lhs = std::max({n.dtu_l2, r.dx_a_dx, n.dxx});
        c.rhs = second_factor * energy_factor * (d.u0_h10 + d.f_l2l2 + g_data);
        break;
    }
    c.ratio = safe_ratio(c.lhs, c.rhs);
    return c;
}

void evaluate_estimates(EnergyReport& report)
{
    report.estimates.clear();
    for (auto which : {Estimate::Energy, Estimate::Regularity, Estimate::BoundaryEnergy, Estimate::BoundaryRegularity}) {
        report.estimates.push_back(check_estimate(report, which));
    }
}

double hneg_norm(std::span<const double> v, double h)
{
    const std::size_t n = v.size();
    if (n == 0) return 0.0;
    if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) return 0.0;
    Tridiagonal L(n);
    const double inv = 1.0 / (h * h);
    for (std::size_t i = 0; i < n; ++i) {
        L.lower[i] = -inv;
        L.diag[i] = 2.0 * inv;
        L.upper[i] = -inv;
    }
    const auto w = solve_tridiagonal(L, v);
    std::vector<double> full(n + 2, 0.0);
    std::copy(w.begin(), w.end(), full.begin() + 1);
    return discrete_h1_seminorm(full, h);
}

double discrete_h1_seminorm(std::span<const double> w, double h)
{
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const double d = (w[i + 1] - w[i]) / h;
        s += d * d;
    }
    return std::sqrt(s * h);
}

double discrete_inner(std::span<const double> v, std::span<const double> w, double h)
{
    if (v.size() != w.size()) throw Error(ErrorCode::InvalidArgument, "inner product size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * w[i];
    return s * h;
}

}  // namespace vw
