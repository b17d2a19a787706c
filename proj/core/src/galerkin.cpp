#include "vw/galerkin.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vw/error.hpp"
#include "vw/quadrature.hpp"

namespace vw {

using std::numbers::pi;

double sine_mode(std::size_t k, double x)
{
    return std::numbers::sqrt2 * std::sin(static_cast<double>(k) * pi * x);
}

double sine_mode_dx(std::size_t k, double x)
{
    const double kp = static_cast<double>(k) * pi;
    return std::numbers::sqrt2 * kp * std::cos(kp * x);
}

namespace {

/// Basis values and derivatives at every Gauss point of every cell, plus the
/// linear-interpolation weights that map node samples to those points.
struct QuadratureTable {
    std::size_t points = 0;
    std::size_t m = 0;
    std::vector<double> weight;  // quadrature weight incl. h
    std::vector<std::size_t> left_node;
    std::vector<double> right_share;  // s in [0,1]
    Field2D w;                        // points x m
    Field2D dw;                       // points x m

    QuadratureTable(std::size_t nx, std::size_t modes) : m(modes)
    {
        const double h = 1.0 / static_cast<double>(nx);
        points = nx * 5;
        weight.resize(points);
        left_node.resize(points);
        right_share.resize(points);
        w = Field2D(points, m);
        dw = Field2D(points, m);
        for (std::size_t c = 0; c < nx; ++c) {
            for (std::size_t g = 0; g < 5; ++g) {
                const std::size_t p = c * 5 + g;
                const double s = quad::kGauss5Nodes[g];
                const double x = (static_cast<double>(c) + s) * h;
                weight[p] = quad::kGauss5Weights[g] * h;
                left_node[p] = c;
                right_share[p] = s;
                for (std::size_t k = 1; k <= m; ++k) {
                    w(p, k - 1) = sine_mode(k, x);
                    dw(p, k - 1) = sine_mode_dx(k, x);
                }
            }
        }
    }

    std::vector<double> interpolate(std::span<const double> nodal) const
    {
        std::vector<double> out(points);
        for (std::size_t p = 0; p < points; ++p) {
            const double s = right_share[p];
            out[p] = (1.0 - s) * nodal[left_node[p]] + s * nodal[left_node[p] + 1];
        }
        return out;
    }

    /// M(k, l) = sum_p weight * c * left(p, l) * right(p, k)
    Field2D bilinear(std::span<const double> nodal, const Field2D& left, const Field2D& right) const
    {
        const auto c = interpolate(nodal);
        Field2D M(m, m, 0.0);
        std::vector<double> scaled(m);
        for (std::size_t p = 0; p < points; ++p) {
            const double wc = weight[p] * c[p];
            if (wc == 0.0) continue;
            const auto L = left.row(p);
            const auto R = right.row(p);
            for (std::size_t l = 0; l < m; ++l) scaled[l] = wc * L[l];
            for (std::size_t k = 0; k < m; ++k) {
                const double rk = R[k];
                auto row = M.row(k);
                for (std::size_t l = 0; l < m; ++l) row[l] += scaled[l] * rk;
            }
        }
        return M;
    }

    std::vector<double> project(std::span<const double> nodal) const
    {
        const auto c = interpolate(nodal);
        std::vector<double> out(m, 0.0);
        for (std::size_t p = 0; p < points; ++p) {
            const double wc = weight[p] * c[p];
            const auto W = w.row(p);
            for (std::size_t k = 0; k < m; ++k) out[k] += wc * W[k];
        }
        return out;
    }
};

}  // namespace

GalerkinSystem assemble(const RegularizedInstance& inst, std::size_t m)
{
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "Galerkin basis size must be positive");
    if (static_cast<double>(m) * inst.h > 0.25 * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "m*h = " << static_cast<double>(m) * inst.h
            << " > 1/4: fewer than 4 cells per highest basis wave";
        throw Error(ErrorCode::QuadratureUnderResolved, msg.str());
    }
    const bool zero_boundary =
        std::all_of(inst.g0.begin(), inst.g0.end(), [](double v) { return v == 0.0; }) &&
        std::all_of(inst.g1.begin(), inst.g1.end(), [](double v) { return v == 0.0; });
    if (!zero_boundary) {
        throw Error(ErrorCode::InvalidArgument,
                    "Galerkin assembly needs zero boundary data; lift the instance first");
    }

    const QuadratureTable table(inst.nx, m);
    GalerkinSystem sys;
    sys.m = m;
    sys.nx = inst.nx;
    sys.nt = inst.nt;
    sys.T = inst.T;
    sys.tau = inst.tau;

    const std::size_t a_count = inst.a_time_independent ? 1 : inst.nt + 1;
    const std::size_t b_count = inst.b_time_independent ? 1 : inst.nt + 1;
    sys.A.reserve(a_count);
    sys.B.reserve(b_count);
    for (std::size_t n = 0; n < a_count; ++n) sys.A.push_back(table.bilinear(inst.a.row(n), table.dw, table.dw));
    for (std::size_t n = 0; n < b_count; ++n) sys.B.push_back(table.bilinear(inst.b.row(n), table.dw, table.w));
    sys.G = table.bilinear(inst.q, table.w, table.w);

    sys.load = Field2D(inst.nt + 1, m);
    for (std::size_t n = 0; n <= inst.nt; ++n) {
        const auto fk = table.project(inst.f.row(n));
        std::copy(fk.begin(), fk.end(), sys.load.row(n).begin());
    }
    sys.d0 = table.project(inst.u0);
    return sys;
}

CoefficientTrajectory integrate(const GalerkinSystem& sys)
{
    CoefficientTrajectory out;
    out.m = sys.m;
    out.nt = sys.nt;
    out.tau = sys.tau;
    out.T = sys.T;
    out.d = Field2D(sys.nt + 1, sys.m);
    std::copy(sys.d0.begin(), sys.d0.end(), out.d.row(0).begin());

    const std::size_t m = sys.m;
    for (std::size_t n = 0; n < sys.nt; ++n) {
        const Field2D& A = sys.A_at(n + 1);
        const Field2D& B = sys.B_at(n + 1);
        Field2D M(m, m);
        for (std::size_t k = 0; k < m; ++k) {
            for (std::size_t l = 0; l < m; ++l) {
                M(k, l) = sys.tau * (A(k, l) + B(k, l) + sys.G(k, l)) + (k == l ? 1.0 : 0.0);
            }
        }
        std::vector<double> rhs(m);
        const auto prev = out.d.row(n);
        const auto F = sys.load.row(n + 1);
        for (std::size_t k = 0; k < m; ++k) rhs[k] = prev[k] + sys.tau * F[k];
        const auto next = solve_dense(std::move(M), std::move(rhs));
        std::copy(next.begin(), next.end(), out.d.row(n + 1).begin());
    }
    return out;
}

SolutionTrajectory reconstruct(const CoefficientTrajectory& coeffs, std::size_t nx)
{
    const auto start = std::chrono::steady_clock::now();
    SolutionTrajectory traj;
    traj.nx = nx;
    traj.nt = coeffs.nt;
    traj.h = 1.0 / static_cast<double>(nx);
    traj.tau = coeffs.tau;
    traj.T = coeffs.T;
    traj.theta = 1.0;
    traj.u = Field2D(coeffs.nt + 1, nx + 1);

    Field2D basis(nx + 1, coeffs.m);
    for (std::size_t i = 0; i <= nx; ++i) {
        for (std::size_t k = 1; k <= coeffs.m; ++k) basis(i, k - 1) = sine_mode(k, traj.x(i));
    }
    for (std::size_t n = 0; n <= coeffs.nt; ++n) {
        const auto d = coeffs.d.row(n);
        auto row = traj.u.row(n);
        for (std::size_t i = 0; i <= nx; ++i) {
            double s = 0.0;
            const auto b = basis.row(i);
            for (std::size_t k = 0; k < coeffs.m; ++k) s += d[k] * b[k];
            row[i] = s;
        }
        // sin(k pi) is not exactly zero in floating point.
        row[0] = 0.0;
        row[nx] = 0.0;
    }
    const auto data = traj.u.data();
    const auto [mn, mx] = std::minmax_element(data.begin(), data.end());
    traj.min_value = *mn;
    traj.max_value = *mx;
    traj.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return traj;
}

}  // namespace vw
