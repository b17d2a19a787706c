#include "vw/fdsolver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "vw/error.hpp"

namespace vw {

std::size_t SolutionTrajectory::time_index(double t) const
{
    if (tau <= 0.0) return 0;
    const double k = std::round(t / tau);
    if (k <= 0.0) return 0;
    return std::min(nt, static_cast<std::size_t>(k));
}

Tridiagonal discretize_operator(const RegularizedInstance& inst, std::size_t n)
{
    const std::size_t N = inst.nx + 1;
    const double h = inst.h;
    const double h2 = h * h;
    const auto a = inst.a.row(n);
    const auto b = inst.b.row(n);

    Tridiagonal L(N);
    L.diag[0] = 1.0;
    L.diag[N - 1] = 1.0;
    for (std::size_t i = 1; i + 1 < N; ++i) {
        const double a_minus = 0.5 * (a[i - 1] + a[i]);
        const double a_plus = 0.5 * (a[i] + a[i + 1]);
        const double drift = b[i] / (2.0 * h);
        L.lower[i] = -a_minus / h2 - drift;
        L.diag[i] = (a_minus + a_plus) / h2 + inst.q[i];
        L.upper[i] = -a_plus / h2 + drift;
    }
    return L;
}

namespace {

void check_theta(const SchemeConfig& scheme)
{
    if (!(scheme.theta >= 0.5 && scheme.theta <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "theta must lie in [1/2, 1]");
    }
}

std::vector<double> advance(std::span<const double> u_n, const RegularizedInstance& inst,
                            std::size_t n, double theta, const Tridiagonal& L_now,
                            const Tridiagonal& L_next)
{
    const std::size_t N = inst.nx + 1;
    const double tau = inst.tau;

    std::vector<double> rhs(N);
    const auto f_now = inst.f.row(n);
    const auto f_next = inst.f.row(n + 1);
    for (std::size_t i = 1; i + 1 < N; ++i) {
        double Lu = L_now.diag[i] * u_n[i] + L_now.lower[i] * u_n[i - 1] +
                    L_now.upper[i] * u_n[i + 1];
        rhs[i] = u_n[i] - (1.0 - theta) * tau * Lu +
                 tau * (theta * f_next[i] + (1.0 - theta) * f_now[i]);
    }
    rhs[0] = inst.g0[n + 1];
    rhs[N - 1] = inst.g1[n + 1];

    Tridiagonal M(N);
    M.diag[0] = 1.0;
    M.diag[N - 1] = 1.0;
    for (std::size_t i = 1; i + 1 < N; ++i) {
        M.lower[i] = theta * tau * L_next.lower[i];
        M.diag[i] = 1.0 + theta * tau * L_next.diag[i];
        M.upper[i] = theta * tau * L_next.upper[i];
    }
    return solve_tridiagonal(M, rhs);
}

}  // namespace

std::vector<double> step(std::span<const double> u_n, const RegularizedInstance& inst,
                         std::size_t n, const SchemeConfig& scheme)
{
    check_theta(scheme);
    if (n >= inst.nt) throw Error(ErrorCode::InvalidArgument, "no time step after the final node");
    if (u_n.size() != inst.nx + 1) throw Error(ErrorCode::InvalidArgument, "state size mismatch");
    return advance(u_n, inst, n, scheme.theta, discretize_operator(inst, n),
                   discretize_operator(inst, n + 1));
}

SolutionTrajectory solve(const RegularizedInstance& inst, const SchemeConfig& scheme)
{
    check_theta(scheme);
    const auto start = std::chrono::steady_clock::now();

    SolutionTrajectory traj;
    traj.nx = inst.nx;
    traj.nt = inst.nt;
    traj.h = inst.h;
    traj.tau = inst.tau;
    traj.T = inst.T;
    traj.theta = scheme.theta;
    traj.u = Field2D(inst.nt + 1, inst.nx + 1);

    auto row0 = traj.u.row(0);
    std::copy(inst.u0.begin(), inst.u0.end(), row0.begin());
    row0[0] = inst.g0[0];
    row0[inst.nx] = inst.g1[0];

    const bool frozen = inst.a_time_independent && inst.b_time_independent;
    Tridiagonal L_now = discretize_operator(inst, 0);
    for (std::size_t n = 0; n < inst.nt; ++n) {
        Tridiagonal L_next = frozen ? L_now : discretize_operator(inst, n + 1);
        std::vector<double> next;
        try {
            next = advance(traj.u.row(n), inst, n, scheme.theta, L_now, L_next);
        } catch (const Error& e) {
            std::ostringstream msg;
            msg << e.what() << " (time step " << n << ", eps=" << inst.epsilon << ")";
            throw Error(e.code(), msg.str());
        }
        std::copy(next.begin(), next.end(), traj.u.row(n + 1).begin());
        if (!frozen) L_now = std::move(L_next);
    }

    const auto data = traj.u.data();
    const auto [mn, mx] = std::minmax_element(data.begin(), data.end());
    traj.min_value = *mn;
    traj.max_value = *mx;
    if (!std::all_of(data.begin(), data.end(), [](double v) { return std::isfinite(v); })) {
        traj.warnings.push_back("trajectory contains non-finite values");
    }

    double max_b = 0.0;
    double min_a = inst.a.data().empty() ? 0.0 : inst.a.data()[0];
    for (double v : inst.b.data()) max_b = std::max(max_b, std::abs(v));
    for (double v : inst.a.data()) min_a = std::min(min_a, v);
    if (min_a > 0.0 && max_b * inst.h / (2.0 * min_a) > 1.0) {
        std::ostringstream msg;
        msg << "cell Peclet number " << max_b * inst.h / (2.0 * min_a) << " exceeds 1";
        traj.warnings.push_back(msg.str());
    }
    traj.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return traj;
}

SolutionTrajectory add_lifting(SolutionTrajectory w, const Lifting& lifting)
{
    if (lifting.nx != w.nx || lifting.nt != w.nt) {
        throw Error(ErrorCode::InvalidArgument, "lifting grid does not match trajectory");
    }
    for (std::size_t n = 0; n <= w.nt; ++n) {
        auto row = w.u.row(n);
        for (std::size_t i = 0; i <= w.nx; ++i) row[i] += lifting.psi(n, w.x(i));
        // Boundary nodes carry the data exactly.
        row[0] = lifting.g0[n];
        row[w.nx] = lifting.g1[n];
    }
    const auto data = w.u.data();
    const auto [mn, mx] = std::minmax_element(data.begin(), data.end());
    w.min_value = *mn;
    w.max_value = *mx;
    return w;
}

}  // namespace vw
