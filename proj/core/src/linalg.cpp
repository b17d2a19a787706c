#include "vw/linalg.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "vw/error.hpp"

namespace vw {

std::vector<double> Tridiagonal::apply(std::span<const double> x) const
{
    const std::size_t n = size();
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = diag[i] * x[i];
        if (i > 0) s += lower[i] * x[i - 1];
        if (i + 1 < n) s += upper[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

namespace {

[[noreturn]] void throw_singular(std::size_t row, double pivot)
{
    std::ostringstream msg;
    msg << "pivot " << pivot << " at row " << row << " below floor";
    throw Error(ErrorCode::SingularSystem, msg.str());
}

}  // namespace

std::vector<double> solve_tridiagonal(const Tridiagonal& m, std::span<const double> rhs,
                                      double pivot_floor)
{
    const std::size_t n = m.size();
    if (rhs.size() != n) {
        throw Error(ErrorCode::InvalidArgument, "tridiagonal rhs size mismatch");
    }
    std::vector<double> c(n, 0.0);
    std::vector<double> d(n, 0.0);

    double pivot = m.diag[0];
    if (std::abs(pivot) < pivot_floor) throw_singular(0, pivot);
    c[0] = n > 1 ? m.upper[0] / pivot : 0.0;
    d[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = m.diag[i] - m.lower[i] * c[i - 1];
        if (std::abs(pivot) < pivot_floor) throw_singular(i, pivot);
        c[i] = (i + 1 < n) ? m.upper[i] / pivot : 0.0;
        d[i] = (rhs[i] - m.lower[i] * d[i - 1]) / pivot;
    }
    std::vector<double> x(n);
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

std::vector<double> solve_dense(Field2D m, std::vector<double> rhs, double pivot_floor)
{
    const std::size_t n = m.rows();
    if (m.cols() != n || rhs.size() != n) {
        throw Error(ErrorCode::InvalidArgument, "dense system shape mismatch");
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(m(r, k)) > std::abs(m(p, k))) p = r;
        }
        if (std::abs(m(p, k)) < pivot_floor) throw_singular(k, m(p, k));
        if (p != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(p, c));
            std::swap(rhs[k], rhs[p]);
        }
        const double inv = 1.0 / m(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const double factor = m(r, k) * inv;
            if (factor == 0.0) continue;
            for (std::size_t c = k; c < n; ++c) m(r, c) -= factor * m(k, c);
            rhs[r] -= factor * rhs[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t k = n; k-- > 0;) {
        double s = rhs[k];
        for (std::size_t c = k + 1; c < n; ++c) s -= m(k, c) * x[c];
        x[k] = s / m(k, k);
    }
    return x;
}

}  // namespace vw
