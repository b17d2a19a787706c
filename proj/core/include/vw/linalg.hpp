#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vw {

/// Row-major (rows x cols) array. Used for space-time fields indexed
/// [time node][space node] and for small dense matrices.
class Field2D {
public:
    Field2D() = default;
    Field2D(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    bool operator==(const Field2D&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Tridiagonal matrix stored by diagonals. lower[0] and upper[n-1] are unused.
struct Tridiagonal {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    explicit Tridiagonal(std::size_t n = 0) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}

    std::size_t size() const noexcept { return diag.size(); }

    /// y = M x
    std::vector<double> apply(std::span<const double> x) const;
};

/// Thomas elimination. Throws Error(SingularSystem) when a pivot falls below
/// `pivot_floor` in magnitude.
std::vector<double> solve_tridiagonal(const Tridiagonal& m, std::span<const double> rhs,
                                      double pivot_floor = 1e-14);

/// Dense Gaussian elimination with partial pivoting on a square Field2D.
std::vector<double> solve_dense(Field2D m, std::vector<double> rhs,
                                double pivot_floor = 1e-14);

}  // namespace vw
