#pragma once

#include <cstddef>
#include <vector>

#include "vw/fdsolver.hpp"
#include "vw/linalg.hpp"
#include "vw/problem.hpp"

namespace vw {

/// w_k(x) = sqrt(2) sin(k pi x), k = 1..m
double sine_mode(std::size_t k, double x);
double sine_mode_dx(std::size_t k, double x);

/// Linear ODE system d' + K(t) d = F(t) of the sine-basis Galerkin
/// projection. Matrices are stored row-per-equation: entry (k-1, l-1) of A
/// is a^{lk} = (a w_l', w_k'), of B is b^{lk} = (b w_l', w_k), of G is
/// g^{lk} = (q w_l, w_k).
struct GalerkinSystem {
    std::size_t m = 0;
    std::size_t nx = 0;
    std::size_t nt = 0;
    double T = 0.0;
    double tau = 0.0;

    /// One matrix when the coefficient is time independent, nt+1 otherwise.
    std::vector<Field2D> A;
    std::vector<Field2D> B;
    Field2D G;
    Field2D load;  ///< (nt+1) x m, f^k(t_n)
    std::vector<double> d0;

    const Field2D& A_at(std::size_t n) const { return A.size() == 1 ? A.front() : A[n]; }
    const Field2D& B_at(std::size_t n) const { return B.size() == 1 ? B.front() : B[n]; }
    bool time_independent() const { return A.size() == 1 && B.size() == 1; }

    double a_lk(std::size_t n, std::size_t l, std::size_t k) const { return A_at(n)(k - 1, l - 1); }
    double b_lk(std::size_t n, std::size_t l, std::size_t k) const { return B_at(n)(k - 1, l - 1); }
    double g_lk(std::size_t l, std::size_t k) const { return G(k - 1, l - 1); }
};

/// Assembles the system for an instance with zero boundary data. Sampled
/// coefficients are interpolated linearly between grid nodes and integrated
/// against the exact basis with 5-point Gauss-Legendre per cell.
/// Throws QuadratureUnderResolved when m*h > 1/4 and InvalidArgument when
/// the boundary data are not zero (lift first).
GalerkinSystem assemble(const RegularizedInstance& inst, std::size_t m);

/// Coefficient trajectory d_m^k(t_n), row n, column k-1.
struct CoefficientTrajectory {
    std::size_t m = 0;
    std::size_t nt = 0;
    double tau = 0.0;
    double T = 0.0;
    Field2D d;
};

/// Implicit Euler on the instance time grid with dense solves.
CoefficientTrajectory integrate(const GalerkinSystem& system);

/// u_m(t_n, x_i) = sum_k d^k(t_n) w_k(x_i) on a uniform grid with nx cells.
SolutionTrajectory reconstruct(const CoefficientTrajectory& coeffs, std::size_t nx);

}  // namespace vw
