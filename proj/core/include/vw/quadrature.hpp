#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace vw::quad {

using Integrand = std::function<double(double)>;

/// Composite Simpson rule on [a, b]; `panels` is rounded up to an even count.
double simpson(const Integrand& f, double a, double b, std::size_t panels);

/// Adaptive Simpson with Richardson correction. Stops when the local error
/// estimate drops below `tol` or the recursion depth reaches `max_depth`.
double adaptive_simpson(const Integrand& f, double a, double b,
                        double tol = 1e-13, int max_depth = 60);

/// Trapezoid rule for samples on a uniform grid of spacing h.
double trapezoid(std::span<const double> values, double h);

/// Trapezoid rule for the square of the samples (used for discrete L2 norms).
double trapezoid_sq(std::span<const double> values, double h);

/// Nodes/weights of the 5-point Gauss-Legendre rule on [0, 1].
inline constexpr double kGauss5Nodes[5] = {
    0.04691007703066800, 0.23076534494715845, 0.5,
    0.76923465505284155, 0.95308992296933200};
inline constexpr double kGauss5Weights[5] = {
    0.11846344252809454, 0.23931433524968324, 0.28444444444444444,
    0.23931433524968324, 0.11846344252809454};

}  // namespace vw::quad
