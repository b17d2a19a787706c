#pragma once

#include <span>

namespace vw {

/// Least-squares fit of log(value) = log(C) + slope * log(eps).
struct PowerLawFit {
    double slope = 0.0;
    double constant = 0.0;  ///< C
    double r_squared = 0.0;
    std::size_t points = 0;  ///< samples that entered the fit
    bool valid = false;      ///< at least two usable samples

    /// Growth exponent N of value ~ C eps^{-N}.
    double growth() const noexcept { return -slope; }
};

/// Samples with value below `floor` are excluded. A flat series whose
/// residual is negligible reports R^2 = 1.
PowerLawFit fit_power_law(std::span<const double> eps, std::span<const double> values,
                          double floor = 1e-12);

}  // namespace vw
