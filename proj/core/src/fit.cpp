#include "vw/fit.hpp"

#include <cmath>
#include <vector>

#include "vw/error.hpp"

namespace vw {

PowerLawFit fit_power_law(std::span<const double> eps, std::span<const double> values,
                          double floor)
{
    if (eps.size() != values.size()) {
        throw Error(ErrorCode::InvalidArgument, "fit: epsilon and value counts differ");
    }
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!(values[i] >= floor) || !std::isfinite(values[i]) || !(eps[i] > 0.0)) continue;
        x.push_back(std::log(eps[i]));
        y.push_back(std::log(values[i]));
    }
    PowerLawFit fit;
    fit.points = x.size();
    if (x.size() < 2) return fit;

    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0) return fit;

    fit.slope = sxy / sxx;
    fit.constant = std::exp(my - fit.slope * mx);
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (my + fit.slope * (x[i] - mx));
        ss_res += r * r;
    }
    // Log spread below 1e-6 counts as flat.
    constexpr double kFlat = 1e-12;
    if (syy <= kFlat * n) {
        fit.r_squared = ss_res <= kFlat * n ? 1.0 : 0.0;
    } else {
        fit.r_squared = 1.0 - ss_res / syy;
    }
    fit.valid = true;
    return fit;
}

}  // namespace vw
