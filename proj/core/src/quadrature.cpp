#include "vw/quadrature.hpp"

#include <cmath>

namespace vw::quad {

double simpson(const Integrand& f, double a, double b, std::size_t panels)
{
    if (panels < 2) panels = 2;
    if (panels % 2 != 0) ++panels;
    const double h = (b - a) / static_cast<double>(panels);
    double sum = f(a) + f(b);
    for (std::size_t i = 1; i < panels; ++i) {
        const double x = a + static_cast<double>(i) * h;
        sum += (i % 2 == 1 ? 4.0 : 2.0) * f(x);
    }
    return sum * h / 3.0;
}

namespace {

double adaptive_step(const Integrand& f, double a, double b, double fa,
                     double fm, double fb, double whole, double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15.0 * tol) {
        return left + right + diff / 15.0;
    }
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const Integrand& f, double a, double b, double tol,
                        int max_depth)
{
    if (a == b) return 0.0;
    // Seed with a coarse composite split so that narrow features are seen.
    constexpr int kSeed = 16;
    const double h = (b - a) / kSeed;
    double total = 0.0;
    for (int s = 0; s < kSeed; ++s) {
        const double lo = a + s * h;
        const double hi = (s + 1 == kSeed) ? b : lo + h;
        const double flo = f(lo);
        const double fhi = f(hi);
        const double fmid = f(0.5 * (lo + hi));
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        total += adaptive_step(f, lo, hi, flo, fmid, fhi, whole, tol / kSeed,
                               max_depth);
    }
    return total;
}

double trapezoid(std::span<const double> values, double h)
{
    if (values.size() < 2) return 0.0;
    double sum = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
    return sum * h;
}

double trapezoid_sq(std::span<const double> values, double h)
{
    if (values.size() < 2) return 0.0;
    double sum = 0.5 * (values.front() * values.front() +
                        values.back() * values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i] * values[i];
    return sum * h;
}

}  // namespace vw::quad
