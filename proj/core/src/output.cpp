#include "vw/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "vw/error.hpp"
#include "vw/quadrature.hpp"

namespace vw {

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& content)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    const fs::path p(path);
    if (p.has_parent_path()) {
        fs::create_directories(p.parent_path(), ec);
        if (ec) throw Error(ErrorCode::IoError, "cannot create directory '" + p.parent_path().string() + "': " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    out << content;
    out.close();
    if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
}

std::string trajectory_csv(const SolutionTrajectory& traj, const std::vector<double>& times)
{
    std::vector<std::size_t> rows;
    if (times.empty()) {
        for (std::size_t n = 0; n <= traj.nt; ++n) rows.push_back(n);
    } else {
        for (double t : times) rows.push_back(traj.time_index(t));
    }
    std::string out = "t,x,u\n";
    for (std::size_t n : rows) {
        const std::string t = format_number(traj.t(n));
        for (std::size_t i = 0; i <= traj.nx; ++i) {
            out += t;
            out += ',';
            out += format_number(traj.x(i));
            out += ',';
            out += format_number(traj.u(n, i));
            out += '\n';
        }
    }
    return out;
}

std::string galerkin_csv(const CoefficientTrajectory& c)
{
    std::string out = "t,k,d_k\n";
    for (std::size_t n = 0; n <= c.nt; ++n) {
        const double t = n == c.nt ? c.T : static_cast<double>(n) * c.tau;
        for (std::size_t k = 1; k <= c.m; ++k) {
            out += format_number(t) + "," + std::to_string(k) + "," + format_number(c.d(n, k - 1)) + "\n";
        }
    }
    return out;
}

std::string energy_csv(const std::vector<EnergyRow>& rows)
{
    std::ostringstream out;
    out << "label,epsilon,linf_l2,l2_h1,weighted,dtu_l2,dtu_hneg,dx_a_dx,dxx,q_clip";
    for (auto e : {Estimate::Energy, Estimate::Regularity, Estimate::BoundaryEnergy, Estimate::BoundaryRegularity}) {
        const auto n = to_string(e);
        out << ",lhs_" << n << ",rhs_" << n << ",ratio_" << n;
    }
    out << "\n";
    for (const auto& row : rows) {
        const auto& r = row.report;
        out << row.label << ',' << format_number(row.epsilon) << ',' << format_number(r.norms.linf_l2)
            << ',' << format_number(r.norms.l2_h1) << ',' << format_number(r.weighted) << ','
            << format_number(r.norms.dtu_l2) << ',' << format_number(r.norms.dtu_hneg) << ','
            << format_number(r.dx_a_dx) << ',' << format_number(r.norms.dxx) << ','
            << format_number(r.q_clip);
        for (auto e : {Estimate::Energy, Estimate::Regularity, Estimate::BoundaryEnergy, Estimate::BoundaryRegularity}) {
            const EstimateCheck c = r.find(e) ? *r.find(e) : check_estimate(r, e);
            out << ',' << format_number(c.lhs) << ',' << format_number(c.rhs) << ','
                << format_number(c.ratio);
        }
        out << "\n";
    }
    return out.str();
}

std::string sweep_csv(const SweepReport& report)
{
    std::string out = "epsilon,norm_name,value\n";
    for (std::size_t k = 0; k < report.epsilons.size(); ++k) {
        for (const auto& n : report.norms) {
            out += format_number(report.epsilons[k]) + "," + n.name + "," + format_number(n.values[k]) + "\n";
        }
    }
    return out;
}

std::string fit_csv(const std::vector<TrackedNorm>& norms)
{
    std::string out = "norm_name,exponent,constant,r_squared,points,reliable\n";
    for (const auto& n : norms) {
        out += n.name + "," + format_number(n.fit.growth()) + "," + format_number(n.fit.constant) + "," +
               format_number(n.fit.r_squared) + "," + std::to_string(n.fit.points) + "," +
               (n.reliable() ? "true" : "false") + "\n";
    }
    return out;
}

std::string fit_summary(const std::vector<TrackedNorm>& norms)
{
    std::ostringstream out;
    for (const auto& n : norms) {
        out << "  " << n.name << ": ";
        if (!n.fit.valid) {
            out << "no fit (" << n.fit.points << " usable points)\n";
            continue;
        }
        out << "N=" << format_number(n.fit.growth()) << " C=" << format_number(n.fit.constant)
            << " R2=" << format_number(n.fit.r_squared) << (n.reliable() ? "" : " (unreliable)") << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// SVG

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 190.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 70.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string px(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    bool log = false;
    std::vector<double> ticks;

    double map(double v) const
    {
        const double a = log ? std::log10(lo) : lo;
        const double b = log ? std::log10(hi) : hi;
        const double x = log ? std::log10(v) : v;
        return (x - a) / (b - a);
    }
};

double nice_step(double span)
{
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    const double f = r < 1.5 ? 1.0 : r < 3.0 ? 2.0 : r < 7.0 ? 5.0 : 10.0;
    return f * mag;
}

Axis make_axis(double lo, double hi, bool log)
{
    Axis a;
    a.log = log;
    if (!(lo < hi)) {
        const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
        lo -= pad;
        hi += pad;
    }
    if (log) {
        a.lo = std::pow(10.0, std::floor(std::log10(lo)));
        a.hi = std::pow(10.0, std::ceil(std::log10(hi)));
        if (a.hi <= a.lo) a.hi = a.lo * 10.0;
        for (double t = a.lo; t <= a.hi * (1 + 1e-9); t *= 10.0) a.ticks.push_back(t);
        return a;
    }
    const double step = nice_step(hi - lo);
    a.lo = std::floor(lo / step) * step;
    a.hi = std::ceil(hi / step) * step;
    for (double t = a.lo; t <= a.hi + step * 1e-9; t += step) {
        a.ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
    }
    return a;
}

}  // namespace

std::string render_svg(const Chart& chart)
{
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    double ylo = xlo, yhi = -xlo;
    auto usable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!chart.log_x || x > 0.0) && (!chart.log_y || y > 0.0);
    };
    for (const auto& s : chart.series) {
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            xlo = std::min(xlo, s.x[i]);
            xhi = std::max(xhi, s.x[i]);
            ylo = std::min(ylo, s.y[i]);
            yhi = std::max(yhi, s.y[i]);
        }
    }
    if (!std::isfinite(xlo)) {
        xlo = chart.log_x ? 0.1 : 0.0;
        xhi = 1.0;
        ylo = chart.log_y ? 0.1 : 0.0;
        yhi = 1.0;
    }
    const Axis ax = make_axis(xlo, xhi, chart.log_x);
    const Axis ay = make_axis(ylo, yhi, chart.log_y);
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + ax.map(x) * pw; };
    auto sy = [&](double y) { return kTop + (1.0 - ay.map(y)) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
    o << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    o << "<text x=\"" << px(kLeft + pw / 2) << "\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">"
      << escape(chart.title) << "</text>\n";
    o << "<g font-family=\"sans-serif\" font-size=\"12\" stroke-width=\"1\">\n";
    for (double t : ax.ticks) {
        const double x = sx(t);
        o << "<line x1=\"" << px(x) << "\" y1=\"" << px(kTop) << "\" x2=\"" << px(x) << "\" y2=\"" << px(kTop + ph)
          << "\" stroke=\"#e0e0e0\"/>\n";
        o << "<text x=\"" << px(x) << "\" y=\"" << px(kTop + ph + 18) << "\" text-anchor=\"middle\">"
          << format_number(t) << "</text>\n";
    }
    for (double t : ay.ticks) {
        const double y = sy(t);
        o << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(y) << "\" x2=\"" << px(kLeft + pw) << "\" y2=\"" << px(y)
          << "\" stroke=\"#e0e0e0\"/>\n";
        o << "<text x=\"" << px(kLeft - 6) << "\" y=\"" << px(y + 4) << "\" text-anchor=\"end\">"
          << format_number(t) << "</text>\n";
    }
    o << "<rect x=\"" << px(kLeft) << "\" y=\"" << px(kTop) << "\" width=\"" << px(pw) << "\" height=\"" << px(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    o << "<text x=\"" << px(kLeft + pw / 2) << "\" y=\"" << px(kHeight - 20) << "\" text-anchor=\"middle\">"
      << escape(chart.x_label) << "</text>\n";
    o << "<text x=\"20\" y=\"" << px(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << px(kTop + ph / 2) << ")\">" << escape(chart.y_label) << "</text>\n";
    o << "</g>\n";

    for (std::size_t k = 0; k < chart.series.size(); ++k) {
        const auto& s = chart.series[k];
        const char* color = kPalette[k % std::size(kPalette)];
        o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            o << (first ? "" : " ") << px(sx(s.x[i])) << "," << px(sy(s.y[i]));
            first = false;
        }
        o << "\"/>\n";
        const double ly = kTop + 10 + 20.0 * static_cast<double>(k);
        const double lx = kLeft + pw + 15;
        o << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly) << "\" x2=\"" << px(lx + 25) << "\" y2=\"" << px(ly)
          << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << px(lx + 32) << "\" y=\"" << px(ly + 4)
          << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

Chart profile_chart(const std::vector<SolutionTrajectory>& trajs, const std::vector<std::string>& labels,
                    double t, const std::string& title)
{
    Chart c;
    c.title = title;
    c.x_label = "x";
    c.y_label = "u(t, x)";
    for (std::size_t k = 0; k < trajs.size(); ++k) {
        const auto& tr = trajs[k];
        const std::size_t n = tr.time_index(t);
        Series s;
        s.label = k < labels.size() ? labels[k] : std::to_string(k);
        for (std::size_t i = 0; i <= tr.nx; ++i) {
            s.x.push_back(tr.x(i));
            s.y.push_back(tr.u(n, i));
        }
        c.series.push_back(std::move(s));
    }
    return c;
}

Chart norm_history_chart(const std::vector<SolutionTrajectory>& trajs,
                         const std::vector<std::string>& labels, const std::string& title)
{
    Chart c;
    c.title = title;
    c.x_label = "t";
    c.y_label = "||u(t, .)||_L2";
    for (std::size_t k = 0; k < trajs.size(); ++k) {
        const auto& tr = trajs[k];
        Series s;
        s.label = k < labels.size() ? labels[k] : std::to_string(k);
        for (std::size_t n = 0; n <= tr.nt; ++n) {
            s.x.push_back(tr.t(n));
            s.y.push_back(std::sqrt(quad::trapezoid_sq(tr.u.row(n), tr.h)));
        }
        c.series.push_back(std::move(s));
    }
    return c;
}

}  // namespace vw
