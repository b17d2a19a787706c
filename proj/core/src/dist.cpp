#include "vw/dist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vw/error.hpp"
#include "vw/quadrature.hpp"

namespace vw {

bool Interval::bounded() const noexcept
{
    return std::isfinite(lo) && std::isfinite(hi);
}

double Grid1D::point(std::size_t i) const noexcept
{
    if (i == cells) return hi;
    return lo + static_cast<double>(i) * step();
}

std::vector<double> Grid1D::points() const
{
    std::vector<double> pts(size());
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = point(i);
    return pts;
}

// ---------------------------------------------------------------------------
// SmoothFn

SmoothFn SmoothFn::polynomial(std::vector<double> coefficients)
{
    return SmoothFn(Kind::Polynomial, std::move(coefficients), "poly");
}

SmoothFn SmoothFn::sine(double amp, double k, double phase)
{
    return SmoothFn(Kind::Sine, {amp, k, phase}, "sin");
}

SmoothFn SmoothFn::cosine(double amp, double k, double phase)
{
    return SmoothFn(Kind::Cosine, {amp, k, phase}, "cos");
}

SmoothFn SmoothFn::bell(double center, double width)
{
    if (!(width > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "bell width must be positive");
    }
    return SmoothFn(Kind::Bell, {center, width}, "bell");
}

SmoothFn SmoothFn::exponential(double amp, double rate)
{
    return SmoothFn(Kind::Exponential, {amp, rate}, "exp");
}

SmoothFn SmoothFn::custom(std::function<double(double)> fn, std::string name)
{
    SmoothFn out(Kind::Custom, {}, std::move(name));
    out.custom_ = std::move(fn);
    return out;
}

double SmoothFn::operator()(double x) const
{
    using std::numbers::pi;
    switch (kind_) {
    case Kind::Polynomial: {
        double acc = 0.0;
        for (auto it = params_.rbegin(); it != params_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    case Kind::Sine:
        return params_[0] * std::sin(params_[1] * pi * x + params_[2]);
    case Kind::Cosine:
        return params_[0] * std::cos(params_[1] * pi * x + params_[2]);
    case Kind::Bell: {
        const double d = x - params_[0];
        return std::exp(1.0 / (d * d + params_[1]));
    }
    case Kind::Exponential:
        return params_[0] * std::exp(params_[1] * x);
    case Kind::Custom:
        return custom_(x);
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// DistExpr

DistExpr DistExpr::constant(double value)
{
    return DistExpr(Node{expr::Constant{value}});
}

DistExpr DistExpr::smooth(SmoothFn fn, Interval support)
{
    if (!(support.lo < support.hi)) {
        throw Error(ErrorCode::InvalidArgument, "smooth support must be a non-empty interval");
    }
    return DistExpr(Node{expr::Smooth{std::move(fn), support, 1.0}});
}

DistExpr DistExpr::delta(double location, double weight)
{
    if (!std::isfinite(location) || !std::isfinite(weight)) {
        throw Error(ErrorCode::InvalidArgument, "delta location and weight must be finite");
    }
    return DistExpr(Node{expr::Delta{location, weight}});
}

DistExpr DistExpr::heaviside(double location, double low, double high)
{
    return DistExpr(Node{expr::Heaviside{location, low, high}});
}

DistExpr DistExpr::sum(std::vector<DistExpr> terms)
{
    std::vector<DistExpr> flat;
    for (auto& t : terms) {
        if (t.empty()) {
            throw Error(ErrorCode::UnsupportedVariant, "empty expression inside sum");
        }
        if (auto* s = std::get_if<expr::Sum>(&t.node_)) {
            for (auto& inner : s->terms) flat.push_back(inner);
        } else {
            flat.push_back(std::move(t));
        }
    }
    if (flat.empty()) return constant(0.0);
    if (flat.size() == 1) return flat.front();
    return DistExpr(Node{expr::Sum{std::move(flat)}});
}

DistExpr operator+(const DistExpr& lhs, const DistExpr& rhs)
{
    return DistExpr::sum({lhs, rhs});
}

DistExpr operator*(double factor, const DistExpr& e)
{
    return std::visit(
        [factor](const auto& n) -> DistExpr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return DistExpr();
            } else if constexpr (std::is_same_v<T, expr::Constant>) {
                return DistExpr::constant(factor * n.value);
            } else if constexpr (std::is_same_v<T, expr::Smooth>) {
                expr::Smooth s = n;
                s.factor *= factor;
                return DistExpr(DistExpr::Node{s});
            } else if constexpr (std::is_same_v<T, expr::Delta>) {
                return DistExpr::delta(n.location, factor * n.weight);
            } else if constexpr (std::is_same_v<T, expr::Heaviside>) {
                return DistExpr::heaviside(n.location, factor * n.low, factor * n.high);
            } else {
                std::vector<DistExpr> scaled;
                for (const auto& t : n.terms) scaled.push_back(factor * t);
                return DistExpr::sum(std::move(scaled));
            }
        },
        e.node_);
}

void DistExpr::for_each_term(const std::function<void(const Node&)>& visit) const
{
    if (const auto* s = std::get_if<expr::Sum>(&node_)) {
        for (const auto& t : s->terms) t.for_each_term(visit);
    } else {
        visit(node_);
    }
}

bool DistExpr::is_singular() const
{
    bool singular = false;
    for_each_term([&](const Node& n) {
        if (std::holds_alternative<expr::Delta>(n) || std::holds_alternative<expr::Heaviside>(n)) {
            singular = true;
        }
    });
    return singular;
}

bool DistExpr::has_delta() const
{
    bool found = false;
    for_each_term([&](const Node& n) { found = found || std::holds_alternative<expr::Delta>(n); });
    return found;
}

bool DistExpr::is_regular() const
{
    if (empty()) return false;
    bool regular = true;
    for_each_term([&](const Node& n) {
        if (!std::holds_alternative<expr::Constant>(n) && !std::holds_alternative<expr::Smooth>(n)) {
            regular = false;
        }
    });
    return regular;
}

bool DistExpr::is_constant() const
{
    if (empty()) return false;
    bool constant = true;
    for_each_term([&](const Node& n) {
        constant = constant && std::holds_alternative<expr::Constant>(n);
    });
    return constant;
}

double DistExpr::regular_value(double x, Interval domain) const
{
    double acc = 0.0;
    for_each_term([&](const Node& n) {
        if (const auto* c = std::get_if<expr::Constant>(&n)) {
            acc += c->value;
        } else if (const auto* s = std::get_if<expr::Smooth>(&n)) {
            if (s->support.contains(x)) acc += s->factor * s->fn(x);
        } else if (const auto* h = std::get_if<expr::Heaviside>(&n)) {
            if (domain.contains(x)) acc += x < h->location ? h->low : h->high;
        } else if (std::holds_alternative<std::monostate>(n)) {
            throw Error(ErrorCode::UnsupportedVariant, "empty distribution expression");
        }
    });
    return acc;
}

std::string DistExpr::describe() const
{
    std::ostringstream out;
    bool first = true;
    for_each_term([&](const Node& n) {
        if (!first) out << " + ";
        first = false;
        if (const auto* c = std::get_if<expr::Constant>(&n)) {
            out << c->value;
        } else if (const auto* s = std::get_if<expr::Smooth>(&n)) {
            if (s->factor != 1.0) out << s->factor << "*";
            out << s->fn.name() << "(";
            for (std::size_t i = 0; i < s->fn.params().size(); ++i) {
                out << (i ? "," : "") << s->fn.params()[i];
            }
            out << ")";
        } else if (const auto* d = std::get_if<expr::Delta>(&n)) {
            if (d->weight != 1.0) out << d->weight << "*";
            out << "delta(" << d->location << ")";
        } else if (const auto* h = std::get_if<expr::Heaviside>(&n)) {
            out << "H(" << h->location << ";" << h->low << "," << h->high << ")";
        } else {
            out << "<empty>";
        }
    });
    return out.str();
}

// ---------------------------------------------------------------------------
// Mollifier

Bump default_bump()
{
    return {[](double x) {
                const double x2 = x * x;
                return x2 < 1.0 ? std::exp(1.0 / (x2 - 1.0)) : 0.0;
            },
            "exp"};
}

Bump cosine_bump()
{
    return {[](double x) {
                return std::abs(x) < 1.0 ? 0.5 * (1.0 + std::cos(std::numbers::pi * x)) : 0.0;
            },
            "cosine"};
}

double normalize_bump(const std::function<double(double)>& bump)
{
    const double mass = quad::adaptive_simpson(bump, -1.0, 1.0, 1e-14);
    if (!(mass > 1e-300)) {
        throw Error(ErrorCode::ZeroMass, "bump has no mass on [-1, 1]");
    }
    return 1.0 / mass;
}

std::vector<double> MollifierNet::default_ladder()
{
    return {0.3, 0.1, 0.05, 0.031, 0.003};
}

MollifierNet::MollifierNet(Bump bump, std::vector<double> epsilons)
    : bump_(std::move(bump)), epsilons_(std::move(epsilons))
{
    c_ = normalize_bump(bump_.shape);
    for (std::size_t i = 0; i < epsilons_.size(); ++i) {
        const double e = epsilons_[i];
        if (!(e > 0.0 && e <= 1.0)) {
            throw Error(ErrorCode::InvalidArgument, "epsilon values must lie in (0, 1]");
        }
        if (i > 0 && !(e < epsilons_[i - 1])) {
            throw Error(ErrorCode::InvalidArgument, "epsilon ladder must be strictly decreasing");
        }
    }
}

MollifierNet MollifierNet::standard(std::vector<double> epsilons)
{
    return MollifierNet(default_bump(), std::move(epsilons));
}

double MollifierNet::cumulative(double s) const
{
    if (s <= -1.0) return 0.0;
    if (s >= 1.0) return 1.0;
    // Integrate over the shorter side for accuracy near the tails.
    if (s <= 0.0) {
        return quad::adaptive_simpson([this](double y) { return kernel(y); }, -1.0, s, 1e-15, 40);
    }
    return 1.0 - quad::adaptive_simpson([this](double y) { return kernel(y); }, s, 1.0, 1e-15, 40);
}

bool MollifierNet::contains(double eps) const
{
    return std::any_of(epsilons_.begin(), epsilons_.end(),
                       [eps](double e) { return std::abs(e - eps) <= 1e-12 * e; });
}

MollifierNet MollifierNet::with_epsilons(std::vector<double> epsilons) const
{
    MollifierNet out = *this;
    MollifierNet check(bump_, epsilons);  // validates the ladder
    out.epsilons_ = std::move(epsilons);
    return out;
}

namespace {

double mollify_point(const DistExpr::Node& n, const MollifierNet& net, double eps,
                     Interval domain, double x, const MollifyOptions& opt)
{
    if (const auto* c = std::get_if<expr::Constant>(&n)) {
        return c->value;
    }
    if (const auto* s = std::get_if<expr::Smooth>(&n)) {
        if (opt.smooth == SmoothHandling::Sample) {
            return s->support.contains(x) ? s->factor * s->fn(x) : 0.0;
        }
        const double lo = std::max(x - eps, s->support.lo);
        const double hi = std::min(x + eps, s->support.hi);
        if (!(lo < hi)) return 0.0;
        const double integral = quad::simpson(
            [&](double y) { return s->fn(y) * net.kernel(x - y, eps); }, lo, hi, opt.panels);
        return s->factor * integral;
    }
    if (const auto* d = std::get_if<expr::Delta>(&n)) {
        return d->weight * net.kernel(x - d->location, eps);
    }
    if (const auto* h = std::get_if<expr::Heaviside>(&n)) {
        // Mass of the kernel centred at x over [a, b], in kernel units.
        auto mass = [&](double a, double b) {
            return net.cumulative((x - a) / eps) - net.cumulative((x - b) / eps);
        };
        return h->low * mass(domain.lo, h->location) + h->high * mass(h->location, domain.hi);
    }
    throw Error(ErrorCode::UnsupportedVariant, "cannot mollify an empty distribution expression");
}

void check_leaf(const DistExpr::Node& n, Interval domain)
{
    if (std::holds_alternative<std::monostate>(n)) {
        throw Error(ErrorCode::UnsupportedVariant, "cannot mollify an empty distribution expression");
    }
    if (const auto* d = std::get_if<expr::Delta>(&n)) {
        if (!domain.strictly_contains(d->location)) {
            std::ostringstream msg;
            msg << "delta at " << d->location << " is not strictly inside [" << domain.lo << ", "
                << domain.hi << "]";
            throw Error(ErrorCode::InvalidArgument, msg.str());
        }
    }
    if (const auto* h = std::get_if<expr::Heaviside>(&n)) {
        if (!domain.bounded() || !domain.contains(h->location)) {
            throw Error(ErrorCode::InvalidArgument, "heaviside jump must lie in a bounded domain");
        }
    }
}

}  // namespace

std::vector<double> mollify_at(const DistExpr& expr, const MollifierNet& net, double epsilon,
                               Interval domain, std::span<const double> points,
                               MollifyOptions options)
{
    if (expr.empty()) {
        throw Error(ErrorCode::UnsupportedVariant, "cannot mollify an empty distribution expression");
    }
    if (!net.contains(epsilon)) {
        std::ostringstream msg;
        msg << "epsilon " << epsilon << " is not part of the mollifier net";
        throw Error(ErrorCode::InvalidArgument, msg.str());
    }
    if (options.panels < 64) options.panels = 64;

    std::vector<const DistExpr::Node*> leaves;
    expr.for_each_term([&](const DistExpr::Node& n) {
        check_leaf(n, domain);
        leaves.push_back(&n);
    });

    std::vector<double> out(points.size(), 0.0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        double acc = 0.0;
        for (const auto* leaf : leaves) acc += mollify_point(*leaf, net, epsilon, domain, points[i], options);
        out[i] = acc;
    }
    return out;
}

SampledField1D mollify(const DistExpr& expr, const MollifierNet& net, double epsilon,
                       const Grid1D& grid, MollifyOptions options)
{
    const auto pts = grid.points();
    SampledField1D field;
    field.grid = grid;
    field.epsilon = epsilon;
    field.values = mollify_at(expr, net, epsilon, grid.domain(), pts, options);
    field.source = std::make_shared<const DistExpr>(expr);
    return field;
}

double linf_norm(const SampledField1D& field)
{
    double m = 0.0;
    for (double v : field.values) m = std::max(m, std::abs(v));
    return m;
}

double l2_norm(const SampledField1D& field, std::span<const double> weights)
{
    const double h = field.grid.step();
    if (weights.empty()) return std::sqrt(quad::trapezoid_sq(field.values, h));
    if (weights.size() != field.values.size()) {
        throw Error(ErrorCode::InvalidArgument, "weight count does not match field length");
    }
    std::vector<double> w(field.values.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = weights[i] * field.values[i] * field.values[i];
    return std::sqrt(quad::trapezoid(w, h));
}

}  // namespace vw
