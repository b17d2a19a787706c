#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace vw {

struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    static Interval whole_line() { return {}; }
    bool contains(double x) const noexcept { return x >= lo && x <= hi; }
    bool strictly_contains(double x) const noexcept { return x > lo && x < hi; }
    bool bounded() const noexcept;
    bool operator==(const Interval&) const = default;
};

/// Uniform grid with `cells` intervals on [lo, hi] (cells + 1 points).
struct Grid1D {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t cells = 1;

    double step() const noexcept { return (hi - lo) / static_cast<double>(cells); }
    std::size_t size() const noexcept { return cells + 1; }
    double point(std::size_t i) const noexcept;
    std::vector<double> points() const;
    Interval domain() const noexcept { return {lo, hi}; }
    bool operator==(const Grid1D&) const = default;
};

/// A smooth real function drawn from a small closed family so that it can be
/// written back to configuration files. `custom` wraps an arbitrary callable
/// and is not serializable.
class SmoothFn {
public:
    enum class Kind { Polynomial, Sine, Cosine, Bell, Exponential, Custom };

    /// c0 + c1 x + c2 x^2 + ...
    static SmoothFn polynomial(std::vector<double> coefficients);
    /// amp * sin(k*pi*x + phase)
    static SmoothFn sine(double amp, double k, double phase = 0.0);
    /// amp * cos(k*pi*x + phase)
    static SmoothFn cosine(double amp, double k, double phase = 0.0);
    /// exp(1 / ((x - center)^2 + width)); the initial profile used by the
    /// built-in cases.
    static SmoothFn bell(double center, double width);
    /// amp * exp(rate * x)
    static SmoothFn exponential(double amp, double rate);
    static SmoothFn custom(std::function<double(double)> fn, std::string name = "custom");

    double operator()(double x) const;

    Kind kind() const noexcept { return kind_; }
    std::span<const double> params() const noexcept { return params_; }
    const std::string& name() const noexcept { return name_; }

private:
    SmoothFn(Kind kind, std::vector<double> params, std::string name)
        : kind_(kind), params_(std::move(params)), name_(std::move(name)) {}

    Kind kind_ = Kind::Polynomial;
    std::vector<double> params_;
    std::function<double(double)> custom_;
    std::string name_;
};

class DistExpr;

namespace expr {

struct Constant {
    double value = 0.0;
};

/// Smooth function, identically zero outside `support`. The default support
/// is the whole line, i.e. the function is continued past the domain ends.
struct Smooth {
    SmoothFn fn;
    Interval support;
    double factor = 1.0;
};

struct Delta {
    double location = 0.0;
    double weight = 1.0;
};

/// `low` left of `location`, `high` from `location` on; zero outside the
/// domain.
struct Heaviside {
    double location = 0.0;
    double low = 0.0;
    double high = 1.0;
};

struct Sum {
    std::vector<DistExpr> terms;
};

}  // namespace expr

/// Symbolic distribution on an interval: constants, smooth closures, Dirac
/// deltas, Heaviside steps and flat sums of those.
class DistExpr {
public:
    using Node = std::variant<std::monostate, expr::Constant, expr::Smooth,
                              expr::Delta, expr::Heaviside, expr::Sum>;

    /// Empty expression; rejected by every consumer with UnsupportedVariant.
    DistExpr() = default;

    static DistExpr constant(double value);
    static DistExpr smooth(SmoothFn fn, Interval support = Interval::whole_line());
    static DistExpr delta(double location, double weight = 1.0);
    static DistExpr heaviside(double location, double low, double high);
    /// Nested sums are flattened; a single term collapses to itself.
    static DistExpr sum(std::vector<DistExpr> terms);

    const Node& node() const noexcept { return node_; }
    bool empty() const noexcept { return std::holds_alternative<std::monostate>(node_); }

    /// True when any term is a Delta or Heaviside.
    bool is_singular() const;
    bool has_delta() const;
    /// True when every term is Constant or Smooth.
    bool is_regular() const;
    /// True for a bare Constant (or a Sum of only constants).
    bool is_constant() const;

    /// Pointwise value of the non-delta part (deltas contribute nothing).
    double regular_value(double x, Interval domain) const;

    /// Visits every leaf term (Sum is expanded).
    void for_each_term(const std::function<void(const Node&)>& visit) const;

    std::string describe() const;

    friend DistExpr operator+(const DistExpr& lhs, const DistExpr& rhs);
    /// Scales every term; used for data-homogeneity checks.
    friend DistExpr operator*(double factor, const DistExpr& e);

private:
    explicit DistExpr(Node node) : node_(std::move(node)) {}

    Node node_;
};

/// Bump function with compact support in [-1, 1] and its normalization.
struct Bump {
    std::function<double(double)> shape;
    std::string name;
};

/// exp(1/(x^2-1)) on |x| < 1, zero elsewhere.
Bump default_bump();
/// (1 + cos(pi x)) / 2 on |x| < 1, zero elsewhere; a second admissible
/// family used for uniqueness comparisons.
Bump cosine_bump();

/// Returns c with integral of c * bump over [-1, 1] equal to one.
/// Throws Error(ZeroMass) if the bump carries no mass.
double normalize_bump(const std::function<double(double)>& bump);

class MollifierNet {
public:
    /// Normalizes the bump and validates the ladder (strictly decreasing,
    /// every value in (0, 1]).
    MollifierNet(Bump bump, std::vector<double> epsilons);

    static MollifierNet standard(std::vector<double> epsilons = default_ladder());
    static std::vector<double> default_ladder();

    double normalization() const noexcept { return c_; }
    const std::vector<double>& epsilons() const noexcept { return epsilons_; }
    const std::string& bump_name() const noexcept { return bump_.name; }

    /// c * bump(x)
    double kernel(double x) const { return c_ * bump_.shape(x); }
    /// c/eps * bump(x/eps)
    double kernel(double x, double eps) const { return c_ / eps * bump_.shape(x / eps); }
    /// Integral of the normalized kernel over [-1, s].
    double cumulative(double s) const;

    bool contains(double eps) const;
    MollifierNet with_epsilons(std::vector<double> epsilons) const;

private:
    Bump bump_;
    double c_ = 1.0;
    std::vector<double> epsilons_;
};

struct SampledField1D {
    Grid1D grid;
    std::vector<double> values;
    double epsilon = 0.0;
    std::shared_ptr<const DistExpr> source;
};

enum class SmoothHandling {
    Convolve,  ///< Smooth terms are convolved with the kernel.
    Sample,    ///< Smooth terms are sampled directly (regular data).
};

struct MollifyOptions {
    SmoothHandling smooth = SmoothHandling::Convolve;
    /// Composite Simpson panels across one kernel support.
    std::size_t panels = 128;
};

/// Samples (expr extended to the line) * phi_eps on `grid`. Constants and
/// Smooth terms keep their whole-line continuation; Delta and Heaviside
/// terms are extended by zero outside the grid domain. Deltas use the
/// sifting property and bypass quadrature.
SampledField1D mollify(const DistExpr& expr, const MollifierNet& net, double epsilon,
                       const Grid1D& grid, MollifyOptions options = {});

/// Same convolution evaluated at arbitrary points (domain given explicitly).
std::vector<double> mollify_at(const DistExpr& expr, const MollifierNet& net, double epsilon,
                               Interval domain, std::span<const double> points,
                               MollifyOptions options = {});

double linf_norm(const SampledField1D& field);
/// Composite trapezoid L2 norm. Optional non-negative weights multiply the
/// squared samples.
double l2_norm(const SampledField1D& field, std::span<const double> weights = {});

}  // namespace vw
