#include "vw/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string_view>

#include "vw/error.hpp"

namespace vw {

MollifierNet RunConfig::net() const
{
    if (mollifier == "exp") return MollifierNet(default_bump(), epsilons);
    if (mollifier == "cosine") return MollifierNet(cosine_bump(), epsilons);
    throw Error(ErrorCode::InvalidArgument, "unknown mollifier '" + mollifier + "'");
}

void RunConfig::check() const
{
    if (!(scheme.theta >= 0.5 && scheme.theta <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "theta must lie in [0.5, 1]");
    }
    for (double t : snapshots) {
        if (!(t >= 0.0 && t <= problem.T)) {
            std::ostringstream os;
            os << "snapshot time " << t << " outside [0, " << problem.T << "]";
            throw Error(ErrorCode::InvalidArgument, os.str());
        }
    }
    (void)net();
}

namespace {

[[noreturn]] void fail(const YAML::Node& at, const std::string& msg)
{
    const auto mark = at.Mark();
    const bool known = !mark.is_null();
    throw ParseError(msg, known ? mark.line + 1 : 0, known ? mark.column + 1 : 0);
}

double number(const YAML::Node& n, std::string_view key)
{
    if (!n.IsScalar()) fail(n, "key '" + std::string(key) + "': expected a number");
    try {
        return n.as<double>();
    } catch (const YAML::Exception&) {
        fail(n, "key '" + std::string(key) + "': '" + n.Scalar() + "' is not a number");
    }
}

int integer(const YAML::Node& n, std::string_view key)
{
    if (!n.IsScalar()) fail(n, "key '" + std::string(key) + "': expected an integer");
    try {
        return n.as<int>();
    } catch (const YAML::Exception&) {
        fail(n, "key '" + std::string(key) + "': '" + n.Scalar() + "' is not an integer");
    }
}

bool boolean(const YAML::Node& n, std::string_view key)
{
    try {
        return n.as<bool>();
    } catch (const YAML::Exception&) {
        fail(n, "key '" + std::string(key) + "': expected true or false");
    }
}

std::string text(const YAML::Node& n, std::string_view key)
{
    if (!n.IsScalar()) fail(n, "key '" + std::string(key) + "': expected a string");
    return n.Scalar();
}

std::vector<double> numbers(const YAML::Node& n, std::string_view key)
{
    std::vector<double> out;
    if (n.IsScalar()) {
        out.push_back(number(n, key));
        return out;
    }
    if (!n.IsSequence()) fail(n, "key '" + std::string(key) + "': expected a list of numbers");
    for (const auto& v : n) out.push_back(number(v, key));
    return out;
}

void require_map(const YAML::Node& n, std::string_view key)
{
    if (!n.IsMap()) fail(n, "key '" + std::string(key) + "': expected a mapping");
}

void check_keys(const YAML::Node& map, std::initializer_list<std::string_view> allowed,
                std::string_view context)
{
    for (const auto& kv : map) {
        const std::string k = kv.first.Scalar();
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
            fail(kv.first, "unknown key '" + k + "' in " + std::string(context));
        }
    }
}

double number_or(const YAML::Node& map, const char* key, double fallback)
{
    const auto n = map[key];
    return n ? number(n, key) : fallback;
}

SmoothFn parse_smooth_fn(const YAML::Node& n)
{
    const auto kind_node = n["kind"];
    if (!kind_node) fail(n, "key 'smooth': missing 'kind'");
    const std::string kind = text(kind_node, "kind");
    if (kind == "polynomial") {
        check_keys(n, {"kind", "coefficients", "support", "factor"}, "smooth");
        const auto c = n["coefficients"];
        if (!c) fail(n, "key 'smooth': polynomial needs 'coefficients'");
        return SmoothFn::polynomial(numbers(c, "coefficients"));
    }
    if (kind == "sine" || kind == "cosine") {
        check_keys(n, {"kind", "amp", "k", "phase", "support", "factor"}, "smooth");
        const double amp = number_or(n, "amp", 1.0);
        const double k = number_or(n, "k", 1.0);
        const double phase = number_or(n, "phase", 0.0);
        return kind == "sine" ? SmoothFn::sine(amp, k, phase) : SmoothFn::cosine(amp, k, phase);
    }
    if (kind == "bell") {
        check_keys(n, {"kind", "center", "width", "support", "factor"}, "smooth");
        return SmoothFn::bell(number_or(n, "center", 0.5), number_or(n, "width", 0.025));
    }
    if (kind == "exponential") {
        check_keys(n, {"kind", "amp", "rate", "support", "factor"}, "smooth");
        return SmoothFn::exponential(number_or(n, "amp", 1.0), number_or(n, "rate", 1.0));
    }
    fail(kind_node, "key 'kind': unknown smooth function '" + kind + "'");
}

DistExpr parse_dist(const YAML::Node& n, std::string_view key)
{
    if (!n || n.IsNull()) fail(n, "key '" + std::string(key) + "': missing expression");
    if (n.IsScalar()) return DistExpr::constant(number(n, key));
    if (n.IsSequence()) {
        std::vector<DistExpr> terms;
        for (const auto& t : n) terms.push_back(parse_dist(t, key));
        if (terms.empty()) fail(n, "key '" + std::string(key) + "': empty sum");
        return DistExpr::sum(std::move(terms));
    }
    if (n.size() != 1) {
        fail(n, "key '" + std::string(key) + "': expected one of constant, delta, heaviside, smooth");
    }
    const auto kv = *n.begin();
    const std::string tag = kv.first.Scalar();
    const YAML::Node body = kv.second;
    if (tag == "constant") return DistExpr::constant(number(body, "constant"));
    if (tag == "delta") {
        if (body.IsScalar()) return DistExpr::delta(number(body, "delta"));
        require_map(body, "delta");
        check_keys(body, {"at", "weight"}, "delta");
        if (!body["at"]) fail(body, "key 'delta': missing 'at'");
        return DistExpr::delta(number(body["at"], "at"), number_or(body, "weight", 1.0));
    }
    if (tag == "heaviside") {
        require_map(body, "heaviside");
        check_keys(body, {"at", "low", "high"}, "heaviside");
        if (!body["at"]) fail(body, "key 'heaviside': missing 'at'");
        return DistExpr::heaviside(number(body["at"], "at"), number_or(body, "low", 0.0),
                                   number_or(body, "high", 1.0));
    }
    if (tag == "smooth") {
        require_map(body, "smooth");
        auto fn = parse_smooth_fn(body);
        Interval support;
        if (const auto s = body["support"]) {
            const auto v = numbers(s, "support");
            if (v.size() != 2) fail(s, "key 'support': expected [lo, hi]");
            support = {v[0], v[1]};
            if (!(support.lo < support.hi)) fail(s, "key 'support': lo must be below hi");
        }
        const double factor = number_or(body, "factor", 1.0);
        auto e = DistExpr::smooth(std::move(fn), support);
        return factor == 1.0 ? e : factor * e;
    }
    fail(kv.first, "unknown key '" + tag + "' in expression '" + std::string(key) + "'");
}

bool is_separable_map(const YAML::Node& n)
{
    return n.IsMap() && (n["space"] || n["time"]);
}

SpaceTimeExpr parse_space_time(const YAML::Node& n, std::string_view key)
{
    if (n.IsScalar() && number(n, key) == 0.0) return SpaceTimeExpr::zero();
    if (is_separable_map(n)) {
        check_keys(n, {"space", "time"}, key);
        SeparableTerm term;
        if (n["space"]) term.space = parse_dist(n["space"], "space");
        if (n["time"]) term.time = parse_dist(n["time"], "time");
        return {{term}};
    }
    if (n.IsSequence()) {
        SpaceTimeExpr out;
        for (const auto& t : n) out = out + parse_space_time(t, key);
        return out;
    }
    return SpaceTimeExpr::in_space(parse_dist(n, key));
}

void apply_problem(const YAML::Node& p, RunConfig& cfg)
{
    require_map(p, "problem");
    check_keys(p, {"case", "variant", "T", "alpha", "a", "b", "q", "f", "u0", "g0", "g1"}, "problem");
    if (const auto v = p["variant"]) {
        const std::string s = text(v, "variant");
        if (s == "text") {
            cfg.variant = CaseVariant::Text;
        } else if (s == "figure") {
            cfg.variant = CaseVariant::Figure;
        } else {
            fail(v, "key 'variant': expected 'text' or 'figure'");
        }
    }
    if (const auto c = p["case"]) {
        const int id = integer(c, "case");
        try {
            cfg.problem = builtin_case(id, cfg.variant);
        } catch (const Error& e) {
            fail(c, std::string("key 'case': ") + e.what());
        }
        cfg.case_id = id;
    } else {
        cfg.problem = ProblemSpec{};
        cfg.case_id.reset();
    }
    auto& s = cfg.problem;
    try {
        if (const auto n = p["T"]) s.T = number(n, "T");
        if (const auto n = p["alpha"]) s.alpha = number(n, "alpha");
        if (const auto n = p["a"]) s.a = parse_space_time(n, "a");
        if (const auto n = p["b"]) s.b = parse_space_time(n, "b");
        if (const auto n = p["f"]) s.f = parse_space_time(n, "f");
        if (const auto n = p["q"]) s.q = parse_dist(n, "q");
        if (const auto n = p["u0"]) s.u0 = parse_dist(n, "u0");
        if (const auto n = p["g0"]) s.g0 = parse_dist(n, "g0");
        if (const auto n = p["g1"]) s.g1 = parse_dist(n, "g1");
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        fail(p, std::string("problem: ") + e.what());
    }
    if (!(s.T > 0.0)) fail(p["T"], "key 'T': must be positive");
    if (!(s.alpha > 0.0)) fail(p["alpha"], "key 'alpha': must be positive");
}

std::size_t count(const YAML::Node& n, std::string_view key)
{
    const int v = integer(n, key);
    if (v <= 0) fail(n, "key '" + std::string(key) + "': must be positive");
    return static_cast<std::size_t>(v);
}

RunConfig from_yaml(const YAML::Node& root)
{
    RunConfig cfg;
    if (!root || root.IsNull()) return cfg;
    require_map(root, "<root>");
    check_keys(root, {"problem", "scheme", "grid", "epsilons", "mollifier", "smooth", "outputs"}, "config");

    if (const auto p = root["problem"]) apply_problem(p, cfg);
    if (const auto s = root["scheme"]) {
        require_map(s, "scheme");
        check_keys(s, {"theta"}, "scheme");
        if (const auto t = s["theta"]) {
            cfg.scheme.theta = number(t, "theta");
            if (!(cfg.scheme.theta >= 0.5 && cfg.scheme.theta <= 1.0)) {
                fail(t, "key 'theta': must lie in [0.5, 1]");
            }
        }
    }
    if (const auto e = root["epsilons"]) {
        cfg.epsilons = numbers(e, "epsilons");
        try {
            (void)MollifierNet(default_bump(), cfg.epsilons);
        } catch (const Error& err) {
            fail(e, std::string("key 'epsilons': ") + err.what());
        }
    }
    if (const auto m = root["mollifier"]) {
        cfg.mollifier = text(m, "mollifier");
        if (cfg.mollifier != "exp" && cfg.mollifier != "cosine") {
            fail(m, "key 'mollifier': expected 'exp' or 'cosine'");
        }
    }
    if (const auto m = root["smooth"]) {
        const std::string s = text(m, "smooth");
        if (s == "sample") {
            cfg.instance.smooth = SmoothHandling::Sample;
        } else if (s == "convolve") {
            cfg.instance.smooth = SmoothHandling::Convolve;
        } else {
            fail(m, "key 'smooth': expected 'sample' or 'convolve'");
        }
    }
    if (const auto g = root["grid"]) {
        require_map(g, "grid");
        check_keys(g, {"nx", "nt", "cells_per_eps", "multiple", "min_nx", "min_nt", "shared"}, "grid");
        if (const auto n = g["shared"]) cfg.shared_grid = boolean(n, "shared");
        if (const auto n = g["cells_per_eps"]) cfg.grids.cells_per_eps = number(n, "cells_per_eps");
        if (const auto n = g["multiple"]) cfg.grids.multiple = count(n, "multiple");
        if (const auto n = g["min_nx"]) cfg.grids.min_nx = count(n, "min_nx");
        if (const auto n = g["min_nt"]) cfg.grids.min_nt = count(n, "min_nt");
        const auto nx = g["nx"];
        const auto nt = g["nt"];
        if (nx || nt) {
            const double eps_min = *std::min_element(cfg.epsilons.begin(), cfg.epsilons.end());
            GridSpec fixed = cfg.grids.for_epsilon(eps_min, cfg.problem.T);
            if (nx) fixed.nx = count(nx, "nx");
            if (nt) fixed.nt = count(nt, "nt");
            cfg.grids.fixed = fixed;
        }
    }
    if (const auto o = root["outputs"]) {
        require_map(o, "outputs");
        check_keys(o, {"directory", "snapshots", "svg"}, "outputs");
        if (const auto d = o["directory"]) cfg.output_dir = text(d, "directory");
        if (const auto s = o["snapshots"]) {
            cfg.snapshots = numbers(s, "snapshots");
            for (double t : cfg.snapshots) {
                if (!(t >= 0.0 && t <= cfg.problem.T)) fail(s, "key 'snapshots': times must lie in [0, T]");
            }
        }
        if (const auto s = o["svg"]) cfg.svg = boolean(s, "svg");
    }
    return cfg;
}

YAML::Node load_node(const std::string& text)
{
    try {
        return YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ParseError("malformed configuration: " + e.msg, e.mark.line + 1, e.mark.column + 1);
    }
}

// ---------------------------------------------------------------------------
// Emission

void emit_fn_params(YAML::Emitter& out, const SmoothFn& fn)
{
    const auto p = fn.params();
    switch (fn.kind()) {
    case SmoothFn::Kind::Polynomial:
        out << YAML::Key << "kind" << YAML::Value << "polynomial";
        out << YAML::Key << "coefficients" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (double c : p) out << c;
        out << YAML::EndSeq;
        break;
    case SmoothFn::Kind::Sine:
    case SmoothFn::Kind::Cosine:
        out << YAML::Key << "kind" << YAML::Value
            << (fn.kind() == SmoothFn::Kind::Sine ? "sine" : "cosine");
        out << YAML::Key << "amp" << YAML::Value << p[0];
        out << YAML::Key << "k" << YAML::Value << p[1];
        out << YAML::Key << "phase" << YAML::Value << p[2];
        break;
    case SmoothFn::Kind::Bell:
        out << YAML::Key << "kind" << YAML::Value << "bell";
        out << YAML::Key << "center" << YAML::Value << p[0];
        out << YAML::Key << "width" << YAML::Value << p[1];
        break;
    case SmoothFn::Kind::Exponential:
        out << YAML::Key << "kind" << YAML::Value << "exponential";
        out << YAML::Key << "amp" << YAML::Value << p[0];
        out << YAML::Key << "rate" << YAML::Value << p[1];
        break;
    case SmoothFn::Kind::Custom:
        throw Error(ErrorCode::UnsupportedVariant,
                    "custom function '" + fn.name() + "' cannot be serialized");
    }
}

void emit_term(YAML::Emitter& out, const DistExpr::Node& n)
{
    if (const auto* c = std::get_if<expr::Constant>(&n)) {
        out << c->value;
    } else if (const auto* d = std::get_if<expr::Delta>(&n)) {
        out << YAML::Flow << YAML::BeginMap << YAML::Key << "delta" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "at" << YAML::Value << d->location;
        out << YAML::Key << "weight" << YAML::Value << d->weight;
        out << YAML::EndMap << YAML::EndMap;
    } else if (const auto* h = std::get_if<expr::Heaviside>(&n)) {
        out << YAML::Flow << YAML::BeginMap << YAML::Key << "heaviside" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "at" << YAML::Value << h->location;
        out << YAML::Key << "low" << YAML::Value << h->low;
        out << YAML::Key << "high" << YAML::Value << h->high;
        out << YAML::EndMap << YAML::EndMap;
    } else if (const auto* s = std::get_if<expr::Smooth>(&n)) {
        out << YAML::Flow << YAML::BeginMap << YAML::Key << "smooth" << YAML::Value << YAML::BeginMap;
        emit_fn_params(out, s->fn);
        if (s->support != Interval::whole_line()) {
            out << YAML::Key << "support" << YAML::Value << YAML::Flow << YAML::BeginSeq
                << s->support.lo << s->support.hi << YAML::EndSeq;
        }
        if (s->factor != 1.0) out << YAML::Key << "factor" << YAML::Value << s->factor;
        out << YAML::EndMap << YAML::EndMap;
    } else {
        throw Error(ErrorCode::UnsupportedVariant, "empty distribution expression");
    }
}

void emit_dist(YAML::Emitter& out, const DistExpr& e)
{
    if (std::holds_alternative<expr::Sum>(e.node())) {
        out << YAML::Flow << YAML::BeginSeq;
        e.for_each_term([&](const DistExpr::Node& n) { emit_term(out, n); });
        out << YAML::EndSeq;
    } else {
        emit_term(out, e.node());
    }
}

void emit_space_time(YAML::Emitter& out, const SpaceTimeExpr& e)
{
    if (e.is_zero()) {
        out << 0.0;
        return;
    }
    out << YAML::BeginSeq;
    for (const auto& t : e.terms) {
        out << YAML::Flow << YAML::BeginMap;
        out << YAML::Key << "time" << YAML::Value;
        emit_dist(out, t.time);
        out << YAML::Key << "space" << YAML::Value;
        emit_dist(out, t.space);
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;
}

void emit_problem_fields(YAML::Emitter& out, const ProblemSpec& s)
{
    out << YAML::Key << "T" << YAML::Value << s.T;
    out << YAML::Key << "alpha" << YAML::Value << s.alpha;
    out << YAML::Key << "a" << YAML::Value;
    emit_space_time(out, s.a);
    out << YAML::Key << "b" << YAML::Value;
    emit_space_time(out, s.b);
    out << YAML::Key << "q" << YAML::Value;
    emit_dist(out, s.q);
    out << YAML::Key << "f" << YAML::Value;
    emit_space_time(out, s.f);
    out << YAML::Key << "u0" << YAML::Value;
    emit_dist(out, s.u0);
    out << YAML::Key << "g0" << YAML::Value;
    emit_dist(out, s.g0);
    out << YAML::Key << "g1" << YAML::Value;
    emit_dist(out, s.g1);
}

}  // namespace

RunConfig parse_config(const std::string& text)
{
    return from_yaml(load_node(text));
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

DistExpr parse_expr(const std::string& text)
{
    return parse_dist(load_node(text), "expression");
}

ProblemSpec parse_problem(const std::string& text)
{
    RunConfig cfg;
    apply_problem(load_node(text), cfg);
    return cfg.problem;
}

std::string to_yaml(const ProblemSpec& spec)
{
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;
    emit_problem_fields(out, spec);
    out << YAML::EndMap;
    return out.c_str();
}

std::string to_yaml(const RunConfig& cfg)
{
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;
    out << YAML::Key << "problem" << YAML::Value << YAML::BeginMap;
    if (cfg.case_id) {
        out << YAML::Key << "case" << YAML::Value << *cfg.case_id;
        out << YAML::Key << "variant" << YAML::Value
            << (cfg.variant == CaseVariant::Figure ? "figure" : "text");
    }
    emit_problem_fields(out, cfg.problem);
    out << YAML::EndMap;

    out << YAML::Key << "scheme" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "theta" << YAML::Value << cfg.scheme.theta << YAML::EndMap;

    out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "cells_per_eps" << YAML::Value << cfg.grids.cells_per_eps;
    out << YAML::Key << "multiple" << YAML::Value << cfg.grids.multiple;
    out << YAML::Key << "min_nx" << YAML::Value << cfg.grids.min_nx;
    out << YAML::Key << "min_nt" << YAML::Value << cfg.grids.min_nt;
    out << YAML::Key << "shared" << YAML::Value << cfg.shared_grid;
    if (cfg.grids.fixed) {
        out << YAML::Key << "nx" << YAML::Value << cfg.grids.fixed->nx;
        out << YAML::Key << "nt" << YAML::Value << cfg.grids.fixed->nt;
    }
    out << YAML::EndMap;

    out << YAML::Key << "epsilons" << YAML::Value << YAML::Flow << cfg.epsilons;
    out << YAML::Key << "mollifier" << YAML::Value << cfg.mollifier;
    out << YAML::Key << "smooth" << YAML::Value
        << (cfg.instance.smooth == SmoothHandling::Sample ? "sample" : "convolve");

    out << YAML::Key << "outputs" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "directory" << YAML::Value << cfg.output_dir;
    out << YAML::Key << "snapshots" << YAML::Value << YAML::Flow << cfg.snapshots;
    out << YAML::Key << "svg" << YAML::Value << cfg.svg;
    out << YAML::EndMap;
    out << YAML::EndMap;
    return out.c_str();
}

}  // namespace vw
