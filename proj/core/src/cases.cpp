#include "vw/cases.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "vw/error.hpp"

namespace vw {

namespace {

void check_id(int id)
{
    if (id < 1 || id > 5) {
        throw Error(ErrorCode::UnknownCase, "unknown case id " + std::to_string(id) + " (expected 1..5)");
    }
}

DistExpr one_plus_delta(double location)
{
    return DistExpr::sum({DistExpr::constant(1.0), DistExpr::delta(location)});
}

}  // namespace

DistExpr case_initial_profile()
{
    return DistExpr::smooth(SmoothFn::bell(0.5, 0.025));
}

double singular_location(int id, CaseVariant variant)
{
    check_id(id);
    const bool fig = variant == CaseVariant::Figure;
    switch (id) {
    case 2: return 0.45;
    case 3: return fig ? 0.25 : 0.5;
    case 4: return fig ? 0.6 : 0.45;
    case 5: return fig ? 0.25 : 0.45;
    default: return std::numeric_limits<double>::quiet_NaN();
    }
}

ProblemSpec builtin_case(int id, CaseVariant variant)
{
    check_id(id);
    ProblemSpec spec;
    spec.T = 1.0;
    spec.alpha = 1.0;
    spec.a = SpaceTimeExpr::in_space(DistExpr::constant(1.0));
    spec.b = SpaceTimeExpr::in_space(DistExpr::constant(1.0));
    spec.q = DistExpr::constant(1.0);
    spec.f = SpaceTimeExpr::zero();
    spec.u0 = case_initial_profile();
    spec.g0 = DistExpr::constant(0.0);
    spec.g1 = DistExpr::constant(0.0);

    const double s = singular_location(id, variant);
    switch (id) {
    case 2: spec.a = SpaceTimeExpr::in_space(one_plus_delta(s)); break;
    case 3: spec.b = SpaceTimeExpr::in_time(one_plus_delta(s)); break;
    case 4: spec.q = one_plus_delta(s); break;
    case 5: spec.g1 = DistExpr::delta(s); break;
    default: break;
    }
    return spec;
}

std::optional<ExcessSpec> case_excess(int id, CaseVariant variant)
{
    check_id(id);
    if (id == 1) return std::nullopt;
    if (id == 5) {
        auto spec = builtin_case(5, variant);
        spec.u0 = DistExpr::constant(0.0);
        return ExcessSpec{spec, false};
    }
    return ExcessSpec{builtin_case(1, variant), true};
}

std::string case_description(int id, CaseVariant variant)
{
    check_id(id);
    const std::string loc = std::to_string(singular_location(id, variant)).substr(0, 4);
    switch (id) {
    case 1: return "a = 1, b = 1, q = 1, g0 = g1 = 0";
    case 2: return "a = 1 + delta(x-" + loc + "), b = 1, q = 1, g0 = g1 = 0";
    case 3: return "a = 1, b = 1 + delta(t-" + loc + "), q = 1, g0 = g1 = 0";
    case 4: return "a = 1, b = 1, q = 1 + delta(x-" + loc + "), g0 = g1 = 0";
    default: return "a = 1, b = 1, q = 1, g0 = 0, g1 = delta(t-" + loc + ")";
    }
}

}  // namespace vw
