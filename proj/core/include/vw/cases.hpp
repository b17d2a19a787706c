#pragma once

#include <optional>
#include <string>

#include "vw/problem.hpp"
#include "vw/sweep.hpp"

namespace vw {

/// Location of the singular term. `Text` follows the case list; `Figure`
/// uses the alternative plotting locations (Case 3 at t=0.25,
/// Case 4 at x=0.6, Case 5 at t=0.25). Cases 1 and 2 have one variant.
enum class CaseVariant { Text, Figure };

/// Initial profile exp(1/((x-0.5)^2 + 0.025)) shared by all cases.
DistExpr case_initial_profile();

/// Built-in problem 1..5 with T = 1, alpha = 1, f = 0. Throws UnknownCase.
ProblemSpec builtin_case(int id, CaseVariant variant = CaseVariant::Text);

/// Where the singular term of a case sits (x for cases 2 and 4, t for 3 and
/// 5); NaN for case 1.
double singular_location(int id, CaseVariant variant = CaseVariant::Text);

/// Reference used to isolate what the singular term of a case adds: Case 1
/// (subtracted) for cases 2-4, and for case 5 the boundary-driven part
/// itself (u0 = 0). Empty for case 1.
std::optional<ExcessSpec> case_excess(int id, CaseVariant variant = CaseVariant::Text);

std::string case_description(int id, CaseVariant variant = CaseVariant::Text);

}  // namespace vw
