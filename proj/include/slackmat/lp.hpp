#pragma once

#include <optional>
#include <vector>

#include "slackmat/rational.hpp"

namespace slackmat {

// Exact feasibility of {x >= 0 : A x = b} via phase-one simplex with Bland's
// rule (termination guaranteed, all arithmetic rational). Returns a feasible
// point when one exists.
std::optional<std::vector<Rational>> lp_feasible_eq(
    const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b);

}  // namespace slackmat
