#pragma once

#include "json.hpp"
#include "slackmat/matrix.hpp"

namespace slackmat {

nlohmann::json matrix_to_json(const RationalMatrix& S);
RationalMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace slackmat
