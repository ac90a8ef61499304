#include "slackmat/json_io.hpp"

#include <stdexcept>

namespace slackmat {

nlohmann::json matrix_to_json(const RationalMatrix& S) {
  nlohmann::json j;
  j["rows"] = S.rows();
  j["cols"] = S.cols();
  j["row_labels"] = S.row_labels();
  j["col_labels"] = S.col_labels();
  nlohmann::json entries = nlohmann::json::array();
  for (int i = 0; i < S.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < S.cols(); ++c) row.push_back(format_rational(S.at(i, c)));
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j;
}

RationalMatrix matrix_from_json(const nlohmann::json& j) {
  const int m = j.at("rows").get<int>();
  const int n = j.at("cols").get<int>();
  if (m < 0 || n < 0) throw std::invalid_argument("matrix json: negative dimension");
  const nlohmann::json& entries = j.at("entries");
  if (static_cast<int>(entries.size()) != m)
    throw std::invalid_argument("matrix json: row count mismatch");
  RationalMatrix S(m, n);
  for (int i = 0; i < m; ++i) {
    const nlohmann::json& row = entries.at(i);
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("matrix json: column count mismatch in row " + std::to_string(i));
    for (int c = 0; c < n; ++c) {
      const nlohmann::json& v = row.at(c);
      if (v.is_string())
        S.at(i, c) = parse_rational(v.get<std::string>());
      else if (v.is_number_integer())
        S.at(i, c) = Rational(static_cast<long>(v.get<long long>()));
      else
        throw std::invalid_argument("matrix json: entries must be strings or integers");
    }
  }
  if (j.contains("row_labels")) S.set_row_labels(j.at("row_labels").get<std::vector<std::string>>());
  if (j.contains("col_labels")) S.set_col_labels(j.at("col_labels").get<std::vector<std::string>>());
  return S;
}

}  // namespace slackmat
