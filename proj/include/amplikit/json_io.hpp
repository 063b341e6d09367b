#ifndef AMPLIKIT_JSON_IO_HPP
#define AMPLIKIT_JSON_IO_HPP

// JSON serialization for the exchange formats used by the CLI.
//
// Matrix form:  {"labels": [1,2,4], "rows": [["1", "0", "3/2"], ...]}
// Entries are canonical rational strings so files round-trip exactly.

#include <json.hpp>

#include <string>
#include <vector>

#include "amplikit/matrix.hpp"

namespace amplikit {

using Json = nlohmann::json;

inline Json matrix_to_json(const LabeledMat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.entries.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.entries.cols(); ++j) {
      row.push_back(rat_to_string(m.entries.at(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return Json{{"labels", m.labels}, {"rows", std::move(rows)}};
}

inline LabeledMat matrix_from_json(const Json& j) {
  LabeledMat out;
  out.labels = j.at("labels").get<std::vector<int>>();
  const Json& rows = j.at("rows");
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = out.labels.size();
  out.entries = Mat(n_rows, n_cols);
  for (std::size_t i = 0; i < n_rows; ++i) {
    if (rows[i].size() != n_cols) {
      throw std::invalid_argument("matrix row width != label count");
    }
    for (std::size_t c = 0; c < n_cols; ++c) {
      out.entries.at(i, c) = rat_from_string(rows[i][c].get<std::string>());
    }
  }
  return out;
}

}  // namespace amplikit

#endif  // AMPLIKIT_JSON_IO_HPP
