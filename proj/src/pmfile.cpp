// Copyright 2026 The procmat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "procmat/pmfile.hpp"

#include <cmath>

namespace procmat {

namespace {

using nlohmann::json;

// 1-based line and column of a byte offset.
std::pair<int, int> locate(std::string_view text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const json& require(const json& obj, const char* key, const char* where) {
  if (!obj.is_object() || !obj.contains(key))
    throw ParseError(std::string("missing field '") + key + "' in " + where);
  return obj.at(key);
}

int positive_int(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw ParseError(std::string(what) + " must be a positive integer");
  return v.get<int>();
}

double finite_number(const json& v, std::size_t index) {
  if (!v.is_number()) throw ParseError("entry " + std::to_string(index) + " is not a number pair");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError("entry " + std::to_string(index) + " is not finite");
  return x;
}

}  // namespace

Matrix matrix_from_json(const json& j) {
  const int rows = positive_int(require(j, "rows", "matrix"), "matrix.rows");
  const int cols = positive_int(require(j, "cols", "matrix"), "matrix.cols");
  const json& entries = require(j, "entries", "matrix");
  if (!entries.is_array()) throw ParseError("matrix.entries must be an array");
  if (entries.size() != static_cast<std::size_t>(rows) * cols)
    throw DimensionError("matrix.entries has " + std::to_string(entries.size()) + " entries, expected rows*cols = " +
                         std::to_string(static_cast<std::size_t>(rows) * cols));
  Matrix m(rows, cols);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const json& e = entries[k];
    if (!e.is_array() || e.size() != 2) throw ParseError("entry " + std::to_string(k) + " must be [re, im]");
    m(static_cast<Eigen::Index>(k / cols), static_cast<Eigen::Index>(k % cols)) =
        Complex(finite_number(e[0], k), finite_number(e[1], k));
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

PMFile parse_pm_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                         e.what(),
                     line, col);
  } catch (const json::out_of_range& e) {
    throw ParseError(std::string("non-finite or out-of-range number: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("top level must be an object");

  const json& parties = require(doc, "parties", "document");
  if (!parties.is_array() || parties.empty()) throw ParseError("parties must be a nonempty array");
  std::vector<DimensionPair> dims;
  for (const json& p : parties)
    dims.emplace_back(positive_int(require(p, "d_in", "party"), "d_in"),
                      positive_int(require(p, "d_out", "party"), "d_out"));
  PartySpec spec(std::move(dims));

  Matrix m = matrix_from_json(require(doc, "matrix", "document"));
  if (m.rows() != spec.total_dim() || m.cols() != spec.total_dim())
    throw DimensionError("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         " but parties require " + std::to_string(spec.total_dim()) + "x" +
                         std::to_string(spec.total_dim()));

  std::optional<std::string> label;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw ParseError("label must be a string");
    label = doc["label"].get<std::string>();
  }
  return {ProcessMatrix(std::move(spec), std::move(m)), std::move(label)};
}

json to_json(const ProcessMatrix& w, const std::optional<std::string>& label) {
  json parties = json::array();
  for (const auto& p : w.spec().parties()) parties.push_back({{"d_in", p.d_in}, {"d_out", p.d_out}});
  json doc = {{"parties", std::move(parties)}, {"matrix", matrix_to_json(w.matrix())}};
  if (label) doc["label"] = *label;
  return doc;
}

std::string serialize_pm_file(const ProcessMatrix& w, const std::optional<std::string>& label) {
  return to_json(w, label).dump() + "\n";
}

}  // namespace procmat
