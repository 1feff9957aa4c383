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

// Process-matrix interchange files (.pm.json).
//
//   {
//     "label": "optional text",
//     "matrix": {"cols": 4, "entries": [[re, im], ...], "rows": 4},
//     "parties": [{"d_in": 2, "d_out": 2}, ...]
//   }
//
// Entries are row-major. Numbers are written as shortest round-trip decimals,
// so serialize(parse(text)) reproduces canonical text exactly.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "procmat/process.hpp"

namespace procmat {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct PMFile {
  ProcessMatrix process;
  std::optional<std::string> label;
};

/// Hermiticity is not checked here. Throws ParseError on malformed text or
/// non-finite entries, DimensionError when rows/cols disagree with the parties.
PMFile parse_pm_file(std::string_view text);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ProcessMatrix& w, const std::optional<std::string>& label = std::nullopt);

/// Canonical single-line form with a trailing newline.
std::string serialize_pm_file(const ProcessMatrix& w, const std::optional<std::string>& label = std::nullopt);

}  // namespace procmat
