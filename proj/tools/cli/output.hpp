//
// Copyright 2026 The privlsh Authors
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
//

#ifndef PRIVLSH_TOOLS_CLI_OUTPUT_HPP_
#define PRIVLSH_TOOLS_CLI_OUTPUT_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "json.hpp"

namespace privlsh::cli {

using Json = nlohmann::json;

enum class TableFormat { kCsv, kJson };

absl::StatusOr<TableFormat> ParseTableFormat(absl::string_view name);

// Shortest decimal text that parses back to `v`; "inf", "-inf", "nan".
std::string FormatDouble(double v);

// A schema-tagged table rendered as CSV (tables) or JSON.
//
// CSV:  "# schema: <schema>" then a header line and one line per row.
// JSON: {"schema": <schema>, "columns": [...], "rows": [{...}, ...]}.
class Table {
 public:
  Table(std::string schema, std::vector<std::string> columns);

  // `row` maps every column to a JSON scalar.
  void AddRow(Json row);

  const std::vector<Json>& rows() const { return rows_; }
  std::string Render(TableFormat format) const;

 private:
  std::string schema_;
  std::vector<std::string> columns_;
  std::vector<Json> rows_;
};

// Writes `content` to `path`, or to `out` when `path` is empty or "-".
absl::Status WriteOutput(const std::string& path, const std::string& content,
                         std::ostream& out);

absl::StatusOr<std::string> ReadFile(const std::string& path);

// Returns `value` if the flag was given; otherwise draws a seed from the OS
// entropy source and reports it on `err` as "<name>=<seed>".
std::uint64_t ResolveSeed(bool given, std::uint64_t value,
                          absl::string_view name, std::ostream& err);

}  // namespace privlsh::cli

#endif  // PRIVLSH_TOOLS_CLI_OUTPUT_HPP_
