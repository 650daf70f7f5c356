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

#include "cli/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "privlsh/errors.hpp"

namespace privlsh::cli {
namespace {

std::string CsvCell(const Json& v) {
  switch (v.type()) {
    case Json::value_t::number_float:
      return FormatDouble(v.get<double>());
    case Json::value_t::number_integer:
      return std::to_string(v.get<std::int64_t>());
    case Json::value_t::number_unsigned:
      return std::to_string(v.get<std::uint64_t>());
    case Json::value_t::boolean:
      return v.get<bool>() ? "true" : "false";
    case Json::value_t::string:
      return v.get<std::string>();
    case Json::value_t::null:
      return "";
    default:
      return v.dump();
  }
}

}  // namespace

absl::StatusOr<TableFormat> ParseTableFormat(absl::string_view name) {
  if (name == "csv") return TableFormat::kCsv;
  if (name == "json") return TableFormat::kJson;
  return InvalidParamsError(absl::StrCat("unknown format '", name, "'"));
}

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

Table::Table(std::string schema, std::vector<std::string> columns)
    : schema_(std::move(schema)), columns_(std::move(columns)) {}

void Table::AddRow(Json row) { rows_.push_back(std::move(row)); }

std::string Table::Render(TableFormat format) const {
  if (format == TableFormat::kJson) {
    Json doc;
    doc["schema"] = schema_;
    doc["columns"] = columns_;
    doc["rows"] = Json::array();
    for (const Json& row : rows_) doc["rows"].push_back(row);
    return doc.dump(2) + "\n";
  }
  std::string out = absl::StrCat("# schema: ", schema_, "\n",
                                 absl::StrJoin(columns_, ","), "\n");
  for (const Json& row : rows_) {
    std::vector<std::string> cells;
    cells.reserve(columns_.size());
    for (const std::string& c : columns_) {
      cells.push_back(row.contains(c) ? CsvCell(row.at(c)) : "");
    }
    absl::StrAppend(&out, absl::StrJoin(cells, ","), "\n");
  }
  return out;
}

absl::Status WriteOutput(const std::string& path, const std::string& content,
                         std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return absl::OkStatus();
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) return IoError(absl::StrCat("cannot open '", path, "' for writing"));
  file << content;
  file.close();
  if (!file) return IoError(absl::StrCat("cannot write '", path, "'"));
  return absl::OkStatus();
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return IoError(absl::StrCat("cannot open '", path, "'"));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::uint64_t ResolveSeed(bool given, std::uint64_t value,
                          absl::string_view name, std::ostream& err) {
  if (given) return value;
  std::random_device device;
  const std::uint64_t seed =
      (static_cast<std::uint64_t>(device()) << 32) ^ device();
  err << "privlsh: drew " << name << "=" << seed << "\n";
  return seed;
}

}  // namespace privlsh::cli
