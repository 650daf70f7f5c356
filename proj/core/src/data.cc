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

#include "privlsh/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "privlsh/errors.hpp"
#include "privlsh/random.hpp"

namespace privlsh {
namespace {

constexpr absl::string_view kDatasetMagic = "privlsh-dataset v1";

std::string ShortestDouble(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string PaddedNumber(std::size_t value, std::size_t count) {
  const std::size_t width = std::to_string(count > 0 ? count - 1 : 0).size();
  std::string digits = std::to_string(value);
  return std::string(width - std::min(width, digits.size()), '0') + digits;
}

SparseVector AsSparse(const Vector& v) {
  if (const auto* s = std::get_if<SparseVector>(&v)) return *s;
  return SparseVector::FromDense(std::get<DenseVector>(v));
}

std::vector<double> UnitGaussian(std::size_t n, CounterRng& rng) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.Normal();
  return v;
}

double DotSpan(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Removes the components of `v` along the orthonormal `basis` and normalizes.
// Returns false if nothing is left.
bool OrthonormalizeAgainst(std::vector<double>& v,
                           const std::vector<std::vector<double>>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      const double proj = DotSpan(v, b);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * b[i];
    }
  }
  const double norm = std::sqrt(DotSpan(v, v));
  if (!(norm > 1e-8)) return false;
  for (double& x : v) x /= norm;
  return true;
}

}  // namespace

absl::StatusOr<std::vector<EventRecord>> ParseEvents(
    absl::string_view text, const LoadOptions& options) {
  if (options.dimension == 0) {
    return InvalidParamsError("event dimension must be >= 1");
  }
  const char separator = options.format == EventFormat::kTsv ? '\t' : ',';
  std::vector<EventRecord> events;
  int line_number = 0;
  bool header_pending = options.has_header;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    std::vector<absl::string_view> fields = absl::StrSplit(line, separator);
    if (fields.size() != 3) {
      return ParseError(line_number,
                        absl::StrCat("expected 3 fields, got ", fields.size()));
    }
    EventRecord record;
    record.user_id = std::string(absl::StripAsciiWhitespace(fields[0]));
    if (record.user_id.empty()) return ParseError(line_number, "empty user id");
    if (!absl::SimpleAtoi(absl::StripAsciiWhitespace(fields[1]),
                          &record.item_index)) {
      return ParseError(line_number, absl::StrCat("bad item index '",
                                                  fields[1], "'"));
    }
    if (record.item_index >= options.dimension) {
      return ParseError(line_number,
                        absl::StrCat("item index ", record.item_index,
                                     " out of range for n=", options.dimension));
    }
    if (!absl::SimpleAtod(absl::StripAsciiWhitespace(fields[2]),
                          &record.value) ||
        !std::isfinite(record.value)) {
      return ParseError(line_number,
                        absl::StrCat("bad value '", fields[2], "'"));
    }
    events.push_back(std::move(record));
  }
  return events;
}

absl::StatusOr<std::vector<EventRecord>> LoadEvents(
    const std::string& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return IoError(absl::StrCat("cannot open '", path, "'"));
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return IoError(absl::StrCat("cannot read '", path, "'"));
  return ParseEvents(buffer.str(), options);
}

absl::StatusOr<BuiltDataset> BuildVectors(
    const std::vector<EventRecord>& events, std::size_t dimension,
    VectorMode mode) {
  if (dimension == 0) return InvalidParamsError("dimension must be >= 1");
  std::map<std::string, std::map<std::uint32_t, double>> by_user;
  for (const EventRecord& e : events) {
    if (e.item_index >= dimension) {
      return InvalidParamsError(absl::StrCat(
          "item index ", e.item_index, " out of range for n=", dimension));
    }
    by_user[e.user_id][e.item_index] = e.value;
  }

  std::vector<std::string> ids;
  std::vector<Vector> vectors;
  std::vector<std::string> dropped;
  for (const auto& [user, items] : by_user) {
    double shift = 0.0;
    if (mode == VectorMode::kRatingCentered) {
      for (const auto& [item, value] : items) shift += value;
      shift /= static_cast<double>(items.size());
    }
    std::vector<SparseEntry> entries;
    for (const auto& [item, value] : items) {
      const double v = value - shift;
      if (v != 0.0) entries.push_back({item, v});
    }
    if (entries.empty()) {
      dropped.push_back(user);
      continue;
    }
    PRIVLSH_ASSIGN_OR_RETURN(SparseVector sv,
                             SparseVector::Create(dimension, std::move(entries)));
    ids.push_back(user);
    vectors.emplace_back(std::move(sv));
  }
  if (vectors.empty()) {
    return EmptyDatasetError("every user has an all-zero vector");
  }
  PRIVLSH_ASSIGN_OR_RETURN(Dataset dataset,
                           Dataset::Create(std::move(ids), std::move(vectors)));
  return BuiltDataset{std::move(dataset), std::move(dropped)};
}

absl::StatusOr<BuiltDataset> TruncateDimensions(const Dataset& dataset,
                                                std::size_t dimension) {
  const std::size_t n = dataset.dimension();
  if (dimension == 0 || dimension > n) {
    return InvalidParamsError(absl::StrCat("cannot truncate n=", n, " to ",
                                           dimension));
  }
  std::vector<SparseVector> sparse;
  sparse.reserve(dataset.size());
  std::vector<std::size_t> support(n, 0);
  for (const Vector& v : dataset.vectors()) {
    sparse.push_back(AsSparse(v));
    for (const SparseEntry& e : sparse.back().entries()) ++support[e.index];
  }
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return support[a] > support[b];
                   });
  order.resize(dimension);
  std::sort(order.begin(), order.end());
  std::vector<std::int64_t> remap(n, -1);
  for (std::size_t i = 0; i < order.size(); ++i) remap[order[i]] = i;

  std::vector<std::string> ids;
  std::vector<Vector> vectors;
  std::vector<std::string> dropped;
  for (std::size_t u = 0; u < sparse.size(); ++u) {
    std::vector<SparseEntry> entries;
    for (const SparseEntry& e : sparse[u].entries()) {
      if (remap[e.index] >= 0) {
        entries.push_back({static_cast<std::uint32_t>(remap[e.index]), e.value});
      }
    }
    if (entries.empty()) {
      dropped.push_back(dataset.id(u));
      continue;
    }
    PRIVLSH_ASSIGN_OR_RETURN(SparseVector sv,
                             SparseVector::Create(dimension, std::move(entries)));
    ids.push_back(dataset.id(u));
    vectors.emplace_back(std::move(sv));
  }
  if (vectors.empty()) return EmptyDatasetError("every user was dropped");
  PRIVLSH_ASSIGN_OR_RETURN(Dataset out,
                           Dataset::Create(std::move(ids), std::move(vectors)));
  return BuiltDataset{std::move(out), std::move(dropped)};
}

absl::StatusOr<Dataset> Synthesize(const SynthSpec& spec) {
  if (spec.dimension < 2 || spec.clusters < 1 || spec.users_per_cluster < 1) {
    return InvalidParamsError(
        "synthesis needs dimension >= 2 and at least one cluster and user");
  }
  if (!(spec.spread > 0.0 && spec.spread < 0.5)) {
    return InvalidParamsError(
        absl::StrCat("spread must lie in (0, 0.5), got ", spec.spread));
  }
  if (spec.clusters > spec.dimension) {
    return InvalidParamsError(absl::StrCat(
        spec.clusters, " mutually orthogonal centers do not fit in dimension ",
        spec.dimension));
  }
  CounterRng rng(spec.seed);
  std::vector<std::vector<double>> centers;
  while (centers.size() < spec.clusters) {
    std::vector<double> c = UnitGaussian(spec.dimension, rng);
    if (OrthonormalizeAgainst(c, centers)) centers.push_back(std::move(c));
  }

  const double angle = std::numbers::pi * spec.spread;
  std::vector<std::string> ids;
  std::vector<Vector> vectors;
  for (std::size_t c = 0; c < spec.clusters; ++c) {
    for (std::size_t m = 0; m < spec.users_per_cluster; ++m) {
      std::vector<double> u;
      do {
        u = UnitGaussian(spec.dimension, rng);
      } while (!OrthonormalizeAgainst(u, {centers[c]}));
      std::vector<double> x(spec.dimension);
      for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = std::cos(angle) * centers[c][i] + std::sin(angle) * u[i];
      }
      PRIVLSH_ASSIGN_OR_RETURN(DenseVector dv, DenseVector::Create(std::move(x)));
      ids.push_back(absl::StrCat("c", PaddedNumber(c, spec.clusters), "u",
                                 PaddedNumber(m, spec.users_per_cluster)));
      vectors.emplace_back(std::move(dv));
    }
  }
  return Dataset::Create(std::move(ids), std::move(vectors));
}

std::string SerializeDataset(const Dataset& dataset) {
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dataset.index().rank(a) < dataset.index().rank(b);
  });
  std::string out = absl::StrCat(kDatasetMagic, "\nn ", dataset.dimension(),
                                 "\nusers ", dataset.size(), "\n");
  for (std::size_t i : order) {
    absl::StrAppend(&out, dataset.id(i), "\t");
    const SparseVector sv = AsSparse(dataset.vector(i));
    bool first = true;
    for (const SparseEntry& e : sv.entries()) {
      absl::StrAppend(&out, first ? "" : " ", e.index, ":",
                      ShortestDouble(e.value));
      first = false;
    }
    out += '\n';
  }
  return out;
}

absl::StatusOr<Dataset> ParseDataset(absl::string_view text) {
  std::vector<absl::string_view> lines = absl::StrSplit(text, '\n');
  while (!lines.empty() && absl::StripAsciiWhitespace(lines.back()).empty()) {
    lines.pop_back();
  }
  if (lines.size() < 3 || absl::StripAsciiWhitespace(lines[0]) != kDatasetMagic) {
    return ParseError(1, absl::StrCat("expected '", kDatasetMagic, "'"));
  }
  std::size_t dimension = 0;
  std::size_t users = 0;
  if (!absl::ConsumePrefix(&lines[1], "n ") ||
      !absl::SimpleAtoi(lines[1], &dimension) || dimension == 0) {
    return ParseError(2, "expected 'n <dimension>'");
  }
  if (!absl::ConsumePrefix(&lines[2], "users ") ||
      !absl::SimpleAtoi(lines[2], &users)) {
    return ParseError(3, "expected 'users <count>'");
  }
  if (lines.size() - 3 != users) {
    return ParseError(3, absl::StrCat("header says ", users, " users, found ",
                                      lines.size() - 3, " rows"));
  }
  std::vector<std::string> ids;
  std::vector<Vector> vectors;
  for (std::size_t r = 3; r < lines.size(); ++r) {
    const int line_number = static_cast<int>(r) + 1;
    std::pair<absl::string_view, absl::string_view> row =
        absl::StrSplit(lines[r], absl::MaxSplits('\t', 1));
    if (row.first.empty()) return ParseError(line_number, "empty id");
    std::vector<SparseEntry> entries;
    for (absl::string_view token :
         absl::StrSplit(row.second, ' ', absl::SkipEmpty())) {
      std::pair<absl::string_view, absl::string_view> kv =
          absl::StrSplit(token, absl::MaxSplits(':', 1));
      SparseEntry e;
      if (!absl::SimpleAtoi(kv.first, &e.index) ||
          !absl::SimpleAtod(kv.second, &e.value)) {
        return ParseError(line_number,
                          absl::StrCat("bad entry '", token, "'"));
      }
      entries.push_back(e);
    }
    auto sv = SparseVector::Create(dimension, std::move(entries));
    if (!sv.ok()) return ParseError(line_number, sv.status().message());
    ids.emplace_back(row.first);
    vectors.emplace_back(*std::move(sv));
  }
  return Dataset::Create(std::move(ids), std::move(vectors));
}

}  // namespace privlsh
