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

#include "privlsh/lsh.hpp"

#include <cmath>
#include <map>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "privlsh/errors.hpp"
#include "privlsh/random.hpp"

namespace privlsh {
namespace {

constexpr absl::string_view kFamilyMagic = "privlsh-family v1";

}  // namespace

absl::StatusOr<ProjectionFamily> ProjectionFamily::Sample(
    std::size_t dimension, std::size_t width, std::uint64_t seed) {
  if (dimension == 0 || width == 0) {
    return InvalidParamsError(
        absl::StrCat("need n >= 1 and kappa >= 1, got n=", dimension,
                     " kappa=", width));
  }
  const CounterRng rng(seed);
  std::vector<double> normals(dimension * width);
  for (std::size_t c = 0; c < normals.size(); ++c) {
    normals[c] = InverseNormalCdf(ToOpenUnit(rng.At(c)));
  }
  return ProjectionFamily(dimension, width, seed, std::move(normals));
}

absl::StatusOr<ProjectionFamily> ProjectionFamily::FromNormals(
    const std::vector<std::vector<double>>& normals) {
  if (normals.empty() || normals.front().empty()) {
    return InvalidParamsError("need at least one nonempty normal");
  }
  const std::size_t n = normals.front().size();
  std::vector<double> flat;
  flat.reserve(n * normals.size());
  for (const auto& row : normals) {
    if (row.size() != n) return DimensionMismatchError("ragged normals");
    bool nonzero = false;
    for (double v : row) {
      if (!std::isfinite(v)) return InvalidParamsError("non-finite normal");
      nonzero |= v != 0.0;
    }
    if (!nonzero) return InvalidParamsError("normal row is all zero");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return ProjectionFamily(n, normals.size(), std::nullopt, std::move(flat));
}

absl::StatusOr<BitString> ProjectionFamily::Hash(const Vector& x) const {
  if (Dimension(x) != dimension_) {
    return DimensionMismatchError(absl::StrCat(
        "vector dimension ", Dimension(x), " vs family dimension ",
        dimension_));
  }
  if (Norm(x) == 0.0) return ZeroVectorError("cannot hash");
  PRIVLSH_ASSIGN_OR_RETURN(BitString out, BitString::Zeros(width_));
  if (const auto* s = std::get_if<SparseVector>(&x)) {
    for (std::size_t i = 0; i < width_; ++i) {
      const double* row = normals_.data() + i * dimension_;
      double dot = 0.0;
      for (const SparseEntry& e : s->entries()) dot += row[e.index] * e.value;
      out.set(i, dot >= 0.0);
    }
  } else {
    const auto values = std::get<DenseVector>(x).values();
    for (std::size_t i = 0; i < width_; ++i) {
      const double* row = normals_.data() + i * dimension_;
      double dot = 0.0;
      for (std::size_t j = 0; j < dimension_; ++j) dot += row[j] * values[j];
      out.set(i, dot >= 0.0);
    }
  }
  return out;
}

absl::StatusOr<std::vector<BitString>> ProjectionFamily::HashDataset(
    std::span<const Vector> xs) const {
  std::vector<BitString> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto h = Hash(xs[i]);
    if (!h.ok()) {
      return absl::Status(h.status().code(),
                          absl::StrCat(h.status().message(), " (vector ", i,
                                       ")"));
    }
    out.push_back(*std::move(h));
  }
  return out;
}

absl::StatusOr<std::string> ProjectionFamily::Serialize() const {
  if (!seed_) {
    return absl::FailedPreconditionError(
        "family built from explicit normals has no seed to serialize");
  }
  return absl::StrCat(kFamilyMagic, "\nrng ", rng_version_, "\nseed ", *seed_,
                      "\nn ", dimension_, "\nkappa ", width_, "\n");
}

absl::StatusOr<ProjectionFamily> ProjectionFamily::Parse(
    absl::string_view text) {
  std::vector<absl::string_view> lines =
      absl::StrSplit(text, '\n', absl::SkipWhitespace());
  if (lines.empty() || absl::StripAsciiWhitespace(lines[0]) != kFamilyMagic) {
    return ParseError(1, absl::StrCat("expected '", kFamilyMagic, "'"));
  }
  std::map<std::string, std::string, std::less<>> fields;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::pair<absl::string_view, absl::string_view> kv =
        absl::StrSplit(absl::StripAsciiWhitespace(lines[i]),
                       absl::MaxSplits(' ', 1));
    fields[std::string(kv.first)] = std::string(kv.second);
  }
  for (const char* key : {"rng", "seed", "n", "kappa"}) {
    if (!fields.contains(key)) {
      return ParseError(0, absl::StrCat("missing field '", key, "'"));
    }
  }
  if (fields["rng"] != kRngVersion) {
    return InvalidParamsError(absl::StrCat("unsupported rng version '",
                                           fields["rng"], "', expected '",
                                           kRngVersion, "'"));
  }
  std::uint64_t seed;
  std::size_t n;
  std::size_t kappa;
  if (!absl::SimpleAtoi(fields["seed"], &seed) ||
      !absl::SimpleAtoi(fields["n"], &n) ||
      !absl::SimpleAtoi(fields["kappa"], &kappa)) {
    return ParseError(0, "non-integer seed, n or kappa");
  }
  return Sample(n, kappa, seed);
}

}  // namespace privlsh
