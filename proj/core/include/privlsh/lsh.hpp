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

#ifndef PRIVLSH_LSH_HPP_
#define PRIVLSH_LSH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "privlsh/random.hpp"
#include "privlsh/vectors.hpp"

namespace privlsh {

// A kappa-bit random-projection hash for angular distance: kappa hyperplane
// normals in R^n with i.i.d. N(0, 1) entries. Bit i of H(x) is 1 iff
// <r_i, x> >= 0 (a dot product of exactly zero maps to 1).
//
// A sampled family is fully determined by (rng_version, seed, n, kappa):
// entry (i, j) is the inverse-normal transform of counter i * n + j of the
// seeded counter generator, so every party holding the seed derives the same
// normals bit for bit.
class ProjectionFamily {
 public:
  static absl::StatusOr<ProjectionFamily> Sample(std::size_t dimension,
                                                 std::size_t width,
                                                 std::uint64_t seed);

  // A family with explicitly given normals (one row per bit). Such a family
  // has no seed and cannot be serialized.
  static absl::StatusOr<ProjectionFamily> FromNormals(
      const std::vector<std::vector<double>>& normals);

  std::size_t dimension() const { return dimension_; }
  std::size_t width() const { return width_; }
  std::optional<std::uint64_t> seed() const { return seed_; }
  absl::string_view rng_version() const { return rng_version_; }

  std::span<const double> normal(std::size_t bit) const {
    return std::span<const double>(normals_).subspan(bit * dimension_,
                                                     dimension_);
  }

  // Errors: DimensionMismatch, ZeroVector.
  absl::StatusOr<BitString> Hash(const Vector& x) const;

  // Elementwise Hash, order preserved. Fails on the first bad vector.
  absl::StatusOr<std::vector<BitString>> HashDataset(
      std::span<const Vector> xs) const;

  // Text form storing (version, seed, n, kappa); normals are re-derived on
  // parse. Fails for families built with FromNormals.
  absl::StatusOr<std::string> Serialize() const;
  static absl::StatusOr<ProjectionFamily> Parse(absl::string_view text);

 private:
  ProjectionFamily(std::size_t dimension, std::size_t width,
                   std::optional<std::uint64_t> seed,
                   std::vector<double> normals)
      : dimension_(dimension),
        width_(width),
        seed_(seed),
        rng_version_(seed ? std::string(kRngVersion) : "explicit"),
        normals_(std::move(normals)) {}

  std::size_t dimension_;
  std::size_t width_;
  std::optional<std::uint64_t> seed_;
  std::string rng_version_;
  std::vector<double> normals_;  // width_ x dimension_, row major
};

}  // namespace privlsh

#endif  // PRIVLSH_LSH_HPP_
