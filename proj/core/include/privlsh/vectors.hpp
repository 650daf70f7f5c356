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

#ifndef PRIVLSH_VECTORS_HPP_
#define PRIVLSH_VECTORS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace privlsh {

// A dense real vector in R^n with n >= 1 and finite entries.
class DenseVector {
 public:
  static absl::StatusOr<DenseVector> Create(std::vector<double> values);

  std::size_t dimension() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  double SquaredNorm() const;
  double Norm() const;

  friend bool operator==(const DenseVector&, const DenseVector&) = default;

 private:
  explicit DenseVector(std::vector<double> values)
      : values_(std::move(values)) {}

  std::vector<double> values_;
};

struct SparseEntry {
  std::uint32_t index;
  double value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

// A sparse vector: strictly increasing indices in [0, n), no stored zeros.
class SparseVector {
 public:
  static absl::StatusOr<SparseVector> Create(std::size_t dimension,
                                             std::vector<SparseEntry> entries);
  // Drops zero entries of `dense`.
  static SparseVector FromDense(const DenseVector& dense);

  std::size_t dimension() const { return dimension_; }
  std::span<const SparseEntry> entries() const { return entries_; }
  std::size_t nonzeros() const { return entries_.size(); }

  DenseVector ToDense() const;
  double SquaredNorm() const;
  double Norm() const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  SparseVector(std::size_t dimension, std::vector<SparseEntry> entries)
      : dimension_(dimension), entries_(std::move(entries)) {}

  std::size_t dimension_;
  std::vector<SparseEntry> entries_;
};

// Either representation. Distance operations accept any combination and use
// sparse-aware dot products.
using Vector = std::variant<DenseVector, SparseVector>;

std::size_t Dimension(const Vector& x);
double Norm(const Vector& x);
DenseVector ToDense(const Vector& x);

absl::StatusOr<double> Dot(const Vector& x, const Vector& y);

// A fixed-width bit string of kappa >= 1 bits, packed into 64-bit words.
class BitString {
 public:
  static absl::StatusOr<BitString> Zeros(std::size_t width);
  // Parses a string of '0'/'1' characters, most significant first (index 0 is
  // the leftmost character).
  static absl::StatusOr<BitString> FromString(absl::string_view bits);

  std::size_t width() const { return width_; }
  bool bit(std::size_t i) const {
    return (words_[i / 64] >> (i % 64)) & std::uint64_t{1};
  }
  void set(std::size_t i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (value) {
      words_[i / 64] |= mask;
    } else {
      words_[i / 64] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  std::span<const std::uint64_t> words() const { return words_; }
  std::size_t PopCount() const;
  std::string ToString() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  explicit BitString(std::size_t width)
      : width_(width), words_((width + 63) / 64, 0) {}

  std::size_t width_;
  std::vector<std::uint64_t> words_;
};

absl::StatusOr<DenseVector> Normalize(const DenseVector& x);
absl::StatusOr<Vector> Normalize(const Vector& x);

// (1/pi) * arccos(<x,x'> / (|x||x'|)), with the cosine clamped to [-1, 1].
absl::StatusOr<double> AngularDistance(const Vector& x, const Vector& y);

absl::StatusOr<double> EuclideanDistance(const Vector& x, const Vector& y);

absl::StatusOr<int> HammingDistance(const BitString& v, const BitString& w);

// Chord length between unit vectors at angular distance `d_theta`:
// sqrt(2 - 2 cos(pi * d_theta)). Only meaningful for unit-norm inputs.
absl::StatusOr<double> AngularToEuclidean(double d_theta);
// Inverse of AngularToEuclidean on [0, 2].
absl::StatusOr<double> EuclideanToAngular(double d_euc);

}  // namespace privlsh

#endif  // PRIVLSH_VECTORS_HPP_
