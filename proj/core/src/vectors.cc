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

#include "privlsh/vectors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <variant>

#include "absl/strings/str_cat.h"
#include "privlsh/errors.hpp"

namespace privlsh {
namespace {

double DenseDot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double SparseDenseDot(const SparseVector& s, std::span<const double> d) {
  double sum = 0.0;
  for (const SparseEntry& e : s.entries()) sum += e.value * d[e.index];
  return sum;
}

double SparseSparseDot(const SparseVector& a, const SparseVector& b) {
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  double sum = 0.0;
  while (ia != a.entries().end() && ib != b.entries().end()) {
    if (ia->index < ib->index) {
      ++ia;
    } else if (ib->index < ia->index) {
      ++ib;
    } else {
      sum += ia->value * ib->value;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

absl::Status CheckSameDimension(const Vector& x, const Vector& y) {
  if (Dimension(x) != Dimension(y)) {
    return DimensionMismatchError(
        absl::StrCat(Dimension(x), " vs ", Dimension(y)));
  }
  return absl::OkStatus();
}

// Angle between x/nx and y/ny as 2 atan2(|u - v|, |u + v|), accurate where
// the arccosine of the cosine is ill-conditioned (nearly parallel or
// antiparallel inputs).
double AngleBetweenUnits(const Vector& x, double nx, const Vector& y,
                         double ny) {
  double diff = 0.0;
  double sum = 0.0;
  auto add = [&](double a, double b) {
    const double u = a / nx;
    const double v = b / ny;
    diff += (u - v) * (u - v);
    sum += (u + v) * (u + v);
  };
  const auto* sx = std::get_if<SparseVector>(&x);
  const auto* sy = std::get_if<SparseVector>(&y);
  if (sx != nullptr && sy != nullptr) {
    auto i = sx->entries().begin();
    auto j = sy->entries().begin();
    while (i != sx->entries().end() || j != sy->entries().end()) {
      if (j == sy->entries().end() ||
          (i != sx->entries().end() && i->index < j->index)) {
        add(i->value, 0.0);
        ++i;
      } else if (i == sx->entries().end() || j->index < i->index) {
        add(0.0, j->value);
        ++j;
      } else {
        add(i->value, j->value);
        ++i;
        ++j;
      }
    }
  } else {
    const DenseVector a = ToDense(x);
    const DenseVector b = ToDense(y);
    for (std::size_t k = 0; k < a.dimension(); ++k) add(a[k], b[k]);
  }
  return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
}

}  // namespace

absl::StatusOr<DenseVector> DenseVector::Create(std::vector<double> values) {
  if (values.empty()) {
    return InvalidParamsError("dense vector must have dimension >= 1");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      return InvalidParamsError("dense vector entries must be finite");
    }
  }
  return DenseVector(std::move(values));
}

double DenseVector::SquaredNorm() const { return DenseDot(values_, values_); }

double DenseVector::Norm() const { return std::sqrt(SquaredNorm()); }

absl::StatusOr<SparseVector> SparseVector::Create(
    std::size_t dimension, std::vector<SparseEntry> entries) {
  if (dimension == 0) {
    return InvalidParamsError("sparse vector must have dimension >= 1");
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const SparseEntry& e = entries[i];
    if (e.index >= dimension) {
      return InvalidParamsError(
          absl::StrCat("index ", e.index, " out of range for dimension ",
                       dimension));
    }
    if (i > 0 && entries[i - 1].index >= e.index) {
      return InvalidParamsError("sparse indices must be strictly increasing");
    }
    if (e.value == 0.0 || !std::isfinite(e.value)) {
      return InvalidParamsError("sparse values must be finite and nonzero");
    }
  }
  return SparseVector(dimension, std::move(entries));
}

SparseVector SparseVector::FromDense(const DenseVector& dense) {
  std::vector<SparseEntry> entries;
  for (std::size_t i = 0; i < dense.dimension(); ++i) {
    if (dense[i] != 0.0) {
      entries.push_back({static_cast<std::uint32_t>(i), dense[i]});
    }
  }
  return SparseVector(dense.dimension(), std::move(entries));
}

DenseVector SparseVector::ToDense() const {
  std::vector<double> values(dimension_, 0.0);
  for (const SparseEntry& e : entries_) values[e.index] = e.value;
  return *DenseVector::Create(std::move(values));
}

double SparseVector::SquaredNorm() const {
  double sum = 0.0;
  for (const SparseEntry& e : entries_) sum += e.value * e.value;
  return sum;
}

double SparseVector::Norm() const { return std::sqrt(SquaredNorm()); }

std::size_t Dimension(const Vector& x) {
  return std::visit([](const auto& v) { return v.dimension(); }, x);
}

double Norm(const Vector& x) {
  return std::visit([](const auto& v) { return v.Norm(); }, x);
}

DenseVector ToDense(const Vector& x) {
  if (const auto* d = std::get_if<DenseVector>(&x)) return *d;
  return std::get<SparseVector>(x).ToDense();
}

absl::StatusOr<double> Dot(const Vector& x, const Vector& y) {
  PRIVLSH_RETURN_IF_ERROR(CheckSameDimension(x, y));
  struct Visitor {
    double operator()(const DenseVector& a, const DenseVector& b) const {
      return DenseDot(a.values(), b.values());
    }
    double operator()(const SparseVector& a, const DenseVector& b) const {
      return SparseDenseDot(a, b.values());
    }
    double operator()(const DenseVector& a, const SparseVector& b) const {
      return SparseDenseDot(b, a.values());
    }
    double operator()(const SparseVector& a, const SparseVector& b) const {
      return SparseSparseDot(a, b);
    }
  };
  return std::visit(Visitor{}, x, y);
}

absl::StatusOr<BitString> BitString::Zeros(std::size_t width) {
  if (width == 0) return InvalidParamsError("bit string width must be >= 1");
  return BitString(width);
}

absl::StatusOr<BitString> BitString::FromString(absl::string_view bits) {
  PRIVLSH_ASSIGN_OR_RETURN(BitString out, Zeros(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.set(i, true);
    } else if (bits[i] != '0') {
      return InvalidParamsError(
          absl::StrCat("bad bit character '", std::string(1, bits[i]), "'"));
    }
  }
  return out;
}

std::size_t BitString::PopCount() const {
  std::size_t count = 0;
  for (std::uint64_t w : words_) count += std::popcount(w);
  return count;
}

std::string BitString::ToString() const {
  std::string out(width_, '0');
  for (std::size_t i = 0; i < width_; ++i) {
    if (bit(i)) out[i] = '1';
  }
  return out;
}

absl::StatusOr<DenseVector> Normalize(const DenseVector& x) {
  const double norm = x.Norm();
  if (norm == 0.0) return ZeroVectorError("cannot normalize");
  std::vector<double> values(x.values().begin(), x.values().end());
  for (double& v : values) v /= norm;
  return DenseVector::Create(std::move(values));
}

absl::StatusOr<Vector> Normalize(const Vector& x) {
  if (const auto* d = std::get_if<DenseVector>(&x)) {
    PRIVLSH_ASSIGN_OR_RETURN(DenseVector out, Normalize(*d));
    return Vector(std::move(out));
  }
  const auto& s = std::get<SparseVector>(x);
  const double norm = s.Norm();
  if (norm == 0.0) return ZeroVectorError("cannot normalize");
  std::vector<SparseEntry> entries(s.entries().begin(), s.entries().end());
  for (SparseEntry& e : entries) e.value /= norm;
  PRIVLSH_ASSIGN_OR_RETURN(SparseVector out,
                           SparseVector::Create(s.dimension(), entries));
  return Vector(std::move(out));
}

absl::StatusOr<double> AngularDistance(const Vector& x, const Vector& y) {
  PRIVLSH_ASSIGN_OR_RETURN(const double dot, Dot(x, y));
  const double nx = Norm(x);
  const double ny = Norm(y);
  if (nx == 0.0 || ny == 0.0) {
    return ZeroVectorError("angular distance undefined");
  }
  const double cosine = std::clamp(dot / (nx * ny), -1.0, 1.0);
  if (std::abs(cosine) > 0.9) {
    return AngleBetweenUnits(x, nx, y, ny) / std::numbers::pi;
  }
  return std::acos(cosine) / std::numbers::pi;
}

absl::StatusOr<double> EuclideanDistance(const Vector& x, const Vector& y) {
  PRIVLSH_RETURN_IF_ERROR(CheckSameDimension(x, y));
  const DenseVector a = ToDense(x);
  double sum = 0.0;
  if (const auto* s = std::get_if<SparseVector>(&y)) {
    std::vector<double> diff(a.values().begin(), a.values().end());
    for (const SparseEntry& e : s->entries()) diff[e.index] -= e.value;
    for (double d : diff) sum += d * d;
  } else {
    const auto& b = std::get<DenseVector>(y);
    for (std::size_t i = 0; i < a.dimension(); ++i) {
      const double d = a[i] - b[i];
      sum += d * d;
    }
  }
  return std::sqrt(sum);
}

absl::StatusOr<int> HammingDistance(const BitString& v, const BitString& w) {
  if (v.width() != w.width()) {
    return DimensionMismatchError(
        absl::StrCat("bit widths ", v.width(), " vs ", w.width()));
  }
  int count = 0;
  for (std::size_t i = 0; i < v.words().size(); ++i) {
    count += std::popcount(v.words()[i] ^ w.words()[i]);
  }
  return count;
}

absl::StatusOr<double> AngularToEuclidean(double d_theta) {
  if (!(d_theta >= 0.0 && d_theta <= 1.0)) {
    return OutOfRangeError(
        absl::StrCat("angular distance ", d_theta, " outside [0, 1]"));
  }
  // 2 sin(pi d / 2) equals sqrt(2 - 2 cos(pi d)) without cancellation near 0.
  return 2.0 * std::sin(std::numbers::pi * d_theta / 2.0);
}

absl::StatusOr<double> EuclideanToAngular(double d_euc) {
  if (!(d_euc >= 0.0 && d_euc <= 2.0)) {
    return OutOfRangeError(
        absl::StrCat("euclidean distance ", d_euc, " outside [0, 2]"));
  }
  return 2.0 * std::asin(d_euc / 2.0) / std::numbers::pi;
}

}  // namespace privlsh
