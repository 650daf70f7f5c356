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

#include "privlsh/mechanisms.hpp"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "privlsh/errors.hpp"

namespace privlsh {
namespace {

absl::Status ValidateRrEpsilon(double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    return InvalidParamsError(
        absl::StrCat("randomized response needs finite epsilon >= 0, got ",
                     epsilon));
  }
  return absl::OkStatus();
}

double FlipProbability(double epsilon) { return 1.0 / (1.0 + std::exp(epsilon)); }

}  // namespace

absl::string_view MechanismName(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kLsh:
      return "lsh";
    case MechanismKind::kLshrr:
      return "lshrr";
    case MechanismKind::kLapLsh:
      return "laplsh";
    case MechanismKind::kUniform:
      return "uniform";
  }
  return "unknown";
}

absl::StatusOr<MechanismKind> ParseMechanismKind(absl::string_view name) {
  for (MechanismKind kind : {MechanismKind::kLsh, MechanismKind::kLshrr,
                             MechanismKind::kLapLsh, MechanismKind::kUniform}) {
    if (MechanismName(kind) == name) return kind;
  }
  return InvalidParamsError(absl::StrCat("unknown mechanism '", name, "'"));
}

absl::StatusOr<bool> RandomizedResponseBit(double epsilon, bool bit,
                                           CounterRng& rng) {
  PRIVLSH_RETURN_IF_ERROR(ValidateRrEpsilon(epsilon));
  return rng.Bernoulli(FlipProbability(epsilon)) ? !bit : bit;
}

absl::StatusOr<BitString> BitwiseRandomizedResponse(double epsilon,
                                                    const BitString& v,
                                                    CounterRng& rng) {
  PRIVLSH_RETURN_IF_ERROR(ValidateRrEpsilon(epsilon));
  const double flip = FlipProbability(epsilon);
  BitString out = v;
  for (std::size_t i = 0; i < v.width(); ++i) {
    if (rng.Bernoulli(flip)) out.flip(i);
  }
  return out;
}

absl::StatusOr<MechanismOutput> Lshrr(const ProjectionFamily& family,
                                      double epsilon, const Vector& x,
                                      CounterRng& rng) {
  PRIVLSH_RETURN_IF_ERROR(ValidateRrEpsilon(epsilon));
  PRIVLSH_ASSIGN_OR_RETURN(BitString hash, family.Hash(x));
  PRIVLSH_ASSIGN_OR_RETURN(BitString bits,
                           BitwiseRandomizedResponse(epsilon, hash, rng));
  return MechanismOutput{std::move(bits),
                         {MechanismKind::kLshrr, epsilon, family.seed()}};
}

absl::StatusOr<DenseVector> LaplaceNoise(double epsilon, std::size_t dimension,
                                         CounterRng& rng) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return InvalidParamsError(
        absl::StrCat("Laplace mechanism needs finite epsilon > 0, got ",
                     epsilon));
  }
  if (dimension == 0) return InvalidParamsError("dimension must be >= 1");
  std::vector<double> direction(dimension);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& v : direction) {
      v = rng.Normal();
      norm2 += v * v;
    }
  } while (norm2 == 0.0);
  const double radius =
      rng.Gamma(static_cast<double>(dimension), 1.0 / epsilon);
  const double scale = radius / std::sqrt(norm2);
  for (double& v : direction) v *= scale;
  return DenseVector::Create(std::move(direction));
}

absl::StatusOr<DenseVector> MultivariateLaplace(double epsilon,
                                                const DenseVector& x,
                                                CounterRng& rng) {
  PRIVLSH_ASSIGN_OR_RETURN(DenseVector noise,
                           LaplaceNoise(epsilon, x.dimension(), rng));
  std::vector<double> out(x.values().begin(), x.values().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += noise[i];
  return DenseVector::Create(std::move(out));
}

absl::StatusOr<MechanismOutput> LapLsh(const ProjectionFamily& family,
                                       double epsilon, const DenseVector& x,
                                       CounterRng& rng) {
  if (x.dimension() != family.dimension()) {
    return DimensionMismatchError(absl::StrCat(
        "vector dimension ", x.dimension(), " vs family dimension ",
        family.dimension()));
  }
  for (int attempt = 0; attempt < 2; ++attempt) {
    PRIVLSH_ASSIGN_OR_RETURN(DenseVector noisy,
                             MultivariateLaplace(epsilon, x, rng));
    if (noisy.Norm() == 0.0) continue;
    PRIVLSH_ASSIGN_OR_RETURN(BitString bits, family.Hash(noisy));
    return MechanismOutput{std::move(bits),
                           {MechanismKind::kLapLsh, epsilon, family.seed()}};
  }
  return ZeroVectorError("Laplace noise cancelled the input twice");
}

absl::StatusOr<BitString> UniformBits(std::size_t width, CounterRng& rng) {
  PRIVLSH_ASSIGN_OR_RETURN(BitString out, BitString::Zeros(width));
  for (std::size_t i = 0; i < width; ++i) out.set(i, rng.Bernoulli(0.5));
  return out;
}

}  // namespace privlsh
