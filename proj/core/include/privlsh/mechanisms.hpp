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

#ifndef PRIVLSH_MECHANISMS_HPP_
#define PRIVLSH_MECHANISMS_HPP_

#include <cstdint>
#include <optional>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "privlsh/lsh.hpp"
#include "privlsh/random.hpp"
#include "privlsh/vectors.hpp"

// Randomizers over LSH outputs.
//
// Every mechanism takes its per-call noise generator from the caller. The
// projection family is the only randomness shared between users; it never
// feeds the noise stream.
namespace privlsh {

enum class MechanismKind {
  kLsh,      // plain hash, no noise
  kLshrr,    // hash, then randomized response on every bit
  kLapLsh,   // multivariate Laplace noise on the input, then hash
  kUniform,  // uniformly random bits (the zero-budget reference)
};

absl::string_view MechanismName(MechanismKind kind);
absl::StatusOr<MechanismKind> ParseMechanismKind(absl::string_view name);

struct Provenance {
  MechanismKind kind;
  double epsilon;  // per-bit budget for kLshrr, Laplace budget for kLapLsh
  std::optional<std::uint64_t> family_seed;
};

struct MechanismOutput {
  BitString bits;
  Provenance provenance;
};

// Randomized response: keeps `bit` with probability e^eps / (e^eps + 1).
// epsilon = 0 is allowed and flips with probability 1/2.
absl::StatusOr<bool> RandomizedResponseBit(double epsilon, bool bit,
                                           CounterRng& rng);

// Applies RandomizedResponseBit independently to each bit.
absl::StatusOr<BitString> BitwiseRandomizedResponse(double epsilon,
                                                    const BitString& v,
                                                    CounterRng& rng);

// LSHRR: BitwiseRandomizedResponse(epsilon, family.Hash(x)).
absl::StatusOr<MechanismOutput> Lshrr(const ProjectionFamily& family,
                                      double epsilon, const Vector& x,
                                      CounterRng& rng);

// Draws the additive noise of the multivariate Laplace mechanism with density
// proportional to exp(-epsilon * |z|_2) in R^n: a uniform direction on the
// unit sphere (normalized Gaussian) scaled by a Gamma(n, 1/epsilon) radius.
absl::StatusOr<DenseVector> LaplaceNoise(double epsilon, std::size_t dimension,
                                         CounterRng& rng);

// x + LaplaceNoise(epsilon, n). Requires epsilon > 0.
absl::StatusOr<DenseVector> MultivariateLaplace(double epsilon,
                                                const DenseVector& x,
                                                CounterRng& rng);

// LapLSH: family.Hash(MultivariateLaplace(epsilon, x)). The input is used as
// given; normalizing it first is the caller's decision. If the noisy vector
// is exactly zero the noise is redrawn once, and a second zero is an error.
absl::StatusOr<MechanismOutput> LapLsh(const ProjectionFamily& family,
                                       double epsilon, const DenseVector& x,
                                       CounterRng& rng);

// kappa independent fair bits.
absl::StatusOr<BitString> UniformBits(std::size_t width, CounterRng& rng);

}  // namespace privlsh

#endif  // PRIVLSH_MECHANISMS_HPP_
