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

#ifndef PRIVLSH_RANDOM_HPP_
#define PRIVLSH_RANDOM_HPP_

#include <cstdint>
#include <limits>

#include "absl/strings/string_view.h"

namespace privlsh {

// Version tag of the generator and the Gaussian sampling method. Stored in
// every ProjectionFamily; changing either algorithm must bump it.
inline constexpr absl::string_view kRngVersion = "splitmix64-ctr/invnorm-v1";

// SplitMix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent 64-bit seed for substream `index` of `seed`.
constexpr std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index) {
  return Mix64(Mix64(seed ^ 0x6a09e667f3bcc909ULL) +
               Mix64(index + 0x9e3779b97f4a7c15ULL));
}

// Counter-based generator: the i-th output is a pure function of (key, i), so
// any draw can be regenerated independently and results do not depend on the
// standard library's distribution implementations.
//
// Satisfies std::uniform_random_bit_generator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed) : key_(Mix64(seed)), counter_(0) {}
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : CounterRng(DeriveSeed(seed, stream)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return At(counter_++); }

  // Output at an arbitrary counter position; does not advance the stream.
  result_type At(std::uint64_t counter) const {
    return Mix64(key_ + (counter + 1) * 0x9e3779b97f4a7c15ULL);
  }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  // Uniform in (0, 1): never returns 0.
  double UniformOpen();
  // Standard normal by inverse CDF.
  double Normal();
  // Gamma(shape, scale) by Marsaglia-Tsang.
  double Gamma(double shape, double scale);
  bool Bernoulli(double p) { return Uniform() < p; }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

// Maps a 64-bit word to (0, 1) using its top 52 bits, offset by half a step:
// the extremes 2^-53 and 1 - 2^-53 are exact doubles.
inline double ToOpenUnit(std::uint64_t word) {
  return (static_cast<double>(word >> 12) + 0.5) * 0x1.0p-52;
}

// Quantile function of N(0, 1) for p in (0, 1). Rational initial guess
// followed by one Halley step against erfc; accurate to ~1e-15 relative.
double InverseNormalCdf(double p);

}  // namespace privlsh

#endif  // PRIVLSH_RANDOM_HPP_
