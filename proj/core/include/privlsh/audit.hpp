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

#ifndef PRIVLSH_AUDIT_HPP_
#define PRIVLSH_AUDIT_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "privlsh/vectors.hpp"

// Analytic and Monte Carlo checks of the distributional claims behind the
// mechanisms. Every statistical verdict uses a 3-sigma threshold and is
// deterministic given its seed: trial t draws from CounterRng(seed, t).
namespace privlsh {

using Point2d = std::array<double, 2>;

// One deterministic 1-bit hash for a 2-D input set: the bit assigned to each
// input, and the probability that a Gaussian hyperplane normal realizes it.
struct DeterministicHash {
  std::vector<bool> outputs;  // aligned with ChannelMatrix::inputs
  double probability;
  // Arc of normal directions, in radians within [0, 2*pi), producing it.
  // Arcs of functions realized on several disjoint arcs are summed into
  // `probability`; `arc_start` is the first one.
  double arc_start;
};

struct ChannelMatrix {
  std::vector<Point2d> inputs;
  std::vector<DeterministicHash> functions;
  std::vector<double> p_one;  // P(output = 1 | input), aligned with inputs
};

// Splits the circle of hyperplane normal directions at the directions
// orthogonal to each input. Every arc induces one deterministic hash; since a
// Gaussian normal has a uniformly distributed direction, its probability is
// arc length / 2*pi. Arcs inducing the same hash are merged.
// Errors: ZeroVector.
absl::StatusOr<ChannelMatrix> Enumerate2dChannel(
    const std::vector<Point2d>& inputs);

struct FunctionLeakage {
  std::size_t function_index;
  double probability;
  // Inputs grouped by the bit they hash to; one or two classes.
  std::vector<std::vector<std::size_t>> classes;
  // Inputs alone in their class: identified exactly once the hyperplane is
  // public.
  std::vector<std::size_t> exposed_inputs;
};

struct LeakageReport {
  std::vector<FunctionLeakage> functions;
  // Total probability of drawing a hash that isolates some input.
  double singleton_probability = 0.0;
  // With a single input every class is a singleton.
  bool degenerate = false;
};

LeakageReport HyperplaneReleaseLeakage(const ChannelMatrix& channel);

struct CollisionReport {
  int trials;
  double rate;      // fraction of 1-bit hashes with h(x) != h(x')
  double std_err;   // sqrt(rate (1 - rate) / trials)
  double target;    // angular distance of the pair
  double lower;     // target -/+ 3 sqrt(target (1 - target) / trials)
  double upper;
  bool pass;
};

// Errors: ZeroVector, DimensionMismatch, InvalidParams (trials < 100).
absl::StatusOr<CollisionReport> EstimateCollisionRate(const Vector& x,
                                                      const Vector& y,
                                                      int trials,
                                                      std::uint64_t seed);

struct HammingLawReport {
  int kappa;
  int families;
  double d_theta;
  double expected_mean;      // kappa d
  double expected_variance;  // kappa d (1 - d)
  double mean;
  double variance;  // unbiased sample variance
  double mean_tolerance;  // 3 sqrt(kappa d (1 - d) / families)
  // Chi-square band for the sample variance at the 3-sigma tail
  // probabilities (0.00135, 0.99865) with families - 1 degrees of freedom.
  double variance_lower;
  double variance_upper;
  bool mean_pass;
  bool variance_pass;
  bool pass;
};

// Errors: as Hash, InvalidParams (families < 500, kappa < 1).
absl::StatusOr<HammingLawReport> HammingLawCheck(const Vector& x,
                                                 const Vector& y, int kappa,
                                                 int families,
                                                 std::uint64_t seed);

struct TailCheck {
  double xi;
  double delta_bound;
  double empirical_tail;  // fraction of families with loss > xi
  double threshold;       // delta_bound + 3 sqrt(delta_bound / trials)
  bool pass;
};

struct PxdpCertificate {
  double epsilon;
  int kappa;
  double d_theta;
  double delta_target;
  int trials;
  // Chernoff-Hoeffding bound at alpha = SolveAlpha(kappa, d, delta); absent
  // when no alpha reaches delta_target.
  std::optional<double> alpha;
  std::optional<TailCheck> tight;
  TailCheck simple;  // Hoeffding bound
  bool pass;
};

// Samples kappa-bit families and, for each, the largest privacy loss of LSHRR
// over outputs, epsilon * hamming(H(x), H(x')). Compares the empirical tail
// beyond each bound's xi against its delta.
// Errors: InvalidParams (epsilon <= 0, trials < 10^4, bad delta), as Hash.
absl::StatusOr<PxdpCertificate> CertifyPxdp(double epsilon, int kappa,
                                            const Vector& x, const Vector& y,
                                            double delta_target, int trials,
                                            std::uint64_t seed);

struct ErrorBoundReport {
  double epsilon;
  int kappa;
  int trials;
  double mean_error;  // E |d_V(Q(x), Q(x')) - d_V(H(x), H(x'))|
  double std_err;
  double bound;       // 2 kappa / (1 + e^epsilon)
  bool pass;          // mean_error <= bound + 3 std_err
};

// Each trial samples a fresh family and fresh randomized-response noise.
// Errors: InvalidParams (trials < 1000, epsilon < 0), as Hash.
absl::StatusOr<ErrorBoundReport> ErrorBoundCheck(double epsilon, int kappa,
                                                 const Vector& x,
                                                 const Vector& y, int trials,
                                                 std::uint64_t seed);

struct LaplaceRadiusReport {
  std::size_t dimension;
  double epsilon;
  int draws;
  double mean_radius;
  double std_err;
  double expected;  // n / epsilon
  bool pass;        // |mean - expected| <= 3 std_err
};

absl::StatusOr<LaplaceRadiusReport> LaplaceRadiusCheck(std::size_t dimension,
                                                       double epsilon,
                                                       int draws,
                                                       std::uint64_t seed);

}  // namespace privlsh

#endif  // PRIVLSH_AUDIT_HPP_
