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

#include "privlsh/audit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/distributions/chi_squared.hpp>

#include "absl/strings/str_cat.h"
#include "privlsh/errors.hpp"
#include "privlsh/lsh.hpp"
#include "privlsh/mechanisms.hpp"
#include "privlsh/privacy.hpp"
#include "privlsh/random.hpp"

namespace privlsh {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Two-sided 3-sigma tail probability of a standard normal, per side.
constexpr double kThreeSigmaTail = 0.0013498980316301;
// Boundary directions closer than this (radians) are the same boundary.
constexpr double kAngleEpsilon = 1e-12;
// Separates the noise streams of ErrorBoundCheck from its family seeds.
constexpr std::uint64_t kNoiseStreamSalt = 0x6e6f697365ULL;

double WrapAngle(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0.0 ? a + kTwoPi : a;
}

struct SampleMoments {
  double mean;
  double variance;  // unbiased
};

SampleMoments Moments(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double variance =
      xs.size() > 1 ? ss / static_cast<double>(xs.size() - 1) : 0.0;
  return {mean, variance};
}

TailCheck CheckTail(const std::vector<int>& distances, double epsilon,
                    double xi, double delta_bound) {
  int exceed = 0;
  for (int z : distances) {
    if (epsilon * z > xi) ++exceed;
  }
  const double trials = static_cast<double>(distances.size());
  TailCheck check{.xi = xi,
                  .delta_bound = delta_bound,
                  .empirical_tail = exceed / trials,
                  .threshold = delta_bound + 3.0 * std::sqrt(delta_bound / trials),
                  .pass = false};
  check.pass = check.empirical_tail <= check.threshold;
  return check;
}

}  // namespace

absl::StatusOr<ChannelMatrix> Enumerate2dChannel(
    const std::vector<Point2d>& inputs) {
  if (inputs.empty()) return InvalidParamsError("no inputs");
  std::vector<double> boundaries;
  for (const Point2d& p : inputs) {
    if (p[0] == 0.0 && p[1] == 0.0) return ZeroVectorError("2-D channel input");
    const double phi = std::atan2(p[1], p[0]);
    boundaries.push_back(WrapAngle(phi + std::numbers::pi / 2.0));
    boundaries.push_back(WrapAngle(phi - std::numbers::pi / 2.0));
  }
  std::sort(boundaries.begin(), boundaries.end());
  std::vector<double> unique;
  for (double b : boundaries) {
    if (unique.empty() || b - unique.back() > kAngleEpsilon) unique.push_back(b);
  }
  if (unique.size() > 1 && unique.front() + kTwoPi - unique.back() <= kAngleEpsilon) {
    unique.pop_back();
  }

  ChannelMatrix channel;
  channel.inputs = inputs;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    const double start = unique[i];
    const double end = i + 1 < unique.size() ? unique[i + 1] : unique[0] + kTwoPi;
    const double mid = (start + end) / 2.0;
    const double rx = std::cos(mid);
    const double ry = std::sin(mid);
    std::vector<bool> outputs;
    outputs.reserve(inputs.size());
    for (const Point2d& p : inputs) outputs.push_back(rx * p[0] + ry * p[1] >= 0.0);
    const double probability = (end - start) / kTwoPi;
    auto it = std::find_if(channel.functions.begin(), channel.functions.end(),
                           [&](const DeterministicHash& h) {
                             return h.outputs == outputs;
                           });
    if (it != channel.functions.end()) {
      it->probability += probability;
    } else {
      channel.functions.push_back({std::move(outputs), probability, start});
    }
  }

  channel.p_one.assign(inputs.size(), 0.0);
  for (const DeterministicHash& h : channel.functions) {
    for (std::size_t j = 0; j < inputs.size(); ++j) {
      if (h.outputs[j]) channel.p_one[j] += h.probability;
    }
  }
  return channel;
}

LeakageReport HyperplaneReleaseLeakage(const ChannelMatrix& channel) {
  LeakageReport report;
  report.degenerate = channel.inputs.size() == 1;
  for (std::size_t f = 0; f < channel.functions.size(); ++f) {
    const DeterministicHash& h = channel.functions[f];
    FunctionLeakage leak{.function_index = f,
                         .probability = h.probability,
                         .classes = {},
                         .exposed_inputs = {}};
    for (bool bit : {false, true}) {
      std::vector<std::size_t> members;
      for (std::size_t j = 0; j < h.outputs.size(); ++j) {
        if (h.outputs[j] == bit) members.push_back(j);
      }
      if (members.empty()) continue;
      if (members.size() == 1) leak.exposed_inputs.push_back(members.front());
      leak.classes.push_back(std::move(members));
    }
    std::sort(leak.exposed_inputs.begin(), leak.exposed_inputs.end());
    if (!leak.exposed_inputs.empty()) {
      report.singleton_probability += h.probability;
    }
    report.functions.push_back(std::move(leak));
  }
  return report;
}

absl::StatusOr<CollisionReport> EstimateCollisionRate(const Vector& x,
                                                      const Vector& y,
                                                      int trials,
                                                      std::uint64_t seed) {
  if (trials < 100) {
    return InvalidParamsError(absl::StrCat("need >= 100 trials, got ", trials));
  }
  PRIVLSH_ASSIGN_OR_RETURN(const double target, AngularDistance(x, y));
  // Rows of one wide family are independent 1-bit hashes.
  PRIVLSH_ASSIGN_OR_RETURN(
      const ProjectionFamily family,
      ProjectionFamily::Sample(Dimension(x), static_cast<std::size_t>(trials),
                               seed));
  PRIVLSH_ASSIGN_OR_RETURN(const BitString hx, family.Hash(x));
  PRIVLSH_ASSIGN_OR_RETURN(const BitString hy, family.Hash(y));
  PRIVLSH_ASSIGN_OR_RETURN(const int mismatches, HammingDistance(hx, hy));

  CollisionReport report;
  report.trials = trials;
  report.rate = static_cast<double>(mismatches) / trials;
  report.std_err = std::sqrt(report.rate * (1.0 - report.rate) / trials);
  report.target = target;
  const double halfwidth = 3.0 * std::sqrt(target * (1.0 - target) / trials);
  report.lower = target - halfwidth;
  report.upper = target + halfwidth;
  report.pass = report.rate >= report.lower - 1e-12 &&
                report.rate <= report.upper + 1e-12;
  return report;
}

absl::StatusOr<HammingLawReport> HammingLawCheck(const Vector& x,
                                                 const Vector& y, int kappa,
                                                 int families,
                                                 std::uint64_t seed) {
  if (kappa < 1) return InvalidParamsError("kappa must be >= 1");
  if (families < 500) {
    return InvalidParamsError(
        absl::StrCat("need >= 500 families, got ", families));
  }
  PRIVLSH_ASSIGN_OR_RETURN(const double d, AngularDistance(x, y));
  std::vector<double> distances;
  distances.reserve(families);
  for (int f = 0; f < families; ++f) {
    PRIVLSH_ASSIGN_OR_RETURN(
        const ProjectionFamily family,
        ProjectionFamily::Sample(Dimension(x), kappa, DeriveSeed(seed, f)));
    PRIVLSH_ASSIGN_OR_RETURN(const BitString hx, family.Hash(x));
    PRIVLSH_ASSIGN_OR_RETURN(const BitString hy, family.Hash(y));
    PRIVLSH_ASSIGN_OR_RETURN(const int z, HammingDistance(hx, hy));
    distances.push_back(z);
  }
  const SampleMoments m = Moments(distances);

  HammingLawReport report;
  report.kappa = kappa;
  report.families = families;
  report.d_theta = d;
  report.expected_mean = kappa * d;
  report.expected_variance = kappa * d * (1.0 - d);
  report.mean = m.mean;
  report.variance = m.variance;
  report.mean_tolerance = 3.0 * std::sqrt(report.expected_variance / families);
  const double dof = families - 1.0;
  const boost::math::chi_squared chi2(dof);
  report.variance_lower = report.expected_variance *
                          boost::math::quantile(chi2, kThreeSigmaTail) / dof;
  report.variance_upper =
      report.expected_variance *
      boost::math::quantile(boost::math::complement(chi2, kThreeSigmaTail)) /
      dof;
  // A small absolute slack absorbs rounding when the expected spread is zero.
  report.mean_pass =
      std::abs(report.mean - report.expected_mean) <= report.mean_tolerance + 1e-9;
  report.variance_pass = report.variance >= report.variance_lower - 1e-9 &&
                         report.variance <= report.variance_upper + 1e-9;
  report.pass = report.mean_pass && report.variance_pass;
  return report;
}

absl::StatusOr<PxdpCertificate> CertifyPxdp(double epsilon, int kappa,
                                            const Vector& x, const Vector& y,
                                            double delta_target, int trials,
                                            std::uint64_t seed) {
  if (!(epsilon > 0.0)) return InvalidParamsError("epsilon must be > 0");
  if (trials < 10000) {
    return InvalidParamsError(
        absl::StrCat("need >= 10000 trials, got ", trials));
  }
  if (!(delta_target > 0.0 && delta_target < 1.0)) {
    return InvalidParamsError("delta must lie in (0, 1)");
  }
  PRIVLSH_ASSIGN_OR_RETURN(const double d, AngularDistance(x, y));

  std::vector<int> distances;
  distances.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    PRIVLSH_ASSIGN_OR_RETURN(
        const ProjectionFamily family,
        ProjectionFamily::Sample(Dimension(x), kappa, DeriveSeed(seed, t)));
    PRIVLSH_ASSIGN_OR_RETURN(const BitString hx, family.Hash(x));
    PRIVLSH_ASSIGN_OR_RETURN(const BitString hy, family.Hash(y));
    PRIVLSH_ASSIGN_OR_RETURN(const int z, HammingDistance(hx, hy));
    distances.push_back(z);
  }

  PxdpCertificate cert;
  cert.epsilon = epsilon;
  cert.kappa = kappa;
  cert.d_theta = d;
  cert.delta_target = delta_target;
  cert.trials = trials;

  const PrivacyParams params{
      .epsilon = epsilon, .kappa = kappa, .delta = delta_target, .d = d};
  PRIVLSH_ASSIGN_OR_RETURN(const BudgetReport simple, PxdpBudgetSimple(params));
  cert.simple = CheckTail(distances, epsilon, simple.xi, simple.delta_out);

  if (d < 1.0) {
    absl::StatusOr<AlphaSolution> alpha = SolveAlpha(kappa, d, delta_target);
    if (alpha.ok()) {
      PRIVLSH_ASSIGN_OR_RETURN(const BudgetReport tight,
                               PxdpBudgetTight(params, alpha->alpha));
      cert.alpha = alpha->alpha;
      cert.tight = CheckTail(distances, epsilon, tight.xi, tight.delta_out);
    } else if (!absl::IsFailedPrecondition(alpha.status())) {
      return alpha.status();
    }
  }
  cert.pass = cert.simple.pass && (!cert.tight || cert.tight->pass);
  return cert;
}

absl::StatusOr<ErrorBoundReport> ErrorBoundCheck(double epsilon, int kappa,
                                                 const Vector& x,
                                                 const Vector& y, int trials,
                                                 std::uint64_t seed) {
  if (trials < 1000) {
    return InvalidParamsError(absl::StrCat("need >= 1000 trials, got ", trials));
  }
  PRIVLSH_ASSIGN_OR_RETURN(const double bound_flip, RrFlipProbability(epsilon));
  std::vector<double> errors;
  errors.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    PRIVLSH_ASSIGN_OR_RETURN(
        const ProjectionFamily family,
        ProjectionFamily::Sample(Dimension(x), kappa, DeriveSeed(seed, t)));
    CounterRng noise(DeriveSeed(seed, kNoiseStreamSalt), t);
    PRIVLSH_ASSIGN_OR_RETURN(const BitString hx, family.Hash(x));
    PRIVLSH_ASSIGN_OR_RETURN(const BitString hy, family.Hash(y));
    PRIVLSH_ASSIGN_OR_RETURN(const BitString qx,
                             BitwiseRandomizedResponse(epsilon, hx, noise));
    PRIVLSH_ASSIGN_OR_RETURN(const BitString qy,
                             BitwiseRandomizedResponse(epsilon, hy, noise));
    PRIVLSH_ASSIGN_OR_RETURN(const int clean, HammingDistance(hx, hy));
    PRIVLSH_ASSIGN_OR_RETURN(const int noisy, HammingDistance(qx, qy));
    errors.push_back(std::abs(noisy - clean));
  }
  const SampleMoments m = Moments(errors);
  ErrorBoundReport report;
  report.epsilon = epsilon;
  report.kappa = kappa;
  report.trials = trials;
  report.mean_error = m.mean;
  report.std_err = std::sqrt(m.variance / trials);
  report.bound = 2.0 * kappa * bound_flip;
  report.pass = report.mean_error <= report.bound + 3.0 * report.std_err;
  return report;
}

absl::StatusOr<LaplaceRadiusReport> LaplaceRadiusCheck(std::size_t dimension,
                                                       double epsilon,
                                                       int draws,
                                                       std::uint64_t seed) {
  if (draws < 2) return InvalidParamsError("need >= 2 draws");
  std::vector<double> radii;
  radii.reserve(draws);
  CounterRng rng(seed);
  for (int i = 0; i < draws; ++i) {
    PRIVLSH_ASSIGN_OR_RETURN(const DenseVector noise,
                             LaplaceNoise(epsilon, dimension, rng));
    radii.push_back(noise.Norm());
  }
  const SampleMoments m = Moments(radii);
  LaplaceRadiusReport report;
  report.dimension = dimension;
  report.epsilon = epsilon;
  report.draws = draws;
  report.mean_radius = m.mean;
  report.std_err = std::sqrt(m.variance / draws);
  report.expected = static_cast<double>(dimension) / epsilon;
  report.pass =
      std::abs(report.mean_radius - report.expected) <= 3.0 * report.std_err;
  return report;
}

}  // namespace privlsh
