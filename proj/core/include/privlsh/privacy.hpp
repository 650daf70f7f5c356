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

#ifndef PRIVLSH_PRIVACY_HPP_
#define PRIVLSH_PRIVACY_HPP_

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "privlsh/lsh.hpp"
#include "privlsh/vectors.hpp"

// Privacy accounting for LSHRR and LapLSH.
//
// Notation: epsilon is the per-bit randomized-response budget, kappa the hash
// width, d the angular distance between the two inputs, delta the failure
// probability and alpha the slack of the Chernoff-Hoeffding tail. `xi` is the
// total extended-DP budget for the pair.
namespace privlsh {

struct PrivacyParams {
  double epsilon = 0.0;
  int kappa = 1;
  double delta = 1.0;
  double d = 0.0;

  // epsilon > 0, kappa >= 1, 0 < delta <= 1, 0 <= d <= 1.
  absl::Status Validate() const;
};

enum class BoundKind {
  kWorstCaseDp,
  kPseudometric,
  kPxdpSimple,
  kPxdpTight,
  kLapLsh,
};

absl::string_view BoundKindName(BoundKind kind);

struct BudgetReport {
  BoundKind bound_kind;
  double epsilon;
  int kappa;
  double d;
  double xi;
  double alpha;      // 0 unless bound_kind == kPxdpTight
  double delta_out;  // failure probability achieved by the bound
  double ldp_budget;  // kappa * epsilon
  double flip_prob;   // 1 / (1 + e^epsilon)
};

// 1 / (1 + e^epsilon), in (0, 1/2] for epsilon >= 0.
absl::StatusOr<double> RrFlipProbability(double epsilon);

// kappa * epsilon: LSHRR is kappa*epsilon-DP for any fixed family.
absl::StatusOr<double> WorstCaseDp(double epsilon, int kappa);

// epsilon * hamming(H(x), H(x')): the exact extended-DP budget of LSHRR for
// the realized family.
absl::StatusOr<double> PseudometricBudget(const ProjectionFamily& family,
                                          double epsilon, const Vector& x,
                                          const Vector& y);

// Bernoulli KL divergence a ln(a/b) + (1-a) ln((1-a)/(1-b)) with 0 ln 0 = 0.
// Returns +infinity when b is 0 or 1 and a != b. Errors if a or b lies outside
// [0, 1].
absl::StatusOr<double> KlBernoulli(double a, double b);

// Hoeffding form: xi = eps*kappa*d + eps*sqrt(-ln(delta)/2)*sqrt(kappa),
// achieved delta = delta.
absl::StatusOr<BudgetReport> PxdpBudgetSimple(const PrivacyParams& p);

struct AlphaSolution {
  double alpha;
  double delta_achieved;
  int iterations;
  // Set when d == 0: the tail is empty for every alpha > 0, so the smallest
  // positive normal double is returned and the bound is vacuous.
  bool degenerate;
};

// Solves exp(-kappa * KL(d + alpha || d)) = delta for alpha in (0, 1 - d] by
// bisection (relative delta error <= 1e-9, at most 200 iterations). Returns
// an Infeasible error if even alpha = 1 - d leaves the tail above delta.
absl::StatusOr<AlphaSolution> SolveAlpha(int kappa, double d, double delta);

// Chernoff-Hoeffding form: xi = eps*kappa*(d + alpha),
// delta_out = exp(-kappa * KL(d + alpha || d)). p.delta is ignored.
absl::StatusOr<BudgetReport> PxdpBudgetTight(const PrivacyParams& p,
                                             double alpha);

// The epsilon at which the tight bound equals `xi_target` for
// (kappa, d, delta): xi_target / (kappa * (d + alpha)).
absl::StatusOr<double> EpsilonForTargetXi(double xi_target, int kappa,
                                          double d, double delta);

// Worst-case LDP budget kappa * epsilon at the epsilon realizing `xi`.
absl::StatusOr<double> LdpBudget(double xi, int kappa, double d, double delta);

// epsilon * |x - x'|_2 for LapLSH.
absl::StatusOr<double> LapLshBudget(double epsilon, const Vector& x,
                                    const Vector& y);
// epsilon * sqrt(2 - 2 cos(pi * d_theta)); assumes unit-norm inputs.
absl::StatusOr<double> LapLshBudgetFromAngle(double epsilon, double d_theta);
// Inverse of LapLshBudgetFromAngle in epsilon: the Laplace budget giving
// total budget `xi` at angular distance `d_theta` between unit vectors.
absl::StatusOr<double> LapLshEpsilonForTargetXi(double xi, double d_theta);

struct CxdpParams {
  double mu;
  double tau;
};

// (mu, tau) = (eps*kappa, eps*kappa/2).
absl::StatusOr<CxdpParams> ComputeCxdpParams(double epsilon, int kappa);

// PXDP budget implied by (mu, tau, d)-CXDP at failure probability delta:
// mu*d + tau*sqrt(-2 ln delta).
absl::StatusOr<double> CxdpToPxdpXi(const CxdpParams& params, double d,
                                    double delta);

// Rounds half up to the nearest integer.
double RoundHalfUp(double x);

}  // namespace privlsh

#endif  // PRIVLSH_PRIVACY_HPP_
