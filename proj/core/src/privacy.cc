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

#include "privlsh/privacy.hpp"

#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "privlsh/errors.hpp"

namespace privlsh {
namespace {

constexpr double kDeltaRelativeTolerance = 1e-10;
constexpr int kMaxBisectionIterations = 200;

absl::Status ValidateEpsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return InvalidParamsError(
        absl::StrCat("epsilon must be finite and > 0, got ", epsilon));
  }
  return absl::OkStatus();
}

absl::Status ValidateKappa(int kappa) {
  if (kappa < 1) {
    return InvalidParamsError(absl::StrCat("kappa must be >= 1, got ", kappa));
  }
  return absl::OkStatus();
}

// a ln(a/b) with the continuous extension 0 ln(0/b) = 0.
double XLogXOverY(double a, double b) {
  if (a == 0.0) return 0.0;
  if (b == 0.0) return std::numeric_limits<double>::infinity();
  return a * std::log(a / b);
}

BudgetReport MakeReport(BoundKind kind, const PrivacyParams& p, double xi,
                        double alpha, double delta_out) {
  return BudgetReport{
      .bound_kind = kind,
      .epsilon = p.epsilon,
      .kappa = p.kappa,
      .d = p.d,
      .xi = xi,
      .alpha = alpha,
      .delta_out = delta_out,
      .ldp_budget = p.kappa * p.epsilon,
      .flip_prob = 1.0 / (1.0 + std::exp(p.epsilon)),
  };
}

}  // namespace

absl::Status PrivacyParams::Validate() const {
  PRIVLSH_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  PRIVLSH_RETURN_IF_ERROR(ValidateKappa(kappa));
  if (!(delta > 0.0 && delta <= 1.0)) {
    return InvalidParamsError(absl::StrCat("delta must lie in (0, 1], got ",
                                           delta));
  }
  if (!(d >= 0.0 && d <= 1.0)) {
    return InvalidParamsError(absl::StrCat("d must lie in [0, 1], got ", d));
  }
  return absl::OkStatus();
}

absl::string_view BoundKindName(BoundKind kind) {
  switch (kind) {
    case BoundKind::kWorstCaseDp:
      return "worst_case_dp";
    case BoundKind::kPseudometric:
      return "pseudometric";
    case BoundKind::kPxdpSimple:
      return "pxdp_simple";
    case BoundKind::kPxdpTight:
      return "pxdp_tight";
    case BoundKind::kLapLsh:
      return "laplsh";
  }
  return "unknown";
}

absl::StatusOr<double> RrFlipProbability(double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    return InvalidParamsError(
        absl::StrCat("epsilon must be finite and >= 0, got ", epsilon));
  }
  return 1.0 / (1.0 + std::exp(epsilon));
}

absl::StatusOr<double> WorstCaseDp(double epsilon, int kappa) {
  PRIVLSH_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  PRIVLSH_RETURN_IF_ERROR(ValidateKappa(kappa));
  return kappa * epsilon;
}

absl::StatusOr<double> PseudometricBudget(const ProjectionFamily& family,
                                          double epsilon, const Vector& x,
                                          const Vector& y) {
  PRIVLSH_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  PRIVLSH_ASSIGN_OR_RETURN(const BitString hx, family.Hash(x));
  PRIVLSH_ASSIGN_OR_RETURN(const BitString hy, family.Hash(y));
  PRIVLSH_ASSIGN_OR_RETURN(const int distance, HammingDistance(hx, hy));
  return epsilon * distance;
}

absl::StatusOr<double> KlBernoulli(double a, double b) {
  if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0)) {
    return InvalidParamsError(
        absl::StrCat("KL arguments must lie in [0, 1], got ", a, ", ", b));
  }
  if (a == b) return 0.0;
  const double kl = XLogXOverY(a, b) + XLogXOverY(1.0 - a, 1.0 - b);
  // Rounding can push tiny divergences a hair below zero.
  return kl < 0.0 ? 0.0 : kl;
}

absl::StatusOr<BudgetReport> PxdpBudgetSimple(const PrivacyParams& p) {
  PRIVLSH_RETURN_IF_ERROR(p.Validate());
  const double slack = p.epsilon * std::sqrt(-std::log(p.delta) / 2.0);
  const double xi = p.epsilon * p.kappa * p.d + slack * std::sqrt(p.kappa);
  return MakeReport(BoundKind::kPxdpSimple, p, xi, 0.0, p.delta);
}

absl::StatusOr<AlphaSolution> SolveAlpha(int kappa, double d, double delta) {
  PRIVLSH_RETURN_IF_ERROR(ValidateKappa(kappa));
  if (!(d >= 0.0 && d < 1.0)) {
    return InvalidParamsError(absl::StrCat("d must lie in [0, 1), got ", d));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return InvalidParamsError(
        absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  if (d == 0.0) {
    return AlphaSolution{.alpha = std::numeric_limits<double>::min(),
                         .delta_achieved = 0.0,
                         .iterations = 0,
                         .degenerate = true};
  }

  // log of the tail bound, minus log(delta); increasing in alpha.
  const double target = -std::log(delta);
  auto excess = [&](double alpha) {
    return kappa * *KlBernoulli(d + alpha, d) - target;
  };

  double lo = 0.0;
  double hi = 1.0 - d;
  if (excess(hi) < 0.0) {
    return InfeasibleError(absl::StrCat(
        "no alpha in (0, 1 - d] reaches delta=", delta, " for kappa=", kappa,
        ", d=", d, " (smallest achievable delta is d^kappa=",
        std::pow(d, kappa), ")"));
  }
  double alpha = hi;
  int iterations = 0;
  while (iterations < kMaxBisectionIterations) {
    ++iterations;
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    const double e = excess(mid);
    if (std::abs(e) <= kDeltaRelativeTolerance) {
      alpha = mid;
      break;
    }
    if (e < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    alpha = hi;
  }
  return AlphaSolution{
      .alpha = alpha,
      .delta_achieved = std::exp(-kappa * *KlBernoulli(d + alpha, d)),
      .iterations = iterations,
      .degenerate = false};
}

absl::StatusOr<BudgetReport> PxdpBudgetTight(const PrivacyParams& p,
                                             double alpha) {
  PrivacyParams checked = p;
  checked.delta = 1.0;
  PRIVLSH_RETURN_IF_ERROR(checked.Validate());
  if (!(alpha > 0.0 && p.d + alpha <= 1.0)) {
    return InvalidParamsError(
        absl::StrCat("alpha must lie in (0, 1 - d], got ", alpha));
  }
  const double xi = p.epsilon * p.kappa * (p.d + alpha);
  PRIVLSH_ASSIGN_OR_RETURN(const double kl, KlBernoulli(p.d + alpha, p.d));
  return MakeReport(BoundKind::kPxdpTight, p, xi, alpha,
                    std::exp(-p.kappa * kl));
}

absl::StatusOr<double> EpsilonForTargetXi(double xi_target, int kappa,
                                          double d, double delta) {
  if (!(xi_target >= 0.0) || !std::isfinite(xi_target)) {
    return InvalidParamsError(
        absl::StrCat("target xi must be finite and >= 0, got ", xi_target));
  }
  PRIVLSH_ASSIGN_OR_RETURN(const AlphaSolution solution,
                           SolveAlpha(kappa, d, delta));
  return xi_target / (kappa * (d + solution.alpha));
}

absl::StatusOr<double> LdpBudget(double xi, int kappa, double d,
                                 double delta) {
  PRIVLSH_ASSIGN_OR_RETURN(const double epsilon,
                           EpsilonForTargetXi(xi, kappa, d, delta));
  return kappa * epsilon;
}

absl::StatusOr<double> LapLshBudget(double epsilon, const Vector& x,
                                    const Vector& y) {
  PRIVLSH_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  PRIVLSH_ASSIGN_OR_RETURN(const double distance, EuclideanDistance(x, y));
  return epsilon * distance;
}

absl::StatusOr<double> LapLshBudgetFromAngle(double epsilon, double d_theta) {
  PRIVLSH_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  PRIVLSH_ASSIGN_OR_RETURN(const double chord, AngularToEuclidean(d_theta));
  return epsilon * chord;
}

absl::StatusOr<double> LapLshEpsilonForTargetXi(double xi, double d_theta) {
  if (!(xi > 0.0) || !std::isfinite(xi)) {
    return InvalidParamsError(
        absl::StrCat("target xi must be finite and > 0, got ", xi));
  }
  PRIVLSH_ASSIGN_OR_RETURN(const double chord, AngularToEuclidean(d_theta));
  if (chord == 0.0) {
    return InvalidParamsError("d_theta = 0 gives a zero Laplace budget");
  }
  return xi / chord;
}

absl::StatusOr<CxdpParams> ComputeCxdpParams(double epsilon, int kappa) {
  PRIVLSH_RETURN_IF_ERROR(ValidateEpsilon(epsilon));
  PRIVLSH_RETURN_IF_ERROR(ValidateKappa(kappa));
  return CxdpParams{.mu = epsilon * kappa, .tau = epsilon * kappa / 2.0};
}

absl::StatusOr<double> CxdpToPxdpXi(const CxdpParams& params, double d,
                                    double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    return InvalidParamsError(absl::StrCat("delta must lie in (0, 1], got ",
                                           delta));
  }
  if (!(d >= 0.0)) {
    return InvalidParamsError(absl::StrCat("d must be >= 0, got ", d));
  }
  return params.mu * d + params.tau * std::sqrt(-2.0 * std::log(delta));
}

double RoundHalfUp(double x) { return std::floor(x + 0.5); }

}  // namespace privlsh
