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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "testing/generators.hpp"
#include "testing/status_matchers.hpp"

namespace privlsh {
namespace {

using ::privlsh::testing::Gen;
using ::privlsh::testing::IsOkAndHolds;
using ::privlsh::testing::StatusIs;

Vector Dense(std::vector<double> v) { return *DenseVector::Create(std::move(v)); }

double FlipRate(double epsilon, int trials, std::uint64_t seed) {
  CounterRng rng(seed);
  int flips = 0;
  for (int t = 0; t < trials; ++t) {
    const bool in = t % 2 == 0;
    flips += *RandomizedResponseBit(epsilon, in, rng) != in;
  }
  return flips / static_cast<double>(trials);
}

TEST(MechanismNameTest, RoundTrip) {
  for (MechanismKind k : {MechanismKind::kLsh, MechanismKind::kLshrr,
                          MechanismKind::kLapLsh, MechanismKind::kUniform}) {
    EXPECT_THAT(ParseMechanismKind(MechanismName(k)), IsOkAndHolds(k));
  }
  EXPECT_THAT(ParseMechanismKind("rappor"),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(RandomizedResponseBitTest, FlipFrequencies) {
  EXPECT_NEAR(FlipRate(0.0, 10000, 1), 0.5, 0.02);
  EXPECT_NEAR(FlipRate(std::log(3.0), 10000, 2), 0.25, 0.02);
  EXPECT_EQ(FlipRate(50.0, 10000, 3), 0.0);
}

TEST(RandomizedResponseBitTest, RejectsBadBudget) {
  CounterRng rng(1);
  EXPECT_THAT(RandomizedResponseBit(-0.1, true, rng),
              StatusIs(absl::StatusCode::kInvalidArgument, "invalid params"));
  EXPECT_THAT(RandomizedResponseBit(NAN, true, rng),
              StatusIs(absl::StatusCode::kInvalidArgument, "invalid params"));
}

TEST(BitwiseRandomizedResponseTest, MeanHammingToInput) {
  const BitString v = *BitString::FromString("01101001110010110101");
  for (const auto& [eps, expected] :
       std::vector<std::pair<double, double>>{
           {0.0, 10.0}, {1.0, 20.0 / (1.0 + std::numbers::e)}}) {
    CounterRng rng(7);
    double total = 0;
    for (int t = 0; t < 1000; ++t) {
      total += *HammingDistance(*BitwiseRandomizedResponse(eps, v, rng), v);
    }
    EXPECT_NEAR(total / 1000, expected, 0.5) << "eps " << eps;
  }
  CounterRng rng(8);
  EXPECT_EQ(*BitwiseRandomizedResponse(50.0, v, rng), v);
}

TEST(LshrrTest, LargeBudgetEqualsHash) {
  const ProjectionFamily fam = *ProjectionFamily::Sample(5, 32, 1);
  const Vector x = Dense({1, -2, 0.5, 3, 0});
  CounterRng rng(2);
  ASSERT_OK_AND_ASSIGN(const MechanismOutput out, Lshrr(fam, 50.0, x, rng));
  EXPECT_EQ(out.bits, *fam.Hash(x));
  EXPECT_EQ(out.provenance.kind, MechanismKind::kLshrr);
  EXPECT_EQ(out.provenance.epsilon, 50.0);
  EXPECT_EQ(out.provenance.family_seed, 1u);
}

TEST(LshrrTest, ZeroBudgetIsUniformPerBit) {
  const ProjectionFamily fam = *ProjectionFamily::Sample(3, 8, 4);
  const int trials = 10000;
  for (const Vector& x : {Dense({1, 0, 0}), Dense({-1, 2, 5})}) {
    std::array<int, 8> ones{};
    for (int t = 0; t < trials; ++t) {
      CounterRng rng(5, t);
      const BitString out = Lshrr(fam, 0.0, x, rng)->bits;
      for (int b = 0; b < 8; ++b) ones[b] += out.bit(b);
    }
    for (int b = 0; b < 8; ++b) {
      EXPECT_NEAR(ones[b] / static_cast<double>(trials), 0.5, 0.02);
    }
  }
}

TEST(LshrrTest, PropagatesHashErrors) {
  const ProjectionFamily fam = *ProjectionFamily::Sample(3, 8, 4);
  CounterRng rng(1);
  EXPECT_THAT(Lshrr(fam, 1.0, Dense({0, 0, 0}), rng),
              StatusIs(absl::StatusCode::kInvalidArgument, "zero vector"));
  EXPECT_THAT(Lshrr(fam, -1.0, Dense({1, 0, 0}), rng),
              StatusIs(absl::StatusCode::kInvalidArgument, "invalid params"));
}

TEST(LshrrTest, HammingErrorWithinBound) {
  const Vector x = Dense({1, 0.2, -0.3}), y = Dense({0.1, 1, 0.4});
  const int kappa = 20;
  const double eps = 1.0;
  const int trials = 1000;
  double sum = 0, sq = 0;
  for (int t = 0; t < trials; ++t) {
    const ProjectionFamily fam = *ProjectionFamily::Sample(3, kappa, 100 + t);
    CounterRng rx(1, 2 * t), ry(1, 2 * t + 1);
    const double clean = *HammingDistance(*fam.Hash(x), *fam.Hash(y));
    const double noisy = *HammingDistance(Lshrr(fam, eps, x, rx)->bits,
                                          Lshrr(fam, eps, y, ry)->bits);
    const double err = std::abs(noisy - clean);
    sum += err;
    sq += err * err;
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sq / trials - mean * mean) / trials);
  EXPECT_LE(mean, 2 * kappa / (1 + std::exp(eps)) + 3 * se);
}

// LSHRR and RR applied to the hash have the same law: chi-square over the 16
// outputs of a 4-bit family.
TEST(LshrrTest, SameLawAsRandomizedResponseOfHash) {
  const ProjectionFamily fam = *ProjectionFamily::Sample(3, 4, 77);
  const Vector x = Dense({0.3, -1, 2});
  const BitString h = *fam.Hash(x);
  const double eps = 0.8;
  const double p = 1 / (1 + std::exp(eps));
  const int n = 10000;
  std::array<int, 16> counts{};
  for (int t = 0; t < n; ++t) {
    CounterRng rng(3, t);
    const BitString out = Lshrr(fam, eps, x, rng)->bits;
    int code = 0;
    for (int b = 0; b < 4; ++b) code |= out.bit(b) << b;
    ++counts[code];
  }
  double chi2 = 0;
  for (int code = 0; code < 16; ++code) {
    int flips = 0;
    for (int b = 0; b < 4; ++b) flips += ((code >> b) & 1) != h.bit(b);
    const double expected = n * std::pow(p, flips) * std::pow(1 - p, 4 - flips);
    chi2 += (counts[code] - expected) * (counts[code] - expected) / expected;
  }
  // chi2(15) upper 0.999 quantile is 37.70.
  EXPECT_LT(chi2, 37.70);
}

TEST(LaplaceNoiseTest, RadiusMeanMatchesGamma) {
  for (const auto& [n, eps] :
       std::vector<std::pair<std::size_t, double>>{{3, 2.0}, {1, 1.0}}) {
    CounterRng rng(11, n);
    const int draws = 10000;
    double sum = 0, sq = 0;
    std::vector<double> comp(n, 0.0);
    for (int t = 0; t < draws; ++t) {
      const DenseVector z = *LaplaceNoise(eps, n, rng);
      const double r = z.Norm();
      sum += r;
      sq += r * r;
      for (std::size_t j = 0; j < n; ++j) comp[j] += z[j];
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sq / draws - mean * mean) / draws);
    EXPECT_NEAR(mean, n / eps, 3 * se);
    // Component means vanish; each component has variance E[R^2] / n.
    const double comp_se = std::sqrt(sq / draws / n / draws);
    for (double c : comp) EXPECT_NEAR(c / draws, 0.0, 3.5 * comp_se);
  }
}

TEST(LaplaceNoiseTest, OneDimensionIsExponential) {
  CounterRng rng(12);
  double sum = 0;
  for (int t = 0; t < 10000; ++t) sum += LaplaceNoise(1.0, 1, rng)->Norm();
  EXPECT_NEAR(sum / 10000, 1.0, 0.05);
}

TEST(LaplaceNoiseTest, DensityRatioInOneDimension) {
  // Density of y = x + z is proportional to exp(-eps |y - x|): log-histogram
  // slope against |y - x| is -eps.
  const double eps = 1.0;
  CounterRng rng(13);
  const DenseVector x = *DenseVector::Create({0.0});
  std::map<int, int> bins;
  const int n = 100000;
  for (int t = 0; t < n; ++t) {
    const double y = (*MultivariateLaplace(eps, x, rng))[0];
    ++bins[static_cast<int>(std::floor(y / 0.1))];
  }
  // Compare bins at |y| in [0.1, 0.2) and [1.1, 1.2), on both sides.
  for (int sign : {1, -1}) {
    const int near = sign > 0 ? 1 : -2;
    const int far = sign > 0 ? 11 : -12;
    const double log_ratio =
        std::log(bins[near] / static_cast<double>(bins[far]));
    EXPECT_NEAR(log_ratio, eps * 1.0, 0.1);
  }
}

TEST(MultivariateLaplaceTest, RejectsNonPositiveBudget) {
  CounterRng rng(1);
  const DenseVector x = *DenseVector::Create({1.0, 2.0});
  EXPECT_THAT(MultivariateLaplace(0.0, x, rng),
              StatusIs(absl::StatusCode::kInvalidArgument, "invalid params"));
  EXPECT_THAT(MultivariateLaplace(-1.0, x, rng),
              StatusIs(absl::StatusCode::kInvalidArgument, "invalid params"));
}

TEST(LapLshTest, HugeBudgetMatchesHash) {
  const ProjectionFamily fam = *ProjectionFamily::Sample(4, 16, 21);
  const DenseVector x = *Normalize(*DenseVector::Create({1, 2, -1, 0.5}));
  const BitString h = *fam.Hash(Vector(x));
  int equal = 0;
  for (int t = 0; t < 1000; ++t) {
    CounterRng rng(22, t);
    equal += LapLsh(fam, 1e6, x, rng)->bits == h;
  }
  EXPECT_GE(equal, 990);
}

TEST(LapLshTest, TinyBudgetIsNearUniform) {
  const ProjectionFamily fam = *ProjectionFamily::Sample(4, 8, 23);
  const DenseVector x = *Normalize(*DenseVector::Create({1, 2, -1, 0.5}));
  std::array<int, 8> ones{};
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    CounterRng rng(24, t);
    const BitString out = LapLsh(fam, 1e-6, x, rng)->bits;
    for (int b = 0; b < 8; ++b) ones[b] += out.bit(b);
  }
  for (int b = 0; b < 8; ++b) {
    EXPECT_NEAR(ones[b] / static_cast<double>(trials), 0.5, 0.03);
  }
}

TEST(LapLshTest, DeterministicGivenSeeds) {
  const ProjectionFamily fam = *ProjectionFamily::Sample(4, 16, 25);
  const DenseVector x = *DenseVector::Create({1, 2, -1, 0.5});
  CounterRng a(26), b(26);
  ASSERT_OK_AND_ASSIGN(const MechanismOutput ra, LapLsh(fam, 1.0, x, a));
  ASSERT_OK_AND_ASSIGN(const MechanismOutput rb, LapLsh(fam, 1.0, x, b));
  EXPECT_EQ(ra.bits, rb.bits);
  EXPECT_EQ(ra.provenance.kind, MechanismKind::kLapLsh);
}

TEST(LapLshTest, NotScaleInvariant) {
  const ProjectionFamily fam = *ProjectionFamily::Sample(4, 8, 27);
  const std::vector<double> dir = {1, 2, -1, 0.5};
  auto scaled = [&](double c) {
    std::vector<double> v = dir;
    for (double& e : v) e *= c;
    return *DenseVector::Create(v);
  };
  const BitString h = *fam.Hash(Dense(dir));
  const int trials = 2000;
  int big_equal = 0;
  std::array<int, 8> ones{};
  for (int t = 0; t < trials; ++t) {
    CounterRng r1(28, t), r2(29, t);
    big_equal += LapLsh(fam, 1.0, scaled(1e6), r1)->bits == h;
    const BitString small = LapLsh(fam, 1.0, scaled(1e-6), r2)->bits;
    for (int b = 0; b < 8; ++b) ones[b] += small.bit(b);
  }
  EXPECT_GE(big_equal, trials - 5);
  for (int b = 0; b < 8; ++b) {
    EXPECT_NEAR(ones[b] / static_cast<double>(trials), 0.5, 0.05);
  }
}

TEST(UniformBitsTest, FairAndValidated) {
  CounterRng rng(30);
  int ones = 0;
  for (int t = 0; t < 1000; ++t) ones += UniformBits(20, rng)->PopCount();
  EXPECT_NEAR(ones / 20000.0, 0.5, 3 * std::sqrt(0.25 / 20000));
  EXPECT_THAT(UniformBits(0, rng),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

}  // namespace
}  // namespace privlsh
