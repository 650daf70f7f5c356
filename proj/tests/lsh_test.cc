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

#include "privlsh/lsh.hpp"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "testing/generators.hpp"
#include "testing/status_matchers.hpp"

namespace privlsh {
namespace {

using ::privlsh::testing::ForAll;
using ::privlsh::testing::Gen;
using ::privlsh::testing::StatusIs;

Vector Dense(std::vector<double> v) { return *DenseVector::Create(std::move(v)); }

std::vector<double> Row(const ProjectionFamily& fam, std::size_t i) {
  const auto row = fam.normal(i);
  return {row.begin(), row.end()};
}

TEST(ProjectionFamilyTest, WorkedTwoDimensionalExample) {
  ASSERT_OK_AND_ASSIGN(const ProjectionFamily fam,
                       ProjectionFamily::FromNormals({{1.0, -0.5}}));
  ASSERT_OK_AND_ASSIGN(const BitString a, fam.Hash(Dense({1, 0})));
  ASSERT_OK_AND_ASSIGN(const BitString b, fam.Hash(Dense({0, 1})));
  EXPECT_TRUE(a.bit(0));
  EXPECT_FALSE(b.bit(0));
}

TEST(ProjectionFamilyTest, ZeroDotProductMapsToOne) {
  ASSERT_OK_AND_ASSIGN(const ProjectionFamily fam,
                       ProjectionFamily::FromNormals({{1.0, 0.0}, {0.0, 1.0}}));
  ASSERT_OK_AND_ASSIGN(const BitString h, fam.Hash(Dense({0, -1})));
  EXPECT_EQ(h.ToString(), "10");
}

TEST(ProjectionFamilyTest, SampleIsDeterministic) {
  ASSERT_OK_AND_ASSIGN(const ProjectionFamily a,
                       ProjectionFamily::Sample(3, 2, 99));
  ASSERT_OK_AND_ASSIGN(const ProjectionFamily b,
                       ProjectionFamily::Sample(3, 2, 99));
  ASSERT_OK_AND_ASSIGN(const ProjectionFamily c,
                       ProjectionFamily::Sample(3, 2, 100));
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(Row(a, i), Row(b, i));
  }
  EXPECT_NE(a.normal(0)[0], c.normal(0)[0]);
  EXPECT_EQ(a.seed(), 99u);
  EXPECT_EQ(a.rng_version(), kRngVersion);
}

TEST(ProjectionFamilyTest, NormalsAreCounterAddressed) {
  // Entry (i, j) depends only on counter i * n + j, so a wider family extends
  // a narrower one with the same seed and dimension.
  const ProjectionFamily narrow = *ProjectionFamily::Sample(7, 3, 5);
  const ProjectionFamily wide = *ProjectionFamily::Sample(7, 10, 5);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(Row(narrow, i), Row(wide, i));
  }
}

TEST(ProjectionFamilyTest, InvalidParams) {
  EXPECT_THAT(ProjectionFamily::Sample(0, 1, 1),
              StatusIs(absl::StatusCode::kInvalidArgument, "invalid params"));
  EXPECT_THAT(ProjectionFamily::Sample(3, 0, 1),
              StatusIs(absl::StatusCode::kInvalidArgument, "invalid params"));
  EXPECT_THAT(ProjectionFamily::FromNormals({}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ProjectionFamily::FromNormals({{1.0, 0.0}, {1.0}}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ProjectionFamily::FromNormals({{0.0, 0.0}}),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(ProjectionFamilyTest, EntriesLookStandardNormal) {
  ASSERT_OK_AND_ASSIGN(const ProjectionFamily fam,
                       ProjectionFamily::Sample(100, 20, 2024));
  double sum = 0, sq = 0;
  int count = 0;
  for (std::size_t i = 0; i < fam.width(); ++i) {
    for (double v : fam.normal(i)) {
      sum += v;
      sq += v * v;
      ++count;
    }
  }
  ASSERT_EQ(count, 2000);
  const double mean = sum / count;
  const double var = (sq - count * mean * mean) / (count - 1);
  EXPECT_LT(std::abs(mean), 0.1);
  EXPECT_GE(var, 0.9);
  EXPECT_LE(var, 1.1);
}

TEST(ProjectionFamilyTest, HashErrors) {
  const ProjectionFamily fam = *ProjectionFamily::Sample(3, 4, 1);
  EXPECT_THAT(fam.Hash(Dense({1, 2})),
              StatusIs(absl::StatusCode::kInvalidArgument,
                       "dimension mismatch"));
  EXPECT_THAT(fam.Hash(Dense({0, 0, 0})),
              StatusIs(absl::StatusCode::kInvalidArgument, "zero vector"));
}

TEST(ProjectionFamilyTest, HashDataset) {
  const ProjectionFamily fam = *ProjectionFamily::Sample(6, 16, 8);
  ASSERT_OK_AND_ASSIGN(const auto empty, fam.HashDataset({}));
  EXPECT_TRUE(empty.empty());

  Gen gen(8);
  std::vector<Vector> xs;
  for (int i = 0; i < 1000; ++i) xs.push_back(Dense(gen.Vector(6)));
  ASSERT_OK_AND_ASSIGN(const auto one, fam.HashDataset({xs.data(), 1}));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], *fam.Hash(xs[0]));

  ASSERT_OK_AND_ASSIGN(const auto all, fam.HashDataset(xs));
  ASSERT_EQ(all.size(), xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EXPECT_EQ(all[i], *fam.Hash(xs[i]));
  }

  xs[500] = Dense(std::vector<double>(6, 0.0));
  EXPECT_THAT(fam.HashDataset(xs),
              StatusIs(absl::StatusCode::kInvalidArgument, "zero vector"));
}

TEST(ProjectionFamilyTest, SerializeRoundTrip) {
  const ProjectionFamily fam = *ProjectionFamily::Sample(40, 70, 0xfeedULL);
  ASSERT_OK_AND_ASSIGN(const std::string text, fam.Serialize());
  ASSERT_OK_AND_ASSIGN(const ProjectionFamily back,
                       ProjectionFamily::Parse(text));
  EXPECT_EQ(back.dimension(), 40u);
  EXPECT_EQ(back.width(), 70u);
  EXPECT_EQ(back.seed(), 0xfeedULL);
  for (std::size_t i = 0; i < 70; ++i) {
    EXPECT_EQ(Row(back, i), Row(fam, i));
  }
  EXPECT_EQ(*back.Serialize(), text);
}

TEST(ProjectionFamilyTest, SerializeRejectsExplicitAndBadText) {
  const ProjectionFamily fam = *ProjectionFamily::FromNormals({{1.0}});
  EXPECT_FALSE(fam.Serialize().ok());
  EXPECT_FALSE(ProjectionFamily::Parse("").ok());
  EXPECT_FALSE(ProjectionFamily::Parse("garbage\n").ok());
  std::string text = *ProjectionFamily::Sample(2, 2, 3).value().Serialize();
  const auto pos = text.find("splitmix64");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 10, "mersenne19");
  EXPECT_FALSE(ProjectionFamily::Parse(text).ok());
}

TEST(ProjectionFamilyTest, OneBitMismatchRateOrthogonal) {
  const Vector x = Dense({1, 0}), y = Dense({0, 1});
  int mismatches = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    const ProjectionFamily fam = *ProjectionFamily::Sample(2, 1, 1000 + t);
    mismatches += fam.Hash(x)->bit(0) != fam.Hash(y)->bit(0);
  }
  EXPECT_NEAR(mismatches / static_cast<double>(trials), 0.5, 0.02);
}

// Properties.

TEST(HashProperty, PositiveScaleInvariant) {
  ForAll(300, 31, [](Gen& gen, int i) {
    const std::size_t n = gen.Int(1, 20);
    const ProjectionFamily fam = *ProjectionFamily::Sample(n, 33, i);
    std::vector<double> x = gen.Vector(n);
    std::vector<double> cx = x;
    const double c = std::pow(2.0, gen.Int(-30, 30));
    for (double& v : cx) v *= c;
    EXPECT_EQ(*fam.Hash(Dense(x)), *fam.Hash(Dense(cx)));
  });
}

TEST(HashProperty, NegationFlipsEveryBitOffTies) {
  ForAll(200, 32, [](Gen& gen, int i) {
    const std::size_t n = gen.Int(2, 20);
    const ProjectionFamily fam = *ProjectionFamily::Sample(n, 40, i);
    std::vector<double> x = gen.Vector(n);
    std::vector<double> neg = x;
    for (double& v : neg) v = -v;
    const BitString a = *fam.Hash(Dense(x));
    const BitString b = *fam.Hash(Dense(neg));
    EXPECT_EQ(*HammingDistance(a, b), 40);
  });
}

TEST(HashProperty, SparseAndDenseAgree) {
  ForAll(200, 33, [](Gen& gen, int i) {
    const std::size_t n = gen.Int(5, 200);
    const ProjectionFamily fam = *ProjectionFamily::Sample(n, 64, i);
    const DenseVector x = *DenseVector::Create(gen.SparseLike(n, 0.05));
    EXPECT_EQ(*fam.Hash(Vector(x)), *fam.Hash(Vector(SparseVector::FromDense(x))));
  });
}

TEST(HashProperty, BitMatchesSignOfProjection) {
  ForAll(200, 34, [](Gen& gen, int i) {
    const std::size_t n = gen.Int(1, 10);
    const ProjectionFamily fam = *ProjectionFamily::Sample(n, 12, i);
    const std::vector<double> x = gen.Vector(n);
    const BitString h = *fam.Hash(Dense(x));
    for (std::size_t b = 0; b < fam.width(); ++b) {
      long double dot = 0;
      for (std::size_t j = 0; j < n; ++j) dot += fam.normal(b)[j] * x[j];
      if (std::abs(static_cast<double>(dot)) > 1e-12) {
        EXPECT_EQ(h.bit(b), dot >= 0);
      }
    }
  });
}

}  // namespace
}  // namespace privlsh
