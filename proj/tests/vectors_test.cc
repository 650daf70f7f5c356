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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "testing/generators.hpp"
#include "testing/oracles.hpp"
#include "testing/status_matchers.hpp"

namespace privlsh {
namespace {

using ::privlsh::testing::ForAll;
using ::privlsh::testing::Gen;
using ::privlsh::testing::IsOk;
using ::privlsh::testing::IsOkAndHolds;
using ::privlsh::testing::OracleAngular;
using ::privlsh::testing::StatusIs;

Vector Dense(std::vector<double> v) { return *DenseVector::Create(std::move(v)); }

Vector Sparse(const std::vector<double>& v) {
  return SparseVector::FromDense(*DenseVector::Create(v));
}

BitString Bits(const char* s) { return *BitString::FromString(s); }

TEST(DenseVectorTest, RejectsEmptyAndNonFinite) {
  EXPECT_THAT(DenseVector::Create({}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(DenseVector::Create({1.0, NAN}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(DenseVector::Create({INFINITY}),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(SparseVectorTest, ValidatesEntries) {
  EXPECT_OK(SparseVector::Create(4, {{0, 1.0}, {3, -2.0}}));
  EXPECT_THAT(SparseVector::Create(4, {{3, 1.0}, {1, 1.0}}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(SparseVector::Create(4, {{1, 1.0}, {1, 2.0}}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(SparseVector::Create(4, {{4, 1.0}}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(SparseVector::Create(4, {{1, 0.0}}),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(SparseVectorTest, DenseRoundTrip) {
  const auto dense = *DenseVector::Create({0.0, 2.5, 0.0, -1.0});
  const SparseVector sparse = SparseVector::FromDense(dense);
  EXPECT_EQ(sparse.nonzeros(), 2u);
  EXPECT_EQ(sparse.ToDense(), dense);
  EXPECT_DOUBLE_EQ(sparse.SquaredNorm(), dense.SquaredNorm());
}

TEST(NormalizeTest, Examples) {
  ASSERT_OK_AND_ASSIGN(const DenseVector n,
                       Normalize(*DenseVector::Create({3, 4})));
  EXPECT_NEAR(n[0], 0.6, 1e-15);
  EXPECT_NEAR(n[1], 0.8, 1e-15);

  ASSERT_OK_AND_ASSIGN(const DenseVector unit,
                       Normalize(*DenseVector::Create({1, 0, 0})));
  EXPECT_EQ(unit, *DenseVector::Create({1, 0, 0}));

  EXPECT_THAT(Normalize(*DenseVector::Create({0, 0})),
              StatusIs(absl::StatusCode::kInvalidArgument, "zero vector"));
}

TEST(NormalizeTest, SparseStaysSparse) {
  ASSERT_OK_AND_ASSIGN(const Vector n, Normalize(Sparse({0, 3, 0, 4})));
  ASSERT_TRUE(std::holds_alternative<SparseVector>(n));
  EXPECT_NEAR(Norm(n), 1.0, 1e-15);
}

TEST(AngularDistanceTest, Examples) {
  const Vector x = Dense({0.3, -1.2, 2.0});
  const Vector neg = Dense({-0.3, 1.2, -2.0});
  EXPECT_THAT(AngularDistance(x, x), IsOkAndHolds(0.0));
  EXPECT_THAT(AngularDistance(x, neg), IsOkAndHolds(1.0));
  ASSERT_OK_AND_ASSIGN(const double d,
                       AngularDistance(Dense({1, 0}), Dense({0, 1})));
  EXPECT_DOUBLE_EQ(d, 0.5);
  ASSERT_OK_AND_ASSIGN(const double q,
                       AngularDistance(Dense({1, 0}), Dense({1, 1})));
  EXPECT_NEAR(q, 0.25, 1e-15);
}

TEST(AngularDistanceTest, Errors) {
  EXPECT_THAT(AngularDistance(Dense({0, 0}), Dense({1, 0})),
              StatusIs(absl::StatusCode::kInvalidArgument, "zero vector"));
  EXPECT_THAT(AngularDistance(Dense({1, 0}), Dense({1, 0, 0})),
              StatusIs(absl::StatusCode::kInvalidArgument,
                       "dimension mismatch"));
}

TEST(AngularDistanceTest, ClampsNearParallelInputs) {
  // Cosine of these rounds above 1 in double arithmetic.
  const Vector x = Dense({0.1, 0.2, 0.3});
  const Vector y = Dense({0.1 * 3, 0.2 * 3, 0.3 * 3});
  ASSERT_OK_AND_ASSIGN(const double d, AngularDistance(x, y));
  EXPECT_FALSE(std::isnan(d));
  EXPECT_NEAR(d, 0.0, 1e-16);
}

TEST(EuclideanDistanceTest, Examples) {
  EXPECT_THAT(EuclideanDistance(Dense({0, 0}), Dense({3, 4})),
              IsOkAndHolds(5.0));
  EXPECT_THAT(EuclideanDistance(Dense({1, 2}), Dense({1, 2})),
              IsOkAndHolds(0.0));
  ASSERT_OK_AND_ASSIGN(const double d,
                       EuclideanDistance(Dense({1, 0}), Dense({0, 1})));
  EXPECT_NEAR(d, std::sqrt(2.0), 1e-15);
  EXPECT_THAT(EuclideanDistance(Dense({1}), Dense({1, 0})),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(HammingDistanceTest, Examples) {
  EXPECT_THAT(HammingDistance(Bits("0101"), Bits("0101")),
              IsOkAndHolds(0));
  EXPECT_THAT(HammingDistance(Bits("0000"), Bits("1111")),
              IsOkAndHolds(4));
  EXPECT_THAT(HammingDistance(Bits("0101"), Bits("0110")),
              IsOkAndHolds(2));
  EXPECT_THAT(HammingDistance(Bits("01"), Bits("011")),
              StatusIs(absl::StatusCode::kInvalidArgument,
                       "dimension mismatch"));
}

TEST(BitStringTest, StringRoundTripAcrossWordBoundary) {
  Gen gen(11);
  for (std::size_t width : {1u, 63u, 64u, 65u, 130u}) {
    const std::string s = gen.Bits(width);
    ASSERT_OK_AND_ASSIGN(const BitString b, BitString::FromString(s));
    EXPECT_EQ(b.ToString(), s);
    EXPECT_EQ(b.PopCount(),
              static_cast<std::size_t>(std::count(s.begin(), s.end(), '1')));
  }
  EXPECT_THAT(BitString::FromString(""),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(BitString::FromString("0120"),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(BitString::Zeros(0),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(MetricTransformTest, Examples) {
  EXPECT_THAT(AngularToEuclidean(0.0), IsOkAndHolds(0.0));
  ASSERT_OK_AND_ASSIGN(const double half, AngularToEuclidean(0.5));
  EXPECT_NEAR(half, std::sqrt(2.0), 1e-15);
  ASSERT_OK_AND_ASSIGN(const double one, AngularToEuclidean(1.0));
  EXPECT_NEAR(one, 2.0, 1e-15);
  EXPECT_THAT(AngularToEuclidean(-0.01),
              StatusIs(absl::StatusCode::kOutOfRange));
  EXPECT_THAT(AngularToEuclidean(1.01),
              StatusIs(absl::StatusCode::kOutOfRange));
  EXPECT_THAT(EuclideanToAngular(2.5), StatusIs(absl::StatusCode::kOutOfRange));
}

TEST(MetricTransformTest, MatchesUnitVectorGeometry) {
  ForAll(200, 21, [](Gen& gen, int) {
    const Vector x = *Normalize(Dense(gen.Vector(5)));
    const Vector y = *Normalize(Dense(gen.Vector(5)));
    const double d = *AngularDistance(x, y);
    EXPECT_NEAR(*AngularToEuclidean(d), *EuclideanDistance(x, y), 1e-12);
  });
}

// Properties.

TEST(AngularDistanceProperty, MatchesLongDoubleOracle) {
  ForAll(500, 1, [](Gen& gen, int i) {
    const std::size_t n = gen.Int(1, 12);
    const std::vector<double> a = gen.Vector(n);
    std::vector<double> b = gen.Vector(n);
    // Every third case is nearly parallel or antiparallel to a.
    if (i % 3 != 0) {
      const double sign = i % 2 == 0 ? 1.0 : -1.0;
      const double tilt = std::pow(10.0, gen.Uniform(-9, -2));
      for (std::size_t j = 0; j < n; ++j) b[j] = sign * a[j] + tilt * b[j];
    }
    ASSERT_OK_AND_ASSIGN(const double d, AngularDistance(Dense(a), Dense(b)));
    EXPECT_NEAR(d, OracleAngular(a, b), 1e-14);
  });
}

TEST(AngularDistanceProperty, SymmetricBoundedScaleInvariant) {
  ForAll(500, 2, [](Gen& gen, int) {
    const std::size_t n = gen.Int(1, 10);
    const std::vector<double> a = gen.Vector(n), b = gen.Vector(n);
    const double c = gen.Uniform(1e-3, 1e3);
    std::vector<double> ca = a;
    for (double& v : ca) v *= c;
    const double d = *AngularDistance(Dense(a), Dense(b));
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 1.0);
    EXPECT_DOUBLE_EQ(d, *AngularDistance(Dense(b), Dense(a)));
    EXPECT_NEAR(d, *AngularDistance(Dense(ca), Dense(b)), 1e-9);
    EXPECT_EQ(*AngularDistance(Dense(a), Dense(a)), 0.0);
  });
}

TEST(AngularDistanceProperty, SparseAndDenseAgree) {
  ForAll(300, 3, [](Gen& gen, int) {
    const std::size_t n = gen.Int(2, 40);
    const std::vector<double> a = gen.SparseLike(n, 0.2);
    const std::vector<double> b = gen.SparseLike(n, 0.2);
    const double dd = *AngularDistance(Dense(a), Dense(b));
    EXPECT_NEAR(*AngularDistance(Sparse(a), Sparse(b)), dd, 1e-14);
    EXPECT_NEAR(*AngularDistance(Sparse(a), Dense(b)), dd, 1e-14);
    EXPECT_NEAR(*AngularDistance(Dense(a), Sparse(b)), dd, 1e-14);
    EXPECT_NEAR(*EuclideanDistance(Sparse(a), Dense(b)),
                *EuclideanDistance(Dense(a), Dense(b)), 1e-12);
  });
}

TEST(NormalizeProperty, UnitNormAndPreservesAngles) {
  ForAll(500, 4, [](Gen& gen, int) {
    const std::size_t n = gen.Int(1, 10);
    std::vector<double> a = gen.Vector(n);
    const double scale = std::pow(10.0, gen.Uniform(-6, 6));
    for (double& v : a) v *= scale;
    const std::vector<double> b = gen.Vector(n);
    ASSERT_OK_AND_ASSIGN(const DenseVector u,
                         Normalize(*DenseVector::Create(a)));
    EXPECT_NEAR(u.Norm(), 1.0, 1e-9);
    EXPECT_NEAR(*AngularDistance(Vector(u), Dense(b)),
                *AngularDistance(Dense(a), Dense(b)), 1e-9);
  });
}

TEST(EuclideanDistanceProperty, TriangleInequality) {
  ForAll(500, 5, [](Gen& gen, int) {
    const std::size_t n = gen.Int(1, 8);
    const Vector a = Dense(gen.Vector(n)), b = Dense(gen.Vector(n)),
                 c = Dense(gen.Vector(n));
    EXPECT_LE(*EuclideanDistance(a, c),
              *EuclideanDistance(a, b) + *EuclideanDistance(b, c) + 1e-12);
    EXPECT_DOUBLE_EQ(*EuclideanDistance(a, b), *EuclideanDistance(b, a));
  });
}

TEST(MetricTransformProperty, RoundTripOnFullRange) {
  for (int i = 0; i <= 2000; ++i) {
    const double e = 2.0 * i / 2000.0;
    ASSERT_OK_AND_ASSIGN(const double d, EuclideanToAngular(e));
    EXPECT_NEAR(*AngularToEuclidean(d), e, 1e-9);
  }
}

TEST(MetricTransformProperty, StrictlyIncreasing) {
  double previous = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double e = *AngularToEuclidean(i / 1000.0);
    EXPECT_GT(e, previous);
    previous = e;
  }
}

TEST(HammingDistanceProperty, MetricAxiomsExhaustive) {
  for (int width = 1; width <= 6; ++width) {
    const int count = 1 << width;
    std::vector<BitString> all;
    for (int v = 0; v < count; ++v) {
      BitString b = *BitString::Zeros(width);
      for (int i = 0; i < width; ++i) b.set(i, (v >> i) & 1);
      all.push_back(b);
    }
    for (int a = 0; a < count; ++a) {
      for (int b = 0; b < count; ++b) {
        const int dab = *HammingDistance(all[a], all[b]);
        EXPECT_EQ(dab == 0, a == b);
        EXPECT_EQ(dab, *HammingDistance(all[b], all[a]));
        EXPECT_EQ(dab, std::popcount(static_cast<unsigned>(a ^ b)));
        for (int c = 0; c < count; ++c) {
          EXPECT_LE(*HammingDistance(all[a], all[c]),
                    dab + *HammingDistance(all[b], all[c]));
        }
      }
    }
  }
}

TEST(HammingDistanceProperty, MetricAxiomsWidthEight) {
  // Triangle over all pairs with the third point sampled, to keep 8 bits fast.
  std::vector<BitString> all;
  for (int v = 0; v < 256; ++v) {
    BitString b = *BitString::Zeros(8);
    for (int i = 0; i < 8; ++i) b.set(i, (v >> i) & 1);
    all.push_back(b);
  }
  Gen gen(6);
  for (int a = 0; a < 256; ++a) {
    for (int b = 0; b < 256; ++b) {
      const int c = gen.Int(0, 255);
      const int dab = *HammingDistance(all[a], all[b]);
      EXPECT_EQ(dab == 0, a == b);
      EXPECT_LE(*HammingDistance(all[a], all[c]),
                dab + *HammingDistance(all[b], all[c]));
    }
  }
}

}  // namespace
}  // namespace privlsh
