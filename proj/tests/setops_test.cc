// Copyright 2026 The Sumfold Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sumfold/setops.h"

#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "sumfold/errors.h"

namespace sumfold {
namespace {

using oracle::Ints;

std::vector<mpq_class> AsVector(const FiniteSet& s) {
  std::vector<mpq_class> out;
  for (const Rational& r : s) out.push_back(r.ToMpq());
  return out;
}

TEST(SetopsTest, Examples) {
  FiniteSet a = Ints({1, 2, 3});
  EXPECT_EQ(Sumset(a, a), Ints({2, 3, 4, 5, 6}));
  EXPECT_EQ(ProductSet(a, a), Ints({1, 2, 3, 4, 6, 9}));
  EXPECT_EQ(KFoldSum(a, 3).size(), 7u);
  EXPECT_EQ(QuotientSet(a, a).size(), 7u);
  EXPECT_EQ(KFoldSum(Ints({1, 2, 4, 8}), 2).size(), 10u);
  EXPECT_EQ(KFoldSum(a, 1), a);
  EXPECT_EQ(KFoldProduct(Ints({2, 3}), 2), Ints({4, 6, 9}));
}

TEST(SetopsTest, RejectsBadInput) {
  EXPECT_THROW(FiniteSet::FromElements({}), UsageError);
  EXPECT_THROW(FiniteSet::FromElements({Rational(1), Rational(0)}), UsageError);
  EXPECT_THROW(FiniteSet::FromElements({Rational(-1, 2)}), UsageError);
  FiniteSet a = Ints({1, 2});
  EXPECT_THROW(KFoldSum(a, 0), UsageError);
  EXPECT_THROW(KFoldProduct(a, -1), UsageError);
}

TEST(SetopsTest, FromElementsSortsAndDeduplicates) {
  FiniteSet a = FiniteSet::FromElements(
      {Rational(3), Rational(1, 2), Rational(2, 4), Rational(3)});
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a.min(), Rational(1, 2));
  EXPECT_EQ(a.max(), Rational(3));
  EXPECT_TRUE(a.Contains(Rational(1, 2)));
  EXPECT_FALSE(a.Contains(Rational(2)));
}

TEST(SetopsTest, PairwiseOperationsMatchOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto va = oracle::RandomIntegers(rng, 1 + trial % 15, 60);
    auto vb = oracle::RandomIntegers(rng, 1 + (trial * 7) % 13, 60);
    for (auto& q : vb) q /= 1 + trial % 4;
    FiniteSet a = oracle::FromQ(va);
    FiniteSet b = oracle::FromQ(vb);
    oracle::QSet sums, prods, quots;
    for (const auto& x : va) {
      for (const auto& y : vb) {
        sums.insert(mpq_class(x + y));
        prods.insert(mpq_class(x * y));
        quots.insert(mpq_class(x / y));
      }
    }
    EXPECT_EQ(oracle::ToQSet(Sumset(a, b)), sums);
    EXPECT_EQ(oracle::ToQSet(ProductSet(a, b)), prods);
    EXPECT_EQ(oracle::ToQSet(QuotientSet(a, b)), quots);
  }
}

TEST(SetopsTest, KFoldMatchesNestedEnumeration) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    int size = 1 + trial % 9;
    int k = 1 + trial % 4;
    auto va = oracle::RandomIntegers(rng, size, 100);
    if (trial % 3 == 0) {
      for (auto& q : va) q /= 3;
    }
    FiniteSet a = oracle::FromQ(va);
    EXPECT_EQ(oracle::ToQSet(KFoldSum(a, k)), oracle::NestedSum(va, k));
    EXPECT_EQ(oracle::ToQSet(KFoldProduct(a, k)), oracle::NestedProduct(va, k));
  }
}

TEST(SetopsTest, BinarySplitAssociationMatchesLeftFold) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    FiniteSet a = oracle::FromQ(oracle::RandomIntegers(rng, 2 + trial % 10, 150));
    for (int k = 2; k <= 5; ++k) {
      FiniteSet left_fold = KFoldSum(a, k);
      for (int k1 = 1; k1 < k; ++k1) {
        EXPECT_EQ(Sumset(KFoldSum(a, k1), KFoldSum(a, k - k1)), left_fold);
      }
    }
  }
}

TEST(SetopsTest, DilationPreservesCardinalities) {
  FiniteSet a = Ints({1, 2, 5, 9, 14});
  for (const Rational& lambda : {Rational(2), Rational(1, 3), Rational(7, 5)}) {
    FiniteSet b = Dilate(a, lambda);
    EXPECT_EQ(b.size(), a.size());
    EXPECT_EQ(KFoldSum(b, 3).size(), KFoldSum(a, 3).size());
    EXPECT_EQ(ProductSet(b, b).size(), ProductSet(a, a).size());
    EXPECT_EQ(QuotientSet(b, b), QuotientSet(a, a));
  }
  EXPECT_THROW(Dilate(a, Rational(0)), UsageError);
}

TEST(SetopsTest, PlanarSumMatchesOracle) {
  FiniteSet a = Ints({1, 2, 4, 8});
  PlanarSet p = Cartesian(a, Ints({1, 3}));
  PlanarSet q = PlanarSet::FromPoints(
      {{Rational(1), Rational(2)}, {Rational(1, 2), Rational(5)}});
  EXPECT_EQ(oracle::ToQPlanar(PlanarSum(p, q)),
            oracle::PairPlanarSum(oracle::ToQPlanar(p), oracle::ToQPlanar(q)));
  EXPECT_EQ(PlanarKFold(p, 2), PlanarSum(p, p));
  EXPECT_EQ(PlanarKFold(p, 3), PlanarSum(PlanarSum(p, p), p));
}

TEST(SetopsTest, SumsAlongIndependentDirectionsAreProducts) {
  // Points on two lines through the origin with different slopes: the
  // planar sum is in bijection with pairs.
  FiniteSet a = Ints({1, 2, 3, 7});
  std::vector<Point> on_first, on_second;
  for (const Rational& x : a) {
    on_first.push_back({x, x});
    on_second.push_back({x, x * Rational(3)});
  }
  PlanarSet p = PlanarSet::FromPoints(on_first);
  PlanarSet q = PlanarSet::FromPoints(on_second);
  for (int k1 = 1; k1 <= 3; ++k1) {
    for (int k2 = 1; k2 <= 3; ++k2) {
      PlanarSet block = PlanarSum(PlanarKFold(p, k1), PlanarKFold(q, k2));
      EXPECT_EQ(block.size(), KFoldSum(a, k1).size() * KFoldSum(a, k2).size());
    }
  }
}

TEST(SetopsTest, ProjectY) {
  PlanarSet p = PlanarSet::FromPoints({{Rational(1), Rational(4)},
                                       {Rational(2), Rational(4)},
                                       {Rational(3), Rational(1, 2)}});
  EXPECT_EQ(ProjectY(p), FiniteSet::FromElements({Rational(1, 2), Rational(4)}));
  EXPECT_THROW(ProjectY(PlanarSet()), UsageError);
}

TEST(SetopsTest, BigElementsStayExact) {
  Rational big = Rational::Parse("1267650600228229401496703205376");  // 2^100
  FiniteSet a = FiniteSet::FromElements({Rational(1), big, big * Rational(3)});
  auto va = AsVector(a);
  EXPECT_EQ(oracle::ToQSet(KFoldSum(a, 3)), oracle::NestedSum(va, 3));
  EXPECT_EQ(oracle::ToQSet(KFoldProduct(a, 3)), oracle::NestedProduct(va, 3));
}

}  // namespace
}  // namespace sumfold
