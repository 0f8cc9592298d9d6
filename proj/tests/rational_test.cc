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

#include "sumfold/rational.h"

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"

namespace sumfold {
namespace {

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();

TEST(RationalTest, AddExamples) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(0, 1) + Rational(7, 3), Rational(7, 3));
  EXPECT_EQ(Rational(2, 4) + Rational(1, 2), Rational(1));
  EXPECT_EQ((Rational(2, 4) + Rational(1, 2)).ToString(), "1");
}

TEST(RationalTest, MulDivCmpExamples) {
  EXPECT_EQ(Rational(2, 3) * Rational(3, 2), Rational(1, 1));
  EXPECT_EQ(Rational(1, 2) / Rational(1, 3), Rational(3, 2));
  EXPECT_LT(Rational(2, 3), Rational(3, 4));
  EXPECT_EQ(Compare(Rational(2, 3), Rational(3, 4)), -1);
}

TEST(RationalTest, DivisionByZeroThrows) {
  EXPECT_THROW(Rational(1, 2) / Rational(0), std::domain_error);
  EXPECT_THROW(Rational(1, 0), std::domain_error);
  EXPECT_THROW(Rational::Parse("3/0"), std::domain_error);
}

TEST(RationalTest, NormalizesSignAndTerms) {
  Rational r(6, -4);
  EXPECT_EQ(r.ToString(), "-3/2");
  EXPECT_EQ(r.Denominator(), 2);
  EXPECT_EQ(Rational(0, -5).ToString(), "0");
  EXPECT_EQ(Rational(0, -5), Rational());
}

TEST(RationalTest, ParseAcceptsFractionsAndIntegers) {
  EXPECT_EQ(Rational::Parse("3/2"), Rational(3, 2));
  EXPECT_EQ(Rational::Parse("10/4").ToString(), "5/2");
  EXPECT_EQ(Rational::Parse("7"), Rational(7));
  EXPECT_EQ(Rational::Parse("-7/14"), Rational(-1, 2));
  EXPECT_EQ(Rational::Parse("+4"), Rational(4));
  EXPECT_EQ(Rational::Parse("123456789012345678901234567890").ToString(),
            "123456789012345678901234567890");
  for (const char* bad : {"", "/", "1/", "/2", "1.5", "a", "1/-2", "1//2", "1 "}) {
    EXPECT_THROW(Rational::Parse(bad), std::invalid_argument) << bad;
  }
}

TEST(RationalTest, PromotesAndDemotesAcrossWordBoundary) {
  Rational big = Rational(kMax) + Rational(1);
  EXPECT_FALSE(big.IsSmall());
  EXPECT_EQ(big.ToString(), "9223372036854775808");
  Rational back = big - Rational(1);
  EXPECT_TRUE(back.IsSmall());
  EXPECT_EQ(back, Rational(kMax));

  Rational min(kMin);
  EXPECT_FALSE(min.IsSmall());
  EXPECT_EQ(min.ToString(), "-9223372036854775808");
  EXPECT_EQ(-(-min), min);

  Rational tiny(1, kMax);
  Rational tinier = tiny * Rational(1, 2);
  EXPECT_FALSE(tinier.IsSmall());
  EXPECT_EQ(tinier * Rational(2), tiny);
  EXPECT_TRUE((tinier * Rational(2)).IsSmall());
}

TEST(RationalTest, CopiesShareBigValues) {
  Rational big = Rational::Parse("340282366920938463463374607431768211456/3");
  std::vector<Rational> copies(5, big);
  copies.push_back(std::move(copies[0]));
  for (std::size_t i = 1; i < copies.size(); ++i) EXPECT_EQ(copies[i], big);
  copies.clear();
  EXPECT_EQ(big.ToString(), "340282366920938463463374607431768211456/3");
}

TEST(RationalTest, Log2HandlesHugeValues) {
  Rational two_to_200 = Rational::Parse(
      "1606938044258990275541962092341162602522202993782792835301376");
  EXPECT_NEAR(two_to_200.Log2(), 200.0, 1e-9);
  EXPECT_NEAR((Rational(1) / two_to_200).Log2(), -200.0, 1e-9);
  EXPECT_NEAR(Rational(3, 4).Log2(), std::log2(0.75), 1e-12);
}

// Random operands mixing word-sized, near-overflow and multi-word values.
class RationalProperty : public ::testing::Test {
 protected:
  Rational Draw() {
    std::uniform_int_distribution<int> kind(0, 3);
    switch (kind(rng_)) {
      case 0: {
        std::uniform_int_distribution<std::int64_t> d(-50, 50);
        std::uniform_int_distribution<std::int64_t> e(1, 30);
        return Rational(d(rng_), e(rng_));
      }
      case 1: {
        std::uniform_int_distribution<std::int64_t> d(kMin + 1, kMax);
        std::uniform_int_distribution<std::int64_t> e(1, kMax);
        return Rational(d(rng_), e(rng_));
      }
      case 2: {
        std::uniform_int_distribution<std::int64_t> d(1, 1 << 20);
        return Rational(kMax - d(rng_), d(rng_));
      }
      default: {
        std::uniform_int_distribution<std::int64_t> d(1, kMax);
        mpz_class num = mpz_class(static_cast<long>(d(rng_))) *
                        static_cast<long>(d(rng_));
        mpz_class den = mpz_class(static_cast<long>(d(rng_))) * 3;
        return Rational(mpq_class(num, den));
      }
    }
  }

  std::mt19937_64 rng_{20260115};
};

TEST_F(RationalProperty, AgreesWithGmp) {
  for (int i = 0; i < 3000; ++i) {
    Rational a = Draw();
    Rational b = Draw();
    mpq_class qa = a.ToMpq();
    mpq_class qb = b.ToMpq();
    ASSERT_EQ((a + b).ToMpq(), mpq_class(qa + qb));
    ASSERT_EQ((a - b).ToMpq(), mpq_class(qa - qb));
    ASSERT_EQ((a * b).ToMpq(), mpq_class(qa * qb));
    if (b.Sign() != 0) ASSERT_EQ((a / b).ToMpq(), mpq_class(qa / qb));
    ASSERT_EQ(Compare(a, b), (cmp(qa, qb) > 0) - (cmp(qa, qb) < 0));
    ASSERT_EQ(a == b, qa == qb);
  }
}

TEST_F(RationalProperty, FieldLaws) {
  for (int i = 0; i < 2000; ++i) {
    Rational a = Draw();
    Rational b = Draw();
    Rational c = Draw();
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a + b, b + a);
  }
}

TEST_F(RationalProperty, NormalizationIsIdempotent) {
  for (int i = 0; i < 1000; ++i) {
    Rational a = Draw();
    Rational renormalized(a.ToMpq());
    ASSERT_EQ(renormalized, a);
    ASSERT_EQ(renormalized.IsSmall(), a.IsSmall());
    ASSERT_EQ(Rational::Parse(a.ToString()), a);
  }
}

TEST_F(RationalProperty, OrderMatchesDoubleWhenSeparated) {
  for (int i = 0; i < 2000; ++i) {
    Rational a = Draw();
    Rational b = Draw();
    double da = a.ToDouble();
    double db = b.ToDouble();
    if (da < db * (1 - 1e-12) && da < db - 1e-300) ASSERT_LT(a, b);
    if (a < b) ASSERT_LE(da, db);
  }
}

TEST(PointTest, LexicographicOrder) {
  Point a{Rational(1), Rational(5)};
  Point b{Rational(2), Rational(1)};
  Point c{Rational(1), Rational(6)};
  EXPECT_LT(a, b);
  EXPECT_LT(a, c);
  EXPECT_LT(c, b);
  EXPECT_EQ(a + b, (Point{Rational(3), Rational(6)}));
}

}  // namespace
}  // namespace sumfold
