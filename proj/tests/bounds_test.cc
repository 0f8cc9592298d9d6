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

#include "sumfold/bounds.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string_view>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "sumfold/errors.h"

namespace sumfold {
namespace {

const SplitStrategy kDp{SplitKind::kDpOptimal, ""};
const SplitStrategy kBalanced{SplitKind::kBalanced, ""};
const SplitStrategy kPow2{SplitKind::kPowersOfTwo, ""};

SplitStrategy Explicit(const char* tree) {
  return SplitStrategy{SplitKind::kExplicit, tree};
}

TEST(BoundsTest, DpPsiTable) {
  const std::vector<Rational> expected = {
      Rational(1),     Rational(3, 2), Rational(7, 4),  Rational(2),
      Rational(17, 8), Rational(9, 4), Rational(19, 8), Rational(5, 2)};
  for (int k = 1; k <= 8; ++k) EXPECT_EQ(Psi(k, kDp), expected[k - 1]) << k;
}

TEST(BoundsTest, DpIsExhaustiveMaximum) {
  for (int k = 1; k <= 12; ++k) {
    auto values = oracle::AllPsiValues(k);
    EXPECT_EQ(Psi(k, kDp).ToMpq(), *values.rbegin()) << k;
    for (const auto* s : {&kBalanced, &kPow2}) {
      EXPECT_TRUE(values.count(Psi(k, *s).ToMpq())) << k;
    }
  }
}

TEST(BoundsTest, PowersOfTwo) {
  for (int z = 0; z <= 10; ++z) {
    EXPECT_EQ(Psi(1 << z, kDp), Rational(z + 2, 2)) << z;
    EXPECT_EQ(Psi(1 << z, kBalanced), Rational(z + 2, 2)) << z;
  }
}

TEST(BoundsTest, StrategiesAndFloorExponent) {
  Rational prev(0);
  for (int k = 1; k <= 1024; ++k) {
    Rational dp = Psi(k, kDp);
    EXPECT_LE(Psi(k, kBalanced), dp);
    EXPECT_LE(Psi(k, kPow2), dp);
    EXPECT_GE(dp, prev);
    prev = dp;
    FloorExponent f = FloorExponentFor(k);
    EXPECT_EQ(f.z, std::bit_width(static_cast<unsigned>(k)) - 1);
    EXPECT_EQ(f.value, Rational(f.z + 2, 2));
    EXPECT_TRUE(f.dominates_log4_2k);
    EXPECT_GE(dp, f.value);
    EXPECT_TRUE(AtLeastLog4TwoK(dp, k));
    if (2 * k <= 1024) EXPECT_GE(Psi(2 * k, kDp), dp + Rational(1, 2));
  }
}

TEST(BoundsTest, FloorExponentExamples) {
  EXPECT_EQ(FloorExponentFor(1).value, Rational(1));
  EXPECT_EQ(FloorExponentFor(2).z, 1);
  EXPECT_EQ(FloorExponentFor(2).value, Rational(3, 2));
  EXPECT_EQ(FloorExponentFor(8).z, 3);
  EXPECT_EQ(FloorExponentFor(8).value, Rational(5, 2));
  EXPECT_TRUE(AtLeastLog4TwoK(Rational(1, 2), 1));
  EXPECT_FALSE(AtLeastLog4TwoK(Rational(1, 2), 2));
  EXPECT_TRUE(AtLeastLog4TwoK(Rational(2), 8));
  EXPECT_FALSE(AtLeastLog4TwoK(Rational(15, 8), 8));
  EXPECT_EQ(Log4String(16), "2");
  EXPECT_EQ(Log4String(8), "3/2");
  EXPECT_EQ(Log4String(6), "1.292481");
}

TEST(BoundsTest, BaseAndSmallConstants) {
  BoundConstants c1 = Constants(1, kDp);
  EXPECT_EQ(c1.psi, Rational(1));
  EXPECT_EQ(c1.d, Rational(0));
  EXPECT_EQ(c1.log2_c, Rational(0));
  BoundConstants c2 = Constants(2, kDp);
  EXPECT_EQ(c2.psi, Rational(3, 2));
  EXPECT_EQ(c2.d, Rational(2));
  EXPECT_EQ(c2.log2_c, Rational(-3, 2));
  for (const auto* s : {&kDp, &kBalanced, &kPow2}) {
    BoundConstants c4 = Constants(4, *s);
    EXPECT_EQ(c4.psi, Rational(2));
    EXPECT_EQ(c4.d, Rational(9));
    EXPECT_EQ(c4.log2_c, Rational(-11, 2));
    EXPECT_EQ(c4.split.ToString(), "((1+1)+(1+1))");
  }
}

// Evaluates both sides of
//   (C/M^D)^2 == C1 C2 / (2 (2M^3)^(D1+D2) (2M^2)^(P1+P2))
// exactly after raising to a power that clears every exponent denominator.
void ExpectMatchesDisplayedInequality(const BoundConstants& k,
                                      const BoundConstants& a,
                                      const BoundConstants& b,
                                      const mpq_class& m) {
  auto den = [](const Rational& r) { return r.Denominator(); };
  mpz_class t = 2;
  for (const auto* c : {&k, &a, &b}) {
    for (const Rational* r : {&c->psi, &c->d, &c->log2_c}) {
      mpz_lcm(t.get_mpz_t(), t.get_mpz_t(), den(*r).get_mpz_t());
    }
  }
  auto pow_q = [](mpq_class base, const mpq_class& e) {
    // e is an integer here.
    mpz_class ez = e.get_num();
    bool neg = ez < 0;
    if (neg) ez = -ez;
    mpq_class out = 1;
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), ez.get_ui());
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), ez.get_ui());
    out = mpq_class(num, den);
    out.canonicalize();
    return neg ? mpq_class(1 / out) : out;
  };
  mpq_class tq(t);
  mpq_class two_t = 2 * tq;
  // Left: C^(2t) / M^(2t D).
  mpq_class lhs = pow_q(2, mpq_class(two_t * k.log2_c.ToMpq())) /
                  pow_q(m, mpq_class(two_t * k.d.ToMpq()));
  mpq_class m3 = 2 * m * m * m;
  mpq_class m2 = 2 * m * m;
  mpq_class rhs = pow_q(2, mpq_class(tq * (a.log2_c + b.log2_c).ToMpq())) /
                  (pow_q(2, tq) *
                   pow_q(m3, mpq_class(tq * (a.d + b.d).ToMpq())) *
                   pow_q(m2, mpq_class(tq * (a.psi + b.psi).ToMpq())));
  EXPECT_EQ(lhs, rhs) << "k=" << k.k << " M=" << m;
}

TEST(BoundsTest, RecursionMatchesDisplayedInequality) {
  for (int k = 2; k <= 8; ++k) {
    for (const auto* s : {&kDp, &kBalanced, &kPow2}) {
      BoundConstants c = Constants(k, *s);
      BoundConstants left = ConstantsForTree(c.split.left());
      BoundConstants right = ConstantsForTree(c.split.right());
      for (const mpq_class& m : {mpq_class(3), mpq_class(5, 2)}) {
        ExpectMatchesDisplayedInequality(c, left, right, m);
      }
    }
  }
}

TEST(BoundsTest, PowersOfTwoClosedRecursion) {
  for (int z = 0; z < 10; ++z) {
    BoundConstants lo = Constants(1 << z, kPow2);
    BoundConstants hi = Constants(1 << (z + 1), kPow2);
    EXPECT_EQ(hi.d, Rational(3) * lo.d + Rational(z + 2));
    EXPECT_EQ(hi.log2_c,
              lo.log2_c - (Rational(1) + Rational(2) * lo.d + Rational(z + 2)) *
                              Rational(1, 2));
  }
}

TEST(BoundsTest, SplitShapes) {
  EXPECT_EQ(BuildSplitTree(3, kBalanced).ToString(), "((1+1)+1)");
  EXPECT_EQ(BuildSplitTree(6, kPow2).ToString(), "(((1+1)+(1+1))+(1+1))");
  EXPECT_EQ(BuildSplitTree(5, kPow2).ToString(), "(((1+1)+(1+1))+1)");
  EXPECT_EQ(BuildSplitTree(4, kDp).ToString(), "((1+1)+(1+1))");
  EXPECT_EQ(BuildSplitTree(1, kDp).ToString(), "1");
  EXPECT_THROW(BuildSplitTree(0, kDp), UsageError);
  EXPECT_THROW(Psi(0, kBalanced), UsageError);
}

TEST(BoundsTest, ExplicitTrees) {
  EXPECT_EQ(Psi(3, Explicit("(1+(1+1))")), Rational(7, 4));
  EXPECT_EQ(Psi(4, Explicit("2+2")), Rational(2));
  EXPECT_EQ(Psi(4, Explicit("1+3")), Rational(15, 8));
  EXPECT_EQ(BuildSplitTree(4, Explicit("1+3")).ToString(), "(1+((1+1)+1))");
  for (const char* bad : {"", "(1+1", "1+", "1++1", "a", "0+2", "(1+1)+(1+1)+1"}) {
    EXPECT_THROW(BuildSplitTree(4, Explicit(bad)), UsageError) << bad;
  }
  EXPECT_THROW(BuildSplitTree(5, Explicit("2+2")), UsageError);
}

TEST(BoundsTest, ExplicitTreesCommute) {
  const std::vector<std::pair<const char*, const char*>> pairs = {
      {"(1+(1+1))", "((1+1)+1)"},
      {"((1+1)+((1+1)+1))", "(((1+1)+1)+(1+1))"},
      {"(1+((1+1)+(1+(1+1))))", "((((1+1)+1)+(1+1))+1)"}};
  for (const auto& [a, b] : pairs) {
    std::string_view text(a);
    int k = static_cast<int>(std::count(text.begin(), text.end(), '1'));
    BoundConstants ca = Constants(k, Explicit(a));
    BoundConstants cb = Constants(k, Explicit(b));
    EXPECT_EQ(ca.psi, cb.psi);
    EXPECT_EQ(ca.d, cb.d);
    EXPECT_EQ(ca.log2_c, cb.log2_c);
  }
}

TEST(BoundsTest, StrategyParsing) {
  EXPECT_EQ(SplitStrategy::Parse("dp").kind, SplitKind::kDpOptimal);
  EXPECT_EQ(SplitStrategy::Parse("balanced").kind, SplitKind::kBalanced);
  EXPECT_EQ(SplitStrategy::Parse("pow2").kind, SplitKind::kPowersOfTwo);
  SplitStrategy e = SplitStrategy::Parse("explicit:2+2");
  EXPECT_EQ(e.kind, SplitKind::kExplicit);
  EXPECT_EQ(e.Name(), "explicit:2+2");
  EXPECT_THROW(SplitStrategy::Parse("fastest"), UsageError);
}

TEST(BoundsTest, BoundValueExamples) {
  BoundConstants c2 = Constants(2, kDp);
  TheoremBound b(c2, 16, Rational(31, 16));
  // 2^(-3/2) * 64 * (16/31)^2
  double expected = std::pow(2.0, -1.5) * 64.0 * (16.0 / 31.0) * (16.0 / 31.0);
  EXPECT_NEAR(b.Approx(), expected, 1e-12);
  // 2^(-3/2) * 64 * 256/961 = 16384 / (961 * 2^(3/2)) ~ 6.027
  EXPECT_TRUE(b.IsAtMost(7).holds);
  EXPECT_FALSE(b.IsAtMost(6).holds);

  for (int k = 2; k <= 8; ++k) {
    TheoremBound one(Constants(k, kDp), 1, Rational(3));
    EXPECT_TRUE(one.IsAtMost(1).holds);
  }
  TheoremBound unit(Constants(4, kDp), 10, Rational(1));
  // 2^(-11/2) * 10^2 ~ 2.2097
  EXPECT_TRUE(unit.IsAtMost(3).holds);
  EXPECT_FALSE(unit.IsAtMost(2).holds);
}

TEST(BoundsTest, IntervalModeAgreesWithExact) {
  for (int k = 2; k <= 6; ++k) {
    BoundConstants c = Constants(k, kDp);
    for (std::uint64_t n : {1u, 5u, 17u, 100u}) {
      for (const Rational& m : {Rational(1), Rational(7, 5), Rational(3)}) {
        TheoremBound b(c, n, m);
        for (std::uint64_t count : {1u, 2u, 3u, 10u, 50u, 1000u}) {
          BoundComparison exact = b.IsAtMost(count);
          BoundComparison interval = b.IsAtMost(count, 0);
          ASSERT_EQ(exact.mode, ComparisonMode::kExactIntegerPower);
          ASSERT_EQ(interval.mode, ComparisonMode::kIntervalMpfr);
          if (interval.decided) EXPECT_EQ(exact.holds, interval.holds);
        }
      }
    }
  }
}

}  // namespace
}  // namespace sumfold
