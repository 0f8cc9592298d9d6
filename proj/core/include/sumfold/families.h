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

#ifndef SUMFOLD_FAMILIES_H_
#define SUMFOLD_FAMILIES_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sumfold/rational.h"
#include "sumfold/setops.h"

namespace sumfold {

enum class FamilyKind { kAp, kGp, kGp2d, kRandomSubset, kUnion };

enum class RandomSource {
  kIntegerRange,  // {1, ..., range_max}
  kGeometric,     // gp(start, ratio, range_max)
};

// Parameters of a structured test set. Unused fields are ignored by kinds
// that do not need them.
struct FamilySpec {
  FamilyKind kind = FamilyKind::kGp;
  Rational start{1};
  Rational step{1};    // ap
  Rational ratio{2};   // gp, gp2d, random-subset over a gp
  Rational ratio2{3};  // gp2d
  int n = 1;           // ap, gp, random-subset sample size
  int n1 = 1;          // gp2d
  int n2 = 1;          // gp2d
  RandomSource source = RandomSource::kIntegerRange;
  int range_max = 200;
  std::uint64_t seed = 0;
  std::shared_ptr<const FamilySpec> left;   // union
  std::shared_ptr<const FamilySpec> right;  // union

  // Compact text form, e.g. "gp:n=8,ratio=2", "gp2d:n1=3,n2=3,ratio=2,
  // ratio2=3", "random:n=10,source=range,range_max=200,seed=7",
  // "union(gp:n=4|ap:n=3,start=100)". Throws UsageError.
  static FamilySpec Parse(std::string_view text);
  std::string ToString() const;
};

std::string_view FamilyKindName(FamilyKind kind);

// Throws UsageError naming the violated precondition.
void Validate(const FamilySpec& spec);

// Throws UsageError on invalid specs, on gp2d ratios that are multiplicatively
// dependent, and on union parts that overlap.
FiniteSet Generate(const FamilySpec& spec);

// Closed-form cardinalities; std::nullopt means no closed form is known.
struct KnownStats {
  std::optional<std::uint64_t> product_set;  // |AA|
  std::optional<std::uint64_t> kfold_sum;    // |kA|
};
KnownStats KnownStatsFor(const FamilySpec& spec, int k);

// True iff no (i, j) != (0, 0) has r^i == s^j. Both ratios must be positive
// and different from 1. Throws UsageError when a numerator or denominator
// cannot be factored (a composite cofactor above 10^12 with no small
// factor).
bool MultiplicativelyIndependent(const Rational& r, const Rational& s);

// Seeded sampling primitive shared by the random families: a uniform
// k-subset of {0, ..., n-1} by Floyd's algorithm over std::mt19937_64 with
// rejection sampling for bounded draws. Bit-identical across platforms.
std::vector<std::uint64_t> SampleIndices(std::uint64_t n, std::uint64_t k,
                                         std::uint64_t seed);

}  // namespace sumfold

#endif  // SUMFOLD_FAMILIES_H_
