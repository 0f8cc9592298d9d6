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

#ifndef SUMFOLD_BOUNDS_H_
#define SUMFOLD_BOUNDS_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "sumfold/rational.h"

namespace sumfold {

// Binary tree describing how k is split as k1 + k2 at every level. Leaves
// have k == 1. Subtrees are immutable and may be shared.
class SplitTree {
 public:
  static SplitTree Leaf();
  static SplitTree Join(const SplitTree& left, const SplitTree& right);

  int k() const noexcept { return k_; }
  bool is_leaf() const noexcept { return left_ == nullptr; }
  // Only valid for internal nodes.
  const SplitTree& left() const { return *left_; }
  const SplitTree& right() const { return *right_; }

  // "1" for a leaf, "(L+R)" otherwise.
  std::string ToString() const;

 private:
  SplitTree() = default;

  int k_ = 1;
  std::shared_ptr<const SplitTree> left_;
  std::shared_ptr<const SplitTree> right_;
};

enum class SplitKind {
  kBalanced,     // k1 = ceil(k/2), k2 = floor(k/2)
  kPowersOfTwo,  // k1 = largest power of two below k, k2 = k - k1
  kDpOptimal,    // maximizes the exponent, ties toward the balanced split
  kExplicit,     // user-supplied tree
};

struct SplitStrategy {
  SplitKind kind = SplitKind::kDpOptimal;
  // Explicit tree text, e.g. "(1+(1+1))" or "2+2". Leaves j > 1 are expanded
  // with the dp-optimal split.
  std::string explicit_tree;

  // "balanced", "pow2", "dp" or "explicit:<tree>". Throws UsageError.
  static SplitStrategy Parse(std::string_view text);
  std::string Name() const;
};

// Split tree for k (k >= 1) under the strategy. Throws UsageError on k < 1 or
// on an explicit tree that is malformed or does not sum to k.
SplitTree BuildSplitTree(int k, const SplitStrategy& strategy);

// Exact constants of the lower bound |kA| >= C_k * |A|^psi / M^d, where
// C_k = 2^log2_c.
struct BoundConstants {
  int k = 1;
  Rational psi;
  Rational d;
  Rational log2_c;
  SplitTree split = SplitTree::Leaf();
};

// Evaluates the constant recursion over a split tree:
//   psi = (1 + psi1 + psi2) / 2
//   d = (3 (d1 + d2) + 2 (psi1 + psi2)) / 2
//   log2_c = (log2_c1 + log2_c2 - (1 + d1 + d2 + psi1 + psi2)) / 2
// from (psi, d, C) = (1, 0, 1) at leaves.
BoundConstants ConstantsForTree(const SplitTree& tree);
BoundConstants Constants(int k, const SplitStrategy& strategy);
Rational Psi(int k, const SplitStrategy& strategy);

// The exponent floor for k: z = floor(log2 k) and (z + 2) / 2, together with
// the exact certificate 2^(z+2) >= 2k that (z + 2) / 2 >= log4(2k).
struct FloorExponent {
  int z = 0;
  Rational value;
  bool dominates_log4_2k = false;
};
FloorExponent FloorExponentFor(int k);

// Exact decision of x >= log4(2k) for a dyadic rational x >= 0.
bool AtLeastLog4TwoK(const Rational& x, int k);
// Exact rendering of log4(m) when it is rational ("3/2"), otherwise a
// decimal with six places.
std::string Log4String(std::uint64_t m);

enum class ComparisonMode {
  kExactIntegerPower,  // both sides raised to a common power of two
  kIntervalMpfr,       // outward-rounded log2 intervals
};
std::string_view ComparisonModeName(ComparisonMode mode);

struct BoundComparison {
  bool holds = false;
  // False only when interval arithmetic could not separate the two sides.
  bool decided = true;
  ComparisonMode mode = ComparisonMode::kExactIntegerPower;
};

// The quantity C_k * n^psi / M^d, kept symbolic so it can be compared
// exactly against integers.
class TheoremBound {
 public:
  // Requires n >= 1 and M >= 1.
  TheoremBound(const BoundConstants& constants, std::uint64_t n, Rational m);

  const Rational& log2_c() const { return log2_c_; }
  const Rational& psi() const { return psi_; }
  const Rational& d() const { return d_; }
  std::uint64_t n() const { return n_; }
  const Rational& m() const { return m_; }

  // Decides count >= bound. The exact route is used unless the integer powers
  // would exceed `max_exact_bits`.
  BoundComparison IsAtMost(std::uint64_t count,
                           std::uint64_t max_exact_bits = 1u << 24) const;

  // Floating approximations, for reports only.
  double ApproxLog2() const;
  double Approx() const;

 private:
  Rational log2_c_;
  Rational psi_;
  Rational d_;
  std::uint64_t n_;
  Rational m_;
};

}  // namespace sumfold

#endif  // SUMFOLD_BOUNDS_H_
