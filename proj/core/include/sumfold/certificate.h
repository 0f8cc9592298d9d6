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

// Runs the slope-decomposition argument behind the k-fold sum bound on a
// concrete set and checks every step exactly.
//
// For A with |AA| <= M|A|, the points of A x A are grouped by the slope of
// the line through the origin they lie on. Slopes whose class holds at least
// |A| / (2M^2) points are "popular"; with s_1 < ... < s_m the popular slopes
// and A_j the class of s_j, the blocks
//
//   k1 A_j + k2 A_{j+1}      (j < m)
//   k1 A_m + k2 A_{m+1}      (A_{m+1} = A_m moved onto the line x = min A)
//
// sit inside (kA) x (kA) and are pairwise disjoint, so |kA|^2 bounds the
// sum of their sizes. Each block size factors into two one-dimensional
// k-fold sums of projections, which is where the recursion on k enters.

#ifndef SUMFOLD_CERTIFICATE_H_
#define SUMFOLD_CERTIFICATE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sumfold/bounds.h"
#include "sumfold/rational.h"
#include "sumfold/setops.h"

namespace sumfold {

struct SlopeClass {
  Rational slope;
  PlanarSet points;  // subset of A x A on y = slope * x

  std::size_t size() const noexcept { return points.size(); }
};

// Exact |AA| / |A|.
Rational DoublingM(const FiniteSet& a);

// One class per element of A/A, ordered by increasing slope.
std::vector<SlopeClass> SlopeClasses(const FiniteSet& a);

struct PopularSlopes {
  Rational threshold;                // n / (2 M^2)
  std::vector<std::size_t> indices;  // into the class list, increasing slope
  std::uint64_t mass = 0;            // sum of popular class sizes
};

// Selects classes with size >= n / (2 M^2). Throws InternalInconsistency if
// the popular mass is below n^2 / 2 or fewer than n / 2 slopes qualify.
PopularSlopes SelectPopularSlopes(std::span<const SlopeClass> classes,
                                  std::size_t n, const Rational& m);

// {(x0, y) : (x, y) in points}: the class moved horizontally onto x = x0.
PlanarSet ProjectOntoVerticalLine(const PlanarSet& points, const Rational& x0);

// Blocks for the ordered popular classes; see the file comment. Throws
// UsageError if `popular` is empty or k1, k2 < 1.
std::vector<PlanarSet> BuildBlocks(std::span<const SlopeClass> popular,
                                   const FiniteSet& a, int k1, int k2);

struct DisjointnessWitness {
  Point point;
  std::size_t first_block = 0;
  std::size_t second_block = 0;
};

struct DisjointnessResult {
  bool disjoint = true;
  std::optional<DisjointnessWitness> witness;  // set iff !disjoint
};

// Exhaustive pairwise-disjointness check by a k-way merge of the sorted
// blocks. Reports the smallest colliding point.
DisjointnessResult CheckDisjoint(std::span<const PlanarSet> blocks);

// |block| == |k1 Pi(first)| * |k2 Pi(second)|, Pi the projection to y.
bool CheckProductFormula(const PlanarSet& block, const PlanarSet& first,
                         const PlanarSet& second, int k1, int k2);

// Every point of `block` has both coordinates in kA.
bool CheckContainment(const PlanarSet& block, const FiniteSet& ka);

// |B B| <= |AA| <= M |A| <= 2 M^3 |B| for B = Pi(class). Throws
// InternalInconsistency naming the failed link; returns true otherwise.
bool CheckProjectionDoubling(const SlopeClass& cls, std::size_t aa_size,
                             std::size_t n, const Rational& m);
bool CheckProjectionDoubling(const SlopeClass& cls, const FiniteSet& a,
                             const Rational& m);

struct BlockRecord {
  std::size_t j = 0;  // 1-based
  Rational slope_j;
  std::size_t proj_size_j = 0;
  std::uint64_t block_size = 0;
};

struct Certificate {
  std::size_t n = 0;
  int k = 0;
  int k1 = 0;
  int k2 = 0;
  Rational m;
  std::size_t product_size = 0;
  std::size_t quotient_size = 0;
  Rational threshold;
  std::vector<Rational> popular_slopes;
  std::size_t popular_count = 0;
  std::uint64_t popular_mass = 0;
  std::vector<BlockRecord> blocks;
  bool disjoint_ok = false;
  bool product_formula_ok = false;
  bool containment_ok = false;
  bool chain_ok = false;
  std::optional<DisjointnessWitness> disjoint_witness;
  std::uint64_t sum_of_blocks = 0;
  std::uint64_t ka_size = 0;
  BoundConstants bound_constants;
  std::optional<TheoremBound> theorem_bound;
  BoundComparison comparison;
  bool theorem_holds = false;

  bool AllChecksPass() const {
    return disjoint_ok && product_formula_ok && containment_ok && chain_ok &&
           theorem_holds;
  }
};

struct CertifyOptions {
  // Any admissible M >= |AA|/|A|; defaults to the minimal one.
  std::optional<Rational> m_override;
};

// Runs every step on (A, k) with the root split of the strategy's tree.
// Throws UsageError for k < 2 or an inadmissible M override, and
// InternalInconsistency when a guaranteed inequality fails. Check outcomes
// that are recorded as flags (disjointness, product formula, containment,
// chain, final bound) are reported in the certificate instead.
Certificate Certify(const FiniteSet& a, int k, const SplitStrategy& strategy,
                    const CertifyOptions& options = {});

// Deterministic JSON document; rationals as "p/q" strings.
nlohmann::ordered_json CertificateToJson(const Certificate& cert);
nlohmann::ordered_json BoundConstantsToJson(const BoundConstants& c);

}  // namespace sumfold

#endif  // SUMFOLD_CERTIFICATE_H_
