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

#ifndef SUMFOLD_SETOPS_H_
#define SUMFOLD_SETOPS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "sumfold/rational.h"

namespace sumfold {

// Nonempty, strictly increasing set of positive rationals.
class FiniteSet {
 public:
  // Sorts and deduplicates. Throws UsageError if `elements` is empty or holds
  // a nonpositive value.
  static FiniteSet FromElements(std::vector<Rational> elements);

  std::size_t size() const noexcept { return elements_.size(); }
  std::span<const Rational> elements() const noexcept { return elements_; }
  const Rational& operator[](std::size_t i) const { return elements_[i]; }
  const Rational& min() const { return elements_.front(); }
  const Rational& max() const { return elements_.back(); }
  bool Contains(const Rational& value) const;

  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;

 private:
  explicit FiniteSet(std::vector<Rational> sorted)
      : elements_(std::move(sorted)) {}
  friend class SetBuilder;

  std::vector<Rational> elements_;
};

// Strictly lex-increasing set of points. May be empty.
class PlanarSet {
 public:
  PlanarSet() = default;
  static PlanarSet FromPoints(std::vector<Point> points);

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  std::span<const Point> points() const noexcept { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  bool Contains(const Point& p) const;

  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  friend bool operator==(const PlanarSet&, const PlanarSet&) = default;

 private:
  std::vector<Point> points_;
};

// {a + b}.
FiniteSet Sumset(const FiniteSet& a, const FiniteSet& b);
// {a * b}.
FiniteSet ProductSet(const FiniteSet& a, const FiniteSet& b);
// {a / b}.
FiniteSet QuotientSet(const FiniteSet& a, const FiniteSet& b);

// A + A + ... + A with k summands, folded from the left. Throws UsageError
// for k == 0.
FiniteSet KFoldSum(const FiniteSet& a, int k);
// A A ... A with k factors. Throws UsageError for k == 0.
FiniteSet KFoldProduct(const FiniteSet& a, int k);

// {lambda * a}; lambda must be positive.
FiniteSet Dilate(const FiniteSet& a, const Rational& lambda);

// Componentwise vector sumset.
PlanarSet PlanarSum(const PlanarSet& p, const PlanarSet& q);
// P + P + ... + P with k summands. Throws UsageError for k == 0.
PlanarSet PlanarKFold(const PlanarSet& p, int k);

// Set of y-coordinates. Throws UsageError on an empty set.
FiniteSet ProjectY(const PlanarSet& p);

// A x B.
PlanarSet Cartesian(const FiniteSet& a, const FiniteSet& b);

}  // namespace sumfold

#endif  // SUMFOLD_SETOPS_H_
