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

#include <algorithm>
#include <string>

#include "sumfold/errors.h"

namespace sumfold {

// Builds sets from vectors already known to be canonical.
class SetBuilder {
 public:
  static FiniteSet Adopt(std::vector<Rational> sorted) {
    return FiniteSet(std::move(sorted));
  }
};

namespace {

template <typename T>
void SortUnique(std::vector<T>& values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
}

// All pairwise combinations, canonicalized. Inputs are positive, so the
// result of any of the supported operations is positive as well.
template <typename Op>
FiniteSet Combine(const FiniteSet& a, const FiniteSet& b, Op op) {
  std::vector<Rational> out;
  out.reserve(a.size() * b.size());
  for (const Rational& x : a) {
    for (const Rational& y : b) out.push_back(op(x, y));
  }
  SortUnique(out);
  return SetBuilder::Adopt(std::move(out));
}

void RequirePositiveK(int k, const char* what) {
  if (k < 1) {
    throw UsageError(std::string(what) + ": k must be >= 1, got " +
                     std::to_string(k));
  }
}

}  // namespace

FiniteSet FiniteSet::FromElements(std::vector<Rational> elements) {
  if (elements.empty()) throw UsageError("set must be nonempty");
  for (const Rational& r : elements) {
    if (r.Sign() <= 0) {
      throw UsageError("set elements must be positive, got " + r.ToString());
    }
  }
  SortUnique(elements);
  return FiniteSet(std::move(elements));
}

bool FiniteSet::Contains(const Rational& value) const {
  return std::binary_search(elements_.begin(), elements_.end(), value);
}

PlanarSet PlanarSet::FromPoints(std::vector<Point> points) {
  SortUnique(points);
  PlanarSet p;
  p.points_ = std::move(points);
  return p;
}

bool PlanarSet::Contains(const Point& p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

FiniteSet Sumset(const FiniteSet& a, const FiniteSet& b) {
  return Combine(a, b, [](const Rational& x, const Rational& y) { return x + y; });
}

FiniteSet ProductSet(const FiniteSet& a, const FiniteSet& b) {
  return Combine(a, b, [](const Rational& x, const Rational& y) { return x * y; });
}

FiniteSet QuotientSet(const FiniteSet& a, const FiniteSet& b) {
  return Combine(a, b, [](const Rational& x, const Rational& y) { return x / y; });
}

FiniteSet KFoldSum(const FiniteSet& a, int k) {
  RequirePositiveK(k, "k-fold sum");
  FiniteSet acc = a;
  for (int i = 1; i < k; ++i) acc = Sumset(acc, a);
  return acc;
}

FiniteSet KFoldProduct(const FiniteSet& a, int k) {
  RequirePositiveK(k, "k-fold product");
  FiniteSet acc = a;
  for (int i = 1; i < k; ++i) acc = ProductSet(acc, a);
  return acc;
}

FiniteSet Dilate(const FiniteSet& a, const Rational& lambda) {
  if (lambda.Sign() <= 0) throw UsageError("dilation factor must be positive");
  std::vector<Rational> out;
  out.reserve(a.size());
  for (const Rational& x : a) out.push_back(x * lambda);
  // Multiplication by a positive constant preserves order.
  return SetBuilder::Adopt(std::move(out));
}

PlanarSet PlanarSum(const PlanarSet& p, const PlanarSet& q) {
  std::vector<Point> out;
  out.reserve(p.size() * q.size());
  for (const Point& u : p) {
    for (const Point& v : q) out.push_back(u + v);
  }
  return PlanarSet::FromPoints(std::move(out));
}

PlanarSet PlanarKFold(const PlanarSet& p, int k) {
  RequirePositiveK(k, "planar k-fold sum");
  PlanarSet acc = p;
  for (int i = 1; i < k; ++i) acc = PlanarSum(acc, p);
  return acc;
}

FiniteSet ProjectY(const PlanarSet& p) {
  if (p.empty()) throw UsageError("cannot project an empty planar set");
  std::vector<Rational> ys;
  ys.reserve(p.size());
  for (const Point& pt : p) ys.push_back(pt.y);
  return FiniteSet::FromElements(std::move(ys));
}

PlanarSet Cartesian(const FiniteSet& a, const FiniteSet& b) {
  std::vector<Point> out;
  out.reserve(a.size() * b.size());
  for (const Rational& x : a) {
    for (const Rational& y : b) out.push_back({x, y});
  }
  return PlanarSet::FromPoints(std::move(out));
}

}  // namespace sumfold
