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

#include "sumfold/certificate.h"

#include <algorithm>
#include <queue>
#include <utility>

#include "sumfold/errors.h"
#include "sumfold/set_io.h"

namespace sumfold {

namespace {

Rational FromCount(std::uint64_t v) {
  return Rational(mpz_class(static_cast<unsigned long>(v)));
}

std::string Count(std::uint64_t v) { return std::to_string(v); }

}  // namespace

Rational DoublingM(const FiniteSet& a) {
  return FromCount(ProductSet(a, a).size()) / FromCount(a.size());
}

std::vector<SlopeClass> SlopeClasses(const FiniteSet& a) {
  struct Entry {
    Rational slope;
    Point point;
  };
  std::vector<Entry> entries;
  entries.reserve(a.size() * a.size());
  for (const Rational& x : a) {
    for (const Rational& y : a) entries.push_back({y / x, {x, y}});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& l, const Entry& r) {
    if (auto c = l.slope <=> r.slope; c != 0) return c < 0;
    return l.point < r.point;
  });

  std::vector<SlopeClass> classes;
  std::size_t i = 0;
  while (i < entries.size()) {
    std::size_t j = i;
    std::vector<Point> pts;
    while (j < entries.size() && entries[j].slope == entries[i].slope) {
      pts.push_back(entries[j].point);
      ++j;
    }
    classes.push_back({entries[i].slope, PlanarSet::FromPoints(std::move(pts))});
    i = j;
  }
  return classes;
}

PopularSlopes SelectPopularSlopes(std::span<const SlopeClass> classes,
                                  std::size_t n, const Rational& m) {
  PopularSlopes out;
  out.threshold = FromCount(n) / (Rational(2) * m * m);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (FromCount(classes[i].size()) >= out.threshold) {
      out.indices.push_back(i);
      out.mass += classes[i].size();
    }
  }
  auto nn = static_cast<unsigned __int128>(n) * n;
  if (2 * static_cast<unsigned __int128>(out.mass) < nn) {
    throw InternalInconsistency(
        "popular_mass", "popular mass " + Count(out.mass) + " < n^2/2 with n = " +
                            Count(n));
  }
  if (2 * out.indices.size() < n) {
    throw InternalInconsistency(
        "popular_count", Count(out.indices.size()) +
                             " popular slopes < n/2 with n = " + Count(n));
  }
  return out;
}

PlanarSet ProjectOntoVerticalLine(const PlanarSet& points, const Rational& x0) {
  std::vector<Point> out;
  out.reserve(points.size());
  for (const Point& p : points) out.push_back({x0, p.y});
  return PlanarSet::FromPoints(std::move(out));
}

std::vector<PlanarSet> BuildBlocks(std::span<const SlopeClass> popular,
                                   const FiniteSet& a, int k1, int k2) {
  if (popular.empty()) throw UsageError("no popular slopes to build blocks from");
  if (k1 < 1 || k2 < 1) throw UsageError("block split needs k1, k2 >= 1");
  std::size_t m = popular.size();
  std::vector<PlanarSet> blocks;
  blocks.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    PlanarSet next = j + 1 < m ? popular[j + 1].points
                               : ProjectOntoVerticalLine(popular[j].points, a.min());
    blocks.push_back(PlanarSum(PlanarKFold(popular[j].points, k1),
                               PlanarKFold(next, k2)));
  }
  return blocks;
}

DisjointnessResult CheckDisjoint(std::span<const PlanarSet> blocks) {
  struct Cursor {
    std::size_t block;
    std::size_t pos;
  };
  auto greater = [&](const Cursor& l, const Cursor& r) {
    const Point& a = blocks[l.block][l.pos];
    const Point& b = blocks[r.block][r.pos];
    if (auto c = a <=> b; c != 0) return c > 0;
    return l.block > r.block;
  };
  std::priority_queue<Cursor, std::vector<Cursor>, decltype(greater)> heap(
      greater);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (!blocks[b].empty()) heap.push({b, 0});
  }
  DisjointnessResult result;
  std::optional<Cursor> prev;
  while (!heap.empty()) {
    Cursor cur = heap.top();
    heap.pop();
    if (prev && blocks[prev->block][prev->pos] == blocks[cur.block][cur.pos]) {
      result.disjoint = false;
      result.witness = DisjointnessWitness{blocks[cur.block][cur.pos],
                                           std::min(prev->block, cur.block),
                                           std::max(prev->block, cur.block)};
      return result;
    }
    prev = cur;
    if (cur.pos + 1 < blocks[cur.block].size()) {
      heap.push({cur.block, cur.pos + 1});
    }
  }
  return result;
}

bool CheckProductFormula(const PlanarSet& block, const PlanarSet& first,
                         const PlanarSet& second, int k1, int k2) {
  auto lhs = static_cast<unsigned __int128>(block.size());
  auto f = KFoldSum(ProjectY(first), k1).size();
  auto s = KFoldSum(ProjectY(second), k2).size();
  return lhs == static_cast<unsigned __int128>(f) * s;
}

bool CheckContainment(const PlanarSet& block, const FiniteSet& ka) {
  return std::all_of(block.begin(), block.end(), [&](const Point& p) {
    return ka.Contains(p.x) && ka.Contains(p.y);
  });
}

bool CheckProjectionDoubling(const SlopeClass& cls, std::size_t aa_size,
                             std::size_t n, const Rational& m) {
  FiniteSet b = ProjectY(cls.points);
  std::size_t bb = ProductSet(b, b).size();
  std::string where = "projection_doubling[slope " + cls.slope.ToString() + "]";
  if (bb > aa_size) {
    throw InternalInconsistency(where, "|BB| = " + Count(bb) + " > |AA| = " +
                                           Count(aa_size));
  }
  Rational m_n = m * FromCount(n);
  if (FromCount(aa_size) > m_n) {
    throw InternalInconsistency(where, "|AA| = " + Count(aa_size) +
                                           " > M|A| = " + m_n.ToString());
  }
  Rational rhs = Rational(2) * m * m * m * FromCount(b.size());
  if (m_n > rhs) {
    throw InternalInconsistency(where, "M|A| = " + m_n.ToString() +
                                           " > 2M^3|B| = " + rhs.ToString());
  }
  return true;
}

bool CheckProjectionDoubling(const SlopeClass& cls, const FiniteSet& a,
                             const Rational& m) {
  return CheckProjectionDoubling(cls, ProductSet(a, a).size(), a.size(), m);
}

Certificate Certify(const FiniteSet& a, int k, const SplitStrategy& strategy,
                    const CertifyOptions& options) {
  if (k < 2) {
    throw UsageError("certify needs k >= 2, got " + std::to_string(k));
  }
  Certificate cert;
  cert.n = a.size();
  cert.k = k;
  cert.bound_constants = Constants(k, strategy);
  const SplitTree& root = cert.bound_constants.split;
  cert.k1 = root.left().k();
  cert.k2 = root.right().k();

  FiniteSet aa = ProductSet(a, a);
  cert.product_size = aa.size();
  Rational minimal_m = FromCount(aa.size()) / FromCount(a.size());
  cert.m = minimal_m;
  if (options.m_override) {
    if (*options.m_override < minimal_m) {
      throw UsageError("M = " + options.m_override->ToString() +
                       " is below |AA|/|A| = " + minimal_m.ToString());
    }
    cert.m = *options.m_override;
  }

  cert.quotient_size = QuotientSet(a, a).size();
  if (FromCount(cert.quotient_size) > cert.m * cert.m * FromCount(cert.n)) {
    throw InternalInconsistency(
        "ruzsa", "|A/A| = " + Count(cert.quotient_size) + " > M^2|A|");
  }

  std::vector<SlopeClass> classes = SlopeClasses(a);
  std::uint64_t total = 0;
  for (const SlopeClass& c : classes) total += c.size();
  if (total != static_cast<std::uint64_t>(cert.n) * cert.n ||
      classes.size() != cert.quotient_size) {
    throw InternalInconsistency("slope_classes",
                                "classes do not partition A x A by A/A");
  }

  PopularSlopes popular = SelectPopularSlopes(classes, cert.n, cert.m);
  cert.threshold = popular.threshold;
  cert.popular_mass = popular.mass;
  cert.popular_count = popular.indices.size();
  std::vector<SlopeClass> ordered;
  ordered.reserve(popular.indices.size());
  for (std::size_t i : popular.indices) {
    ordered.push_back(classes[i]);
    cert.popular_slopes.push_back(classes[i].slope);
  }
  for (const SlopeClass& c : ordered) {
    CheckProjectionDoubling(c, aa.size(), cert.n, cert.m);
  }

  FiniteSet ka = KFoldSum(a, k);
  cert.ka_size = ka.size();

  std::vector<PlanarSet> blocks = BuildBlocks(ordered, a, cert.k1, cert.k2);
  cert.product_formula_ok = true;
  cert.containment_ok = true;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const PlanarSet& next =
        j + 1 < ordered.size()
            ? ordered[j + 1].points
            : ProjectOntoVerticalLine(ordered[j].points, a.min());
    BlockRecord rec;
    rec.j = j + 1;
    rec.slope_j = ordered[j].slope;
    rec.proj_size_j = ordered[j].size();
    rec.block_size = blocks[j].size();
    cert.sum_of_blocks += rec.block_size;
    cert.blocks.push_back(std::move(rec));
    if (!CheckProductFormula(blocks[j], ordered[j].points, next, cert.k1,
                             cert.k2)) {
      cert.product_formula_ok = false;
    }
    if (!CheckContainment(blocks[j], ka)) cert.containment_ok = false;
  }

  DisjointnessResult disjoint = CheckDisjoint(blocks);
  cert.disjoint_ok = disjoint.disjoint;
  cert.disjoint_witness = disjoint.witness;

  auto ka_sq = static_cast<unsigned __int128>(cert.ka_size) * cert.ka_size;
  cert.chain_ok = ka_sq >= cert.sum_of_blocks;

  cert.theorem_bound.emplace(cert.bound_constants, cert.n, cert.m);
  cert.comparison = cert.theorem_bound->IsAtMost(cert.ka_size);
  cert.theorem_holds = cert.comparison.holds;
  return cert;
}

nlohmann::ordered_json BoundConstantsToJson(const BoundConstants& c) {
  nlohmann::ordered_json j;
  j["k"] = c.k;
  j["split"] = c.split.ToString();
  j["psi"] = RationalJson(c.psi);
  j["d"] = RationalJson(c.d);
  j["log2_c"] = RationalJson(c.log2_c);
  return j;
}

namespace {

std::string Parenthesize(const std::string& s) {
  return s.find('/') == std::string::npos && s.front() != '-' ? s
                                                              : "(" + s + ")";
}

nlohmann::ordered_json TheoremBoundJson(const TheoremBound& b) {
  nlohmann::ordered_json j;
  j["expression"] = "2^" + Parenthesize(b.log2_c().ToString()) + " * " +
                    std::to_string(b.n()) + "^" +
                    Parenthesize(b.psi().ToString()) + " / " +
                    Parenthesize(b.m().ToString()) + "^" +
                    Parenthesize(b.d().ToString());
  j["log2_c"] = RationalJson(b.log2_c());
  j["n"] = b.n();
  j["psi"] = RationalJson(b.psi());
  j["M"] = RationalJson(b.m());
  j["d"] = RationalJson(b.d());
  j["approx"] = b.Approx();
  return j;
}

}  // namespace

nlohmann::ordered_json CertificateToJson(const Certificate& cert) {
  nlohmann::ordered_json j;
  j["n"] = cert.n;
  j["k"] = cert.k;
  j["k1"] = cert.k1;
  j["k2"] = cert.k2;
  j["M"] = RationalJson(cert.m);
  j["product_set_size"] = cert.product_size;
  j["quotient_size"] = cert.quotient_size;
  j["threshold"] = RationalJson(cert.threshold);
  nlohmann::ordered_json slopes = nlohmann::ordered_json::array();
  for (const Rational& s : cert.popular_slopes) slopes.push_back(RationalJson(s));
  j["popular_slopes"] = std::move(slopes);
  j["m"] = cert.popular_count;
  j["popular_mass"] = cert.popular_mass;
  nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
  for (const BlockRecord& b : cert.blocks) {
    nlohmann::ordered_json r;
    r["j"] = b.j;
    r["slope_j"] = RationalJson(b.slope_j);
    r["proj_size_j"] = b.proj_size_j;
    r["block_size"] = b.block_size;
    blocks.push_back(std::move(r));
  }
  j["blocks"] = std::move(blocks);
  j["disjoint_ok"] = cert.disjoint_ok;
  if (cert.disjoint_witness) {
    const DisjointnessWitness& w = *cert.disjoint_witness;
    j["disjoint_witness"] = {
        {"point", {RationalJson(w.point.x), RationalJson(w.point.y)}},
        {"blocks", {w.first_block + 1, w.second_block + 1}}};
  } else {
    j["disjoint_witness"] = nullptr;
  }
  j["product_formula_ok"] = cert.product_formula_ok;
  j["containment_ok"] = cert.containment_ok;
  j["projection_doubling_ok"] = true;
  j["chain_ok"] = cert.chain_ok;
  j["sum_of_blocks"] = cert.sum_of_blocks;
  j["kA_size"] = cert.ka_size;
  j["bound_constants"] = BoundConstantsToJson(cert.bound_constants);
  if (cert.theorem_bound) {
    j["theorem_bound"] = TheoremBoundJson(*cert.theorem_bound);
  } else {
    j["theorem_bound"] = nullptr;
  }
  j["comparison_mode"] = std::string(ComparisonModeName(cert.comparison.mode));
  j["comparison_decided"] = cert.comparison.decided;
  j["theorem_holds"] = cert.theorem_holds;
  return j;
}

}  // namespace sumfold
