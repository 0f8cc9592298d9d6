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
#include <cctype>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <vector>

#include <mpfr.h>

#include "sumfold/errors.h"

namespace sumfold {

SplitTree SplitTree::Leaf() { return SplitTree(); }

SplitTree SplitTree::Join(const SplitTree& left, const SplitTree& right) {
  SplitTree t;
  t.k_ = left.k_ + right.k_;
  t.left_ = std::make_shared<const SplitTree>(left);
  t.right_ = std::make_shared<const SplitTree>(right);
  return t;
}

std::string SplitTree::ToString() const {
  if (is_leaf()) return "1";
  return "(" + left_->ToString() + "+" + right_->ToString() + ")";
}

SplitStrategy SplitStrategy::Parse(std::string_view text) {
  SplitStrategy s;
  if (text == "balanced") {
    s.kind = SplitKind::kBalanced;
  } else if (text == "pow2") {
    s.kind = SplitKind::kPowersOfTwo;
  } else if (text == "dp") {
    s.kind = SplitKind::kDpOptimal;
  } else if (text.starts_with("explicit:")) {
    s.kind = SplitKind::kExplicit;
    s.explicit_tree = std::string(text.substr(9));
    if (s.explicit_tree.empty()) throw UsageError("explicit split needs a tree");
  } else {
    throw UsageError("unknown split strategy '" + std::string(text) +
                     "' (expected balanced, pow2, dp or explicit:<tree>)");
  }
  return s;
}

std::string SplitStrategy::Name() const {
  switch (kind) {
    case SplitKind::kBalanced:
      return "balanced";
    case SplitKind::kPowersOfTwo:
      return "pow2";
    case SplitKind::kDpOptimal:
      return "dp";
    case SplitKind::kExplicit:
      return "explicit:" + explicit_tree;
  }
  return "dp";
}

namespace {

Rational Half(const Rational& r) { return r * Rational(1, 2); }

// Memoized dp-optimal exponents and trees. Guarded so concurrent callers see
// a consistent table.
class DpTable {
 public:
  SplitTree Tree(int k) {
    std::lock_guard<std::mutex> lock(mu_);
    Extend(k);
    return trees_[k];
  }

 private:
  void Extend(int k) {
    if (trees_.empty()) {
      psi_.push_back(Rational());  // unused slot for k = 0
      trees_.push_back(SplitTree::Leaf());
      psi_.push_back(Rational(1));
      trees_.push_back(SplitTree::Leaf());
    }
    for (int n = static_cast<int>(trees_.size()); n <= k; ++n) {
      int best_k1 = 0;
      Rational best;
      // k1 >= k2, most balanced first; strict improvement keeps the first.
      for (int k1 = (n + 1) / 2; k1 < n; ++k1) {
        Rational candidate = Half(Rational(1) + psi_[k1] + psi_[n - k1]);
        if (best_k1 == 0 || candidate > best) {
          best = candidate;
          best_k1 = k1;
        }
      }
      psi_.push_back(best);
      trees_.push_back(SplitTree::Join(trees_[best_k1], trees_[n - best_k1]));
    }
  }

  std::mutex mu_;
  std::vector<Rational> psi_;
  std::vector<SplitTree> trees_;
};

DpTable& GlobalDpTable() {
  static DpTable table;
  return table;
}

SplitTree BalancedTree(int k) {
  if (k == 1) return SplitTree::Leaf();
  int k1 = (k + 1) / 2;
  return SplitTree::Join(BalancedTree(k1), BalancedTree(k - k1));
}

SplitTree PowersOfTwoTree(int k) {
  if (k == 1) return SplitTree::Leaf();
  int k1 = static_cast<int>(std::bit_floor(static_cast<unsigned>(k - 1)));
  return SplitTree::Join(PowersOfTwoTree(k1), PowersOfTwoTree(k - k1));
}

// tree := term ('+' term)? ; term := INT | '(' tree ')'
class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  SplitTree ParseAll() {
    SplitTree t = ParseTree();
    SkipSpace();
    if (pos_ != text_.size()) Fail("unexpected trailing input");
    return t;
  }

 private:
  SplitTree ParseTree() {
    SplitTree left = ParseTerm();
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == '+') {
      ++pos_;
      SplitTree right = ParseTerm();
      SkipSpace();
      if (pos_ < text_.size() && text_[pos_] == '+') {
        Fail("splits are binary; parenthesize, e.g. (1+1)+2");
      }
      return SplitTree::Join(left, right);
    }
    return left;
  }

  SplitTree ParseTerm() {
    SkipSpace();
    if (pos_ >= text_.size()) Fail("unexpected end of input");
    if (text_[pos_] == '(') {
      ++pos_;
      SplitTree t = ParseTree();
      SkipSpace();
      if (pos_ >= text_.size() || text_[pos_] != ')') Fail("expected ')'");
      ++pos_;
      return t;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) Fail("expected a positive integer");
    if (pos_ - start > 6) Fail("leaf value too large");
    int leaf = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (leaf < 1) Fail("leaf values must be >= 1");
    return GlobalDpTable().Tree(leaf);
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw UsageError("bad split tree '" + std::string(text_) + "' at offset " +
                     std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

struct Triple {
  Rational psi;
  Rational d;
  Rational log2_c;
};

Triple Evaluate(const SplitTree& t) {
  if (t.is_leaf()) return {Rational(1), Rational(0), Rational(0)};
  Triple a = Evaluate(t.left());
  Triple b = Evaluate(t.right());
  Rational psi_sum = a.psi + b.psi;
  Rational d_sum = a.d + b.d;
  Triple out;
  out.psi = Half(Rational(1) + psi_sum);
  out.d = Half(Rational(3) * d_sum + Rational(2) * psi_sum);
  out.log2_c = Half(a.log2_c + b.log2_c - (Rational(1) + d_sum + psi_sum));
  return out;
}

std::uint64_t DenominatorLcm(std::initializer_list<const Rational*> values) {
  mpz_class l = 1;
  for (const Rational* r : values) {
    mpz_class d = r->Denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  if (!l.fits_ulong_p()) return 0;
  return l.get_ui();
}

double BitLength(const mpz_class& z) {
  if (z == 0) return 0;
  return static_cast<double>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

// Outward-rounded enclosure [lo, hi] of log2(count) - log2(bound).
BoundComparison CompareByIntervals(const TheoremBound& bound,
                                   std::uint64_t count) {
  BoundComparison result;
  result.mode = ComparisonMode::kIntervalMpfr;
  if (count == 0) {
    result.holds = false;
    return result;
  }
  for (mpfr_prec_t prec : {128, 512, 2048, 8192}) {
    Mpfr lhs_lo(prec), lhs_hi(prec), tmp(prec);
    mpz_class c = static_cast<unsigned long>(count);
    mpfr_set_z(tmp.get(), c.get_mpz_t(), MPFR_RNDN);  // exact at prec >= 64
    mpfr_log2(lhs_lo.get(), tmp.get(), MPFR_RNDD);
    mpfr_log2(lhs_hi.get(), tmp.get(), MPFR_RNDU);

    auto rhs = [&](mpfr_rnd_t up, mpfr_rnd_t down, Mpfr& out) {
      Mpfr c2(prec), psi(prec), lg_n(prec), d(prec), lg_m(prec), m(prec),
          t1(prec), t2(prec);
      mpq_class q_c = bound.log2_c().ToMpq();
      mpq_class q_psi = bound.psi().ToMpq();
      mpq_class q_d = bound.d().ToMpq();
      mpq_class q_m = bound.m().ToMpq();
      mpz_class n = static_cast<unsigned long>(bound.n());
      mpfr_set_q(c2.get(), q_c.get_mpq_t(), up);
      mpfr_set_q(psi.get(), q_psi.get_mpq_t(), up);
      mpfr_set_z(tmp.get(), n.get_mpz_t(), MPFR_RNDN);
      mpfr_log2(lg_n.get(), tmp.get(), up);
      mpfr_mul(t1.get(), psi.get(), lg_n.get(), up);  // factors >= 0
      mpfr_set_q(d.get(), q_d.get_mpq_t(), down);
      mpfr_set_q(m.get(), q_m.get_mpq_t(), down);
      mpfr_log2(lg_m.get(), m.get(), down);
      mpfr_mul(t2.get(), d.get(), lg_m.get(), down);  // factors >= 0
      mpfr_add(out.get(), c2.get(), t1.get(), up);
      mpfr_sub(out.get(), out.get(), t2.get(), up);
    };
    Mpfr rhs_hi(prec), rhs_lo(prec);
    rhs(MPFR_RNDU, MPFR_RNDD, rhs_hi);
    rhs(MPFR_RNDD, MPFR_RNDU, rhs_lo);

    if (mpfr_cmp(lhs_lo.get(), rhs_hi.get()) >= 0) {
      result.holds = true;
      return result;
    }
    if (mpfr_cmp(lhs_hi.get(), rhs_lo.get()) < 0) {
      result.holds = false;
      return result;
    }
  }
  result.holds = false;
  result.decided = false;
  return result;
}

}  // namespace

SplitTree BuildSplitTree(int k, const SplitStrategy& strategy) {
  if (k < 1) {
    throw UsageError("k must be >= 1, got " + std::to_string(k));
  }
  switch (strategy.kind) {
    case SplitKind::kBalanced:
      return BalancedTree(k);
    case SplitKind::kPowersOfTwo:
      return PowersOfTwoTree(k);
    case SplitKind::kDpOptimal:
      return GlobalDpTable().Tree(k);
    case SplitKind::kExplicit: {
      SplitTree t = TreeParser(strategy.explicit_tree).ParseAll();
      if (t.k() != k) {
        throw UsageError("split tree '" + strategy.explicit_tree + "' sums to " +
                         std::to_string(t.k()) + ", expected " +
                         std::to_string(k));
      }
      return t;
    }
  }
  return GlobalDpTable().Tree(k);
}

BoundConstants ConstantsForTree(const SplitTree& tree) {
  Triple t = Evaluate(tree);
  BoundConstants c;
  c.k = tree.k();
  c.psi = t.psi;
  c.d = t.d;
  c.log2_c = t.log2_c;
  c.split = tree;
  return c;
}

BoundConstants Constants(int k, const SplitStrategy& strategy) {
  return ConstantsForTree(BuildSplitTree(k, strategy));
}

Rational Psi(int k, const SplitStrategy& strategy) {
  return Constants(k, strategy).psi;
}

FloorExponent FloorExponentFor(int k) {
  if (k < 1) throw UsageError("k must be >= 1, got " + std::to_string(k));
  FloorExponent f;
  f.z = std::bit_width(static_cast<unsigned>(k)) - 1;
  f.value = Rational(f.z + 2, 2);
  f.dominates_log4_2k = (std::uint64_t{1} << (f.z + 2)) >=
                        2 * static_cast<std::uint64_t>(k);
  return f;
}

bool AtLeastLog4TwoK(const Rational& x, int k) {
  if (k < 1) throw UsageError("k must be >= 1, got " + std::to_string(k));
  if (x.Sign() < 0) return false;
  // 4^(p/q) >= 2k  <=>  2^(2p) >= (2k)^q
  mpz_class p = x.Numerator();
  mpz_class q = x.Denominator();
  if (!p.fits_ulong_p() || !q.fits_ulong_p()) {
    throw UsageError("exponent too large for exact comparison");
  }
  mpz_class lhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), 2, 2 * p.get_ui());
  mpz_class rhs;
  mpz_ui_pow_ui(rhs.get_mpz_t(), 2 * static_cast<unsigned long>(k), q.get_ui());
  return lhs >= rhs;
}

std::string Log4String(std::uint64_t m) {
  if (m == 0) return "-inf";
  if (std::has_single_bit(m)) {
    return Rational(std::countr_zero(m), 2).ToString();
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", std::log2(static_cast<double>(m)) / 2);
  return buf;
}

std::string_view ComparisonModeName(ComparisonMode mode) {
  switch (mode) {
    case ComparisonMode::kExactIntegerPower:
      return "exact-integer-power";
    case ComparisonMode::kIntervalMpfr:
      return "interval-mpfr";
  }
  return "exact-integer-power";
}

TheoremBound::TheoremBound(const BoundConstants& constants, std::uint64_t n,
                           Rational m)
    : log2_c_(constants.log2_c),
      psi_(constants.psi),
      d_(constants.d),
      n_(n),
      m_(std::move(m)) {
  if (n_ < 1) throw UsageError("bound requires n >= 1");
  if (m_ < Rational(1)) throw UsageError("bound requires M >= 1");
}

BoundComparison TheoremBound::IsAtMost(std::uint64_t count,
                                       std::uint64_t max_exact_bits) const {
  std::uint64_t t = DenominatorLcm({&log2_c_, &psi_, &d_});
  mpz_class a = (log2_c_ * Rational(mpz_class(static_cast<unsigned long>(t))))
                    .Numerator();
  mpz_class b =
      (psi_ * Rational(mpz_class(static_cast<unsigned long>(t)))).Numerator();
  mpz_class c =
      (d_ * Rational(mpz_class(static_cast<unsigned long>(t)))).Numerator();
  mpz_class p = m_.Numerator();
  mpz_class q = m_.Denominator();

  bool exponents_fit = t != 0 && b.fits_ulong_p() && c.fits_ulong_p() &&
                       mpz_class(abs(a)).fits_ulong_p();
  if (exponents_fit) {
    double lhs_bits = static_cast<double>(t) * std::log2(count + 1.0) +
                      c.get_d() * BitLength(p) + std::max(0.0, -a.get_d());
    double rhs_bits = b.get_d() * std::log2(static_cast<double>(n_) + 1.0) +
                      c.get_d() * BitLength(q) + std::max(0.0, a.get_d());
    if (std::max(lhs_bits, rhs_bits) <= static_cast<double>(max_exact_bits)) {
      // count^t * p^c * 2^max(-a,0) >= n^b * q^c * 2^max(a,0)
      mpz_class lhs, rhs, tmp;
      mpz_ui_pow_ui(lhs.get_mpz_t(), count, t);
      mpz_pow_ui(tmp.get_mpz_t(), p.get_mpz_t(), c.get_ui());
      lhs *= tmp;
      mpz_ui_pow_ui(rhs.get_mpz_t(), n_, b.get_ui());
      mpz_pow_ui(tmp.get_mpz_t(), q.get_mpz_t(), c.get_ui());
      rhs *= tmp;
      if (a < 0) {
        lhs <<= mpz_class(-a).get_ui();
      } else {
        rhs <<= a.get_ui();
      }
      BoundComparison r;
      r.mode = ComparisonMode::kExactIntegerPower;
      r.holds = lhs >= rhs;
      return r;
    }
  }
  return CompareByIntervals(*this, count);
}

double TheoremBound::ApproxLog2() const {
  return log2_c_.ToDouble() + psi_.ToDouble() * std::log2(static_cast<double>(n_)) -
         d_.ToDouble() * m_.Log2();
}

double TheoremBound::Approx() const { return std::exp2(ApproxLog2()); }

}  // namespace sumfold
