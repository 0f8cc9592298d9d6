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

#include "sumfold/families.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "sumfold/errors.h"

namespace sumfold {

namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

int ParseInt(std::string_view key, std::string_view value) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw UsageError("family parameter " + std::string(key) +
                     " expects an integer, got '" + std::string(value) + "'");
  }
  return out;
}

std::uint64_t ParseSeed(std::string_view value) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw UsageError("seed expects an unsigned integer, got '" +
                     std::string(value) + "'");
  }
  return out;
}

Rational ParseRational(std::string_view key, std::string_view value) {
  try {
    return Rational::Parse(value);
  } catch (const std::exception&) {
    throw UsageError("family parameter " + std::string(key) +
                     " expects a rational, got '" + std::string(value) + "'");
  }
}

FamilyKind ParseKind(std::string_view name) {
  if (name == "ap") return FamilyKind::kAp;
  if (name == "gp") return FamilyKind::kGp;
  if (name == "gp2d") return FamilyKind::kGp2d;
  if (name == "random" || name == "random-subset") {
    return FamilyKind::kRandomSubset;
  }
  if (name == "union") return FamilyKind::kUnion;
  throw UsageError("unknown family '" + std::string(name) +
                   "' (expected ap, gp, gp2d, random or union)");
}

void RequireRatio(const Rational& r, const char* name) {
  if (r.Sign() <= 0 || r == Rational(1)) {
    throw UsageError(std::string(name) + " must be positive and != 1, got " +
                     r.ToString());
  }
}

void RequirePositive(const Rational& r, const char* name) {
  if (r.Sign() <= 0) {
    throw UsageError(std::string(name) + " must be positive, got " +
                     r.ToString());
  }
}

void RequireCount(int v, const char* name) {
  if (v < 1) {
    throw UsageError(std::string(name) + " must be >= 1, got " +
                     std::to_string(v));
  }
}

std::uint64_t BoundedDraw(std::mt19937_64& rng, std::uint64_t range) {
  // Accepts draws in [2^64 mod range, 2^64), a multiple of range in size.
  std::uint64_t threshold = (0 - range) % range;
  for (;;) {
    std::uint64_t x = rng();
    if (x >= threshold) return x % range;
  }
}

using Factorization = std::map<mpz_class, long>;

void Factor(mpz_class v, long sign, Factorization& out) {
  for (unsigned long p = 2; p <= 1000000 && p * p <= v; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(v.get_mpz_t(), p) != 0) {
      out[mpz_class(p)] += sign;
      v /= p;
    }
  }
  if (v == 1) return;
  if (v < mpz_class("1000000000000") ||
      mpz_probab_prime_p(v.get_mpz_t(), 30) > 0) {
    out[v] += sign;
    return;
  }
  throw UsageError("cannot factor " + v.get_str() +
                   " to check multiplicative independence");
}

Factorization ExponentVector(const Rational& r) {
  Factorization f;
  Factor(r.Numerator(), 1, f);
  Factor(r.Denominator(), -1, f);
  std::erase_if(f, [](const auto& kv) { return kv.second == 0; });
  return f;
}

std::vector<Rational> Powers(const Rational& base, int count) {
  std::vector<Rational> out;
  out.reserve(count);
  Rational acc(1);
  for (int i = 0; i < count; ++i) {
    out.push_back(acc);
    acc *= base;
  }
  return out;
}

}  // namespace

std::string_view FamilyKindName(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kAp:
      return "ap";
    case FamilyKind::kGp:
      return "gp";
    case FamilyKind::kGp2d:
      return "gp2d";
    case FamilyKind::kRandomSubset:
      return "random";
    case FamilyKind::kUnion:
      return "union";
  }
  return "gp";
}

FamilySpec FamilySpec::Parse(std::string_view text) {
  text = Trim(text);
  FamilySpec spec;
  if (text.starts_with("union(")) {
    if (!text.ends_with(")")) throw UsageError("union spec must end with ')'");
    std::string_view inner = text.substr(6, text.size() - 7);
    // Split at the top-level '|'.
    int depth = 0;
    std::size_t bar = std::string_view::npos;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == '|' && depth == 0) {
        if (bar != std::string_view::npos) {
          throw UsageError("union takes exactly two parts");
        }
        bar = i;
      }
    }
    if (bar == std::string_view::npos) {
      throw UsageError("union spec needs two parts separated by '|'");
    }
    spec.kind = FamilyKind::kUnion;
    spec.left = std::make_shared<const FamilySpec>(Parse(inner.substr(0, bar)));
    spec.right = std::make_shared<const FamilySpec>(Parse(inner.substr(bar + 1)));
    return spec;
  }
  auto colon = text.find(':');
  spec.kind = ParseKind(Trim(text.substr(0, colon)));
  if (spec.kind == FamilyKind::kUnion) {
    throw UsageError("union spec form is union(<spec>|<spec>)");
  }
  if (colon == std::string_view::npos) return spec;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string_view item = Trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view()
                                           : rest.substr(comma + 1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("family parameter '" + std::string(item) +
                       "' must be key=value");
    }
    std::string_view key = Trim(item.substr(0, eq));
    std::string_view value = Trim(item.substr(eq + 1));
    if (key == "n") {
      spec.n = ParseInt(key, value);
    } else if (key == "n1") {
      spec.n1 = ParseInt(key, value);
    } else if (key == "n2") {
      spec.n2 = ParseInt(key, value);
    } else if (key == "start") {
      spec.start = ParseRational(key, value);
    } else if (key == "step") {
      spec.step = ParseRational(key, value);
    } else if (key == "ratio") {
      spec.ratio = ParseRational(key, value);
    } else if (key == "ratio2") {
      spec.ratio2 = ParseRational(key, value);
    } else if (key == "range_max") {
      spec.range_max = ParseInt(key, value);
    } else if (key == "seed") {
      spec.seed = ParseSeed(value);
    } else if (key == "source") {
      if (value == "range") {
        spec.source = RandomSource::kIntegerRange;
      } else if (value == "gp") {
        spec.source = RandomSource::kGeometric;
      } else {
        throw UsageError("source must be 'range' or 'gp'");
      }
    } else {
      throw UsageError("unknown family parameter '" + std::string(key) + "'");
    }
  }
  return spec;
}

std::string FamilySpec::ToString() const {
  std::string s(FamilyKindName(kind));
  switch (kind) {
    case FamilyKind::kAp:
      return s + ":n=" + std::to_string(n) + ",start=" + start.ToString() +
             ",step=" + step.ToString();
    case FamilyKind::kGp:
      return s + ":n=" + std::to_string(n) + ",start=" + start.ToString() +
             ",ratio=" + ratio.ToString();
    case FamilyKind::kGp2d:
      return s + ":n1=" + std::to_string(n1) + ",n2=" + std::to_string(n2) +
             ",start=" + start.ToString() + ",ratio=" + ratio.ToString() +
             ",ratio2=" + ratio2.ToString();
    case FamilyKind::kRandomSubset:
      s += ":n=" + std::to_string(n) + ",source=" +
           (source == RandomSource::kIntegerRange ? "range" : "gp") +
           ",range_max=" + std::to_string(range_max);
      if (source == RandomSource::kGeometric) {
        s += ",start=" + start.ToString() + ",ratio=" + ratio.ToString();
      }
      return s + ",seed=" + std::to_string(seed);
    case FamilyKind::kUnion:
      return "union(" + (left ? left->ToString() : "?") + "|" +
             (right ? right->ToString() : "?") + ")";
  }
  return s;
}

void Validate(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::kAp:
      RequireCount(spec.n, "n");
      RequirePositive(spec.start, "start");
      RequirePositive(spec.step, "step");
      return;
    case FamilyKind::kGp:
      RequireCount(spec.n, "n");
      RequirePositive(spec.start, "start");
      RequireRatio(spec.ratio, "ratio");
      return;
    case FamilyKind::kGp2d:
      RequireCount(spec.n1, "n1");
      RequireCount(spec.n2, "n2");
      RequirePositive(spec.start, "start");
      RequireRatio(spec.ratio, "ratio");
      RequireRatio(spec.ratio2, "ratio2");
      if (!MultiplicativelyIndependent(spec.ratio, spec.ratio2)) {
        throw UsageError("gp2d ratios " + spec.ratio.ToString() + " and " +
                         spec.ratio2.ToString() +
                         " are multiplicatively dependent");
      }
      return;
    case FamilyKind::kRandomSubset:
      RequireCount(spec.n, "n");
      RequireCount(spec.range_max, "range_max");
      if (spec.n > spec.range_max) {
        throw UsageError("random sample size n = " + std::to_string(spec.n) +
                         " exceeds range_max = " +
                         std::to_string(spec.range_max));
      }
      if (spec.source == RandomSource::kGeometric) {
        RequirePositive(spec.start, "start");
        RequireRatio(spec.ratio, "ratio");
      }
      return;
    case FamilyKind::kUnion:
      if (!spec.left || !spec.right) throw UsageError("union needs two parts");
      Validate(*spec.left);
      Validate(*spec.right);
      return;
  }
}

std::vector<std::uint64_t> SampleIndices(std::uint64_t n, std::uint64_t k,
                                         std::uint64_t seed) {
  if (k > n) throw UsageError("sample larger than population");
  std::mt19937_64 rng(seed);
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = n - k; j < n; ++j) {
    std::uint64_t t = BoundedDraw(rng, j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

FiniteSet Generate(const FamilySpec& spec) {
  Validate(spec);
  std::vector<Rational> out;
  switch (spec.kind) {
    case FamilyKind::kAp: {
      Rational v = spec.start;
      for (int i = 0; i < spec.n; ++i) {
        out.push_back(v);
        v += spec.step;
      }
      break;
    }
    case FamilyKind::kGp:
      for (const Rational& p : Powers(spec.ratio, spec.n)) {
        out.push_back(spec.start * p);
      }
      break;
    case FamilyKind::kGp2d: {
      std::vector<Rational> ps = Powers(spec.ratio, spec.n1);
      std::vector<Rational> qs = Powers(spec.ratio2, spec.n2);
      for (const Rational& p : ps) {
        for (const Rational& q : qs) out.push_back(spec.start * p * q);
      }
      break;
    }
    case FamilyKind::kRandomSubset: {
      auto idx = SampleIndices(static_cast<std::uint64_t>(spec.range_max),
                               static_cast<std::uint64_t>(spec.n), spec.seed);
      if (spec.source == RandomSource::kIntegerRange) {
        for (std::uint64_t i : idx) {
          out.push_back(Rational(static_cast<std::int64_t>(i + 1)));
        }
      } else {
        std::vector<Rational> ps = Powers(spec.ratio, spec.range_max);
        for (std::uint64_t i : idx) out.push_back(spec.start * ps[i]);
      }
      break;
    }
    case FamilyKind::kUnion: {
      FiniteSet a = Generate(*spec.left);
      FiniteSet b = Generate(*spec.right);
      out.assign(a.begin(), a.end());
      out.insert(out.end(), b.begin(), b.end());
      FiniteSet u = FiniteSet::FromElements(out);
      if (u.size() != a.size() + b.size()) {
        throw UsageError("union parts overlap; the union family must be disjoint");
      }
      return u;
    }
  }
  return FiniteSet::FromElements(std::move(out));
}

KnownStats KnownStatsFor(const FamilySpec& spec, int k) {
  if (k < 1) throw UsageError("k must be >= 1");
  KnownStats s;
  auto n = static_cast<std::uint64_t>(spec.n);
  switch (spec.kind) {
    case FamilyKind::kAp:
      s.kfold_sum = static_cast<std::uint64_t>(k) * (n - 1) + 1;
      break;
    case FamilyKind::kGp:
      s.product_set = 2 * n - 1;
      if (k == 1) s.kfold_sum = n;
      if (k == 2) s.kfold_sum = n * (n + 1) / 2;
      break;
    case FamilyKind::kGp2d: {
      auto n1 = static_cast<std::uint64_t>(spec.n1);
      auto n2 = static_cast<std::uint64_t>(spec.n2);
      s.product_set = (2 * n1 - 1) * (2 * n2 - 1);
      if (k == 1) s.kfold_sum = n1 * n2;
      break;
    }
    case FamilyKind::kRandomSubset:
    case FamilyKind::kUnion:
      break;
  }
  return s;
}

bool MultiplicativelyIndependent(const Rational& r, const Rational& s) {
  RequireRatio(r, "ratio");
  RequireRatio(s, "ratio2");
  Factorization fr = ExponentVector(r);
  Factorization fs = ExponentVector(s);
  std::set<mpz_class> primes;
  for (const auto& [p, e] : fr) primes.insert(p);
  for (const auto& [p, e] : fs) primes.insert(p);
  auto at = [](const Factorization& f, const mpz_class& p) -> long {
    auto it = f.find(p);
    return it == f.end() ? 0 : it->second;
  };
  // Independent iff some 2x2 minor of the exponent matrix is nonzero.
  for (const mpz_class& p : primes) {
    for (const mpz_class& q : primes) {
      if (at(fr, p) * at(fs, q) != at(fr, q) * at(fs, p)) return true;
    }
  }
  return false;
}

}  // namespace sumfold
