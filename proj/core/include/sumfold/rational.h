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

#ifndef SUMFOLD_RATIONAL_H_
#define SUMFOLD_RATIONAL_H_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace sumfold {

// Exact arbitrary-precision rational number.
//
// Values are always kept in lowest terms with a positive denominator. A value
// whose numerator and denominator both fit in a signed 64-bit word (excluding
// INT64_MIN) is stored inline; anything larger lives in a shared, immutable
// GMP rational. The representation is canonical, so equality is a field
// comparison.
//
// A Rational is 16 bytes. Copies of big values share the heap
// representation through an atomic reference count, so values can be passed
// between threads freely.
class Rational {
 public:
  Rational() noexcept : num_(0), den_(1) {}
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  // Throws std::domain_error when `den` is zero.
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& value);
  explicit Rational(const mpz_class& value);

  Rational(const Rational& other) noexcept;
  Rational(Rational&& other) noexcept;
  Rational& operator=(const Rational& other) noexcept;
  Rational& operator=(Rational&& other) noexcept;
  ~Rational();

  // Parses "p/q" or "p" with optional leading sign; the result is normalized.
  // Throws std::invalid_argument on malformed text and std::domain_error on a
  // zero denominator.
  static Rational Parse(std::string_view text);

  bool IsSmall() const noexcept { return den_ != 0; }
  bool IsInteger() const noexcept;
  int Sign() const noexcept;

  mpz_class Numerator() const;
  mpz_class Denominator() const;
  mpq_class ToMpq() const;

  // Lowest-terms text: "p" when the denominator is 1, otherwise "p/q".
  std::string ToString() const;
  double ToDouble() const;
  // log2 of a positive value, accurate for values far outside double range.
  double Log2() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  // Throws std::domain_error when `b` is zero.
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    if (a.IsSmall() && b.IsSmall()) return a.num_ == b.num_ && a.den_ == b.den_;
    return EqualSlow(a, b);
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) noexcept {
    if (a.den_ == 1 && b.den_ == 1) return a.num_ <=> b.num_;
    return CompareSlow(a, b);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  struct Big;

  // Tag for an already-normalized inline pair.
  struct Raw {};
  Rational(Raw, std::int64_t num, std::int64_t den) noexcept
      : num_(num), den_(den) {}

  static bool EqualSlow(const Rational& a, const Rational& b) noexcept;
  static std::strong_ordering CompareSlow(const Rational& a,
                                          const Rational& b) noexcept;
  static Rational FromInt128(__int128 num, __int128 den);
  static Rational FromBig(mpq_class value);
  const mpq_class& big() const noexcept;
  void Release() noexcept;

  union {
    std::int64_t num_;
    Big* big_;
  };
  // Positive for inline values; zero marks a heap value in `big_`.
  std::int64_t den_;
};

// Three-way comparison helper mirroring the usual cmp() convention.
inline int Compare(const Rational& a, const Rational& b) noexcept {
  auto c = a <=> b;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

// Exact point of the plane, ordered lexicographically by (x, y).
struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point&, const Point&) noexcept = default;
  friend std::strong_ordering operator<=>(const Point& a,
                                          const Point& b) noexcept {
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.y <=> b.y;
  }
};

inline Point operator+(const Point& a, const Point& b) {
  return {a.x + b.x, a.y + b.y};
}

std::ostream& operator<<(std::ostream& os, const Point& p);

}  // namespace sumfold

#endif  // SUMFOLD_RATIONAL_H_
