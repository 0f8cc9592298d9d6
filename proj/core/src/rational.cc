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

#include "sumfold/rational.h"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace sumfold {

struct Rational::Big {
  explicit Big(mpq_class v) : value(std::move(v)) {}
  std::atomic<std::uint32_t> refs{1};
  mpq_class value;
};

namespace {

constexpr std::int64_t kInt64Min = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kInt64Max = std::numeric_limits<std::int64_t>::max();

using u128 = unsigned __int128;

u128 Abs128(__int128 v) { return v < 0 ? -static_cast<u128>(v) : v; }

std::uint64_t Gcd64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t Abs64(std::int64_t v) {
  return v < 0 ? -static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
}

int Ctz128(u128 v) {
  auto lo = static_cast<std::uint64_t>(v);
  if (lo != 0) return __builtin_ctzll(lo);
  return 64 + __builtin_ctzll(static_cast<std::uint64_t>(v >> 64));
}

// Binary gcd; gcd(0, b) = b.
u128 Gcd128(u128 a, u128 b) {
  if (a == 0) return b;
  if (b == 0) return a;
  int shift = Ctz128(a | b);
  a >>= Ctz128(a);
  do {
    b >>= Ctz128(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

bool FitsInline(__int128 v) { return v > kInt64Min && v <= kInt64Max; }

mpz_class MpzFromU128(u128 v) {
  mpz_class hi(static_cast<unsigned long>(v >> 64));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
  return (hi << 64) + lo;
}

mpz_class MpzFrom128(__int128 v) {
  mpz_class m = MpzFromU128(Abs128(v));
  return v < 0 ? mpz_class(-m) : m;
}

bool MpzFitsInline(const mpz_class& z) {
  return mpz_fits_slong_p(z.get_mpz_t()) != 0 &&
         mpz_cmp_si(z.get_mpz_t(), kInt64Min) != 0;
}

}  // namespace

Rational::Rational(std::int64_t value) : den_(1) {
  if (value == kInt64Min) {
    den_ = 0;
    big_ = new Big(mpq_class(mpz_class(static_cast<long>(value))));
  } else {
    num_ = value;
  }
}

Rational::Rational(std::int64_t num, std::int64_t den) : num_(0), den_(1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = FromInt128(num, den);
}

Rational::Rational(const mpq_class& value) : num_(0), den_(1) {
  mpq_class copy(value);
  copy.canonicalize();
  *this = FromBig(std::move(copy));
}

Rational::Rational(const mpz_class& value) : Rational(mpq_class(value)) {}

Rational::Rational(const Rational& other) noexcept : den_(other.den_) {
  if (IsSmall()) {
    num_ = other.num_;
  } else {
    big_ = other.big_;
    big_->refs.fetch_add(1, std::memory_order_relaxed);
  }
}

Rational::Rational(Rational&& other) noexcept : den_(other.den_) {
  if (IsSmall()) {
    num_ = other.num_;
  } else {
    big_ = other.big_;
    other.num_ = 0;
    other.den_ = 1;
  }
}

Rational& Rational::operator=(const Rational& other) noexcept {
  if (this == &other) return *this;
  if (!other.IsSmall()) other.big_->refs.fetch_add(1, std::memory_order_relaxed);
  Release();
  den_ = other.den_;
  if (IsSmall()) {
    num_ = other.num_;
  } else {
    big_ = other.big_;
  }
  return *this;
}

Rational& Rational::operator=(Rational&& other) noexcept {
  if (this == &other) return *this;
  Release();
  den_ = other.den_;
  if (IsSmall()) {
    num_ = other.num_;
  } else {
    big_ = other.big_;
    other.num_ = 0;
    other.den_ = 1;
  }
  return *this;
}

Rational::~Rational() { Release(); }

void Rational::Release() noexcept {
  if (!IsSmall() && big_->refs.fetch_sub(1, std::memory_order_acq_rel) == 1) {
    delete big_;
  }
}

const mpq_class& Rational::big() const noexcept { return big_->value; }

Rational Rational::FromBig(mpq_class value) {
  if (MpzFitsInline(value.get_num()) && MpzFitsInline(value.get_den())) {
    return Rational(Raw{}, value.get_num().get_si(), value.get_den().get_si());
  }
  Rational r;
  r.den_ = 0;
  r.big_ = new Big(std::move(value));
  return r;
}

// Normalizes sign and common factors of a 128-bit fraction; den != 0.
Rational Rational::FromInt128(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) return Rational();
  u128 g = Gcd128(Abs128(num), static_cast<u128>(den));
  if (g != 1) {
    num /= static_cast<__int128>(g);
    den /= static_cast<__int128>(g);
  }
  if (FitsInline(num) && FitsInline(den)) {
    return Rational(Raw{}, static_cast<std::int64_t>(num),
                    static_cast<std::int64_t>(den));
  }
  mpq_class q(MpzFrom128(num), MpzFrom128(den));
  return FromBig(std::move(q));
}

Rational Rational::Parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("malformed rational '" + std::string(text) +
                                "'");
  };
  if (text.empty()) return fail();
  auto slash = text.find('/');
  std::string_view num_text = text.substr(0, slash);
  std::string_view den_text =
      slash == std::string_view::npos ? std::string_view("1")
                                      : text.substr(slash + 1);
  auto digits_ok = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) {
      s.remove_prefix(1);
    }
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  if (!digits_ok(num_text, true) || !digits_ok(den_text, false)) return fail();
  if (num_text.front() == '+') num_text.remove_prefix(1);
  mpz_class num(std::string(num_text), 10);
  mpz_class den(std::string(den_text), 10);
  if (den == 0) throw std::domain_error("rational with zero denominator");
  return Rational(mpq_class(num, den));
}

bool Rational::IsInteger() const noexcept {
  return IsSmall() ? den_ == 1 : big().get_den() == 1;
}

int Rational::Sign() const noexcept {
  if (IsSmall()) return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0);
  return sgn(big());
}

mpz_class Rational::Numerator() const {
  return IsSmall() ? mpz_class(static_cast<long>(num_)) : big().get_num();
}

mpz_class Rational::Denominator() const {
  return IsSmall() ? mpz_class(static_cast<long>(den_)) : big().get_den();
}

mpq_class Rational::ToMpq() const {
  if (!IsSmall()) return big();
  mpq_class q;
  mpq_set_si(q.get_mpq_t(), num_, static_cast<unsigned long>(den_));
  return q;
}

std::string Rational::ToString() const {
  if (IsSmall()) {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  if (big().get_den() == 1) return big().get_num().get_str();
  return big().get_num().get_str() + "/" + big().get_den().get_str();
}

double Rational::ToDouble() const {
  if (IsSmall()) {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  return big().get_d();
}

double Rational::Log2() const {
  if (IsSmall()) {
    return std::log2(static_cast<double>(num_)) -
           std::log2(static_cast<double>(den_));
  }
  long num_exp = 0;
  long den_exp = 0;
  double num_mant = mpz_get_d_2exp(&num_exp, big().get_num_mpz_t());
  double den_mant = mpz_get_d_2exp(&den_exp, big().get_den_mpz_t());
  return std::log2(num_mant) - std::log2(den_mant) +
         static_cast<double>(num_exp - den_exp);
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.IsSmall() && b.IsSmall()) {
    if (a.den_ == 1 && b.den_ == 1) {
      std::int64_t r;
      if (!__builtin_add_overflow(a.num_, b.num_, &r) && r != kInt64Min) {
        return Rational(Rational::Raw{}, r, 1);
      }
      return Rational::FromInt128(static_cast<__int128>(a.num_) + b.num_, 1);
    }
    // Knuth 4.5.1: only the gcd of the denominators can cancel.
    std::uint64_t d1 = Gcd64(a.den_, b.den_);
    if (d1 == 1) {
      __int128 n = static_cast<__int128>(a.num_) * b.den_ +
                   static_cast<__int128>(b.num_) * a.den_;
      __int128 d = static_cast<__int128>(a.den_) * b.den_;
      if (n == 0) return Rational();
      if (FitsInline(n) && FitsInline(d)) {
        return Rational(Rational::Raw{}, static_cast<std::int64_t>(n),
                        static_cast<std::int64_t>(d));
      }
      return Rational::FromInt128(n, d);
    }
    std::int64_t ad = a.den_ / static_cast<std::int64_t>(d1);
    std::int64_t bd = b.den_ / static_cast<std::int64_t>(d1);
    __int128 t = static_cast<__int128>(a.num_) * bd +
                 static_cast<__int128>(b.num_) * ad;
    if (t == 0) return Rational();
    auto d2 = static_cast<std::int64_t>(
        Gcd64(static_cast<std::uint64_t>(Abs128(t) % d1), d1));
    __int128 n = t / d2;
    __int128 d = static_cast<__int128>(ad) * (b.den_ / d2);
    if (FitsInline(n) && FitsInline(d)) {
      return Rational(Rational::Raw{}, static_cast<std::int64_t>(n),
                      static_cast<std::int64_t>(d));
    }
    return Rational::FromInt128(n, d);
  }
  return Rational::FromBig(a.ToMpq() + b.ToMpq());
}

Rational Rational::operator-() const {
  if (IsSmall()) return Rational(Raw{}, -num_, den_);
  return FromBig(mpq_class(-big()));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (a.IsSmall() && b.IsSmall()) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    auto g1 = static_cast<std::int64_t>(Gcd64(Abs64(a.num_), b.den_));
    auto g2 = static_cast<std::int64_t>(Gcd64(Abs64(b.num_), a.den_));
    __int128 n = static_cast<__int128>(a.num_ / g1) * (b.num_ / g2);
    __int128 d = static_cast<__int128>(a.den_ / g2) * (b.den_ / g1);
    if (FitsInline(n) && FitsInline(d)) {
      return Rational(Rational::Raw{}, static_cast<std::int64_t>(n),
                      static_cast<std::int64_t>(d));
    }
    return Rational::FromInt128(n, d);
  }
  return Rational::FromBig(a.ToMpq() * b.ToMpq());
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.Sign() == 0) throw std::domain_error("rational division by zero");
  if (b.IsSmall()) {
    std::int64_t num = b.num_ < 0 ? -b.den_ : b.den_;
    std::int64_t den = b.num_ < 0 ? -b.num_ : b.num_;
    return a * Rational(Rational::Raw{}, num, den);
  }
  return Rational::FromBig(a.ToMpq() / b.big());
}

bool Rational::EqualSlow(const Rational& a, const Rational& b) noexcept {
  if (a.IsSmall() != b.IsSmall()) return false;
  return a.big_ == b.big_ || a.big() == b.big();
}

std::strong_ordering Rational::CompareSlow(const Rational& a,
                                           const Rational& b) noexcept {
  if (a.IsSmall() && b.IsSmall()) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  int c;
  if (!a.IsSmall() && !b.IsSmall()) {
    c = cmp(a.big(), b.big());
  } else {
    c = cmp(a.ToMpq(), b.ToMpq());
  }
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.ToString();
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
  return os << "(" << p.x << ", " << p.y << ")";
}

}  // namespace sumfold
