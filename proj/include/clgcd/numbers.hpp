// Copyright 2026 The clgcd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CLGCD_NUMBERS_HPP
#define CLGCD_NUMBERS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace clgcd {

using BigInt = mpz_class;

/// Raised when an LFT is evaluated at its pole.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Dyadic valuation delta(n). delta(0) is the distinguished infinite value.
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr explicit Valuation(std::uint64_t v) : value_(v) {}

  static constexpr Valuation infinity() {
    Valuation v;
    v.infinite_ = true;
    return v;
  }

  [[nodiscard]] constexpr bool is_infinite() const { return infinite_; }
  /// Finite value; throws on the infinite marker.
  [[nodiscard]] std::uint64_t value() const;
  [[nodiscard]] std::string to_string() const;

  friend constexpr bool operator==(const Valuation&, const Valuation&) = default;

 private:
  std::uint64_t value_ = 0;
  bool infinite_ = false;
};

[[nodiscard]] Valuation dyadic_valuation(const BigInt& n);
[[nodiscard]] std::uint64_t dyadic_valuation_u64(std::uint64_t n);

/// Exact reduced fraction with positive denominator; zero is 0/1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& n) : num_(n), den_(1) {}  // NOLINT
  Rational(BigInt num, BigInt den);

  /// Parses "p/q" or "p".
  static Rational parse(const std::string& text);
  /// 2^e for any signed exponent.
  static Rational pow2(long e);

  [[nodiscard]] const BigInt& num() const { return num_; }
  [[nodiscard]] const BigInt& den() const { return den_; }
  [[nodiscard]] bool is_zero() const { return num_ == 0; }
  [[nodiscard]] int sign() const { return sgn(num_); }
  [[nodiscard]] double to_double() const;
  [[nodiscard]] std::string to_string() const;

  [[nodiscard]] Rational abs() const;
  [[nodiscard]] Rational reciprocal() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  void canonicalize();

  BigInt num_;
  BigInt den_;
};

/// |r|_2 = 2^exponent, or the zero norm for r = 0.
struct DyadicNorm {
  std::optional<long> exponent;  // nullopt encodes |0|_2 = 0

  [[nodiscard]] bool is_zero() const { return !exponent.has_value(); }
  [[nodiscard]] Rational value() const;
  [[nodiscard]] double log() const;  // natural log; -inf for zero

  friend bool operator==(const DyadicNorm&, const DyadicNorm&) = default;
};

[[nodiscard]] DyadicNorm dyadic_norm(const Rational& r);
[[nodiscard]] DyadicNorm operator*(const DyadicNorm& a, const DyadicNorm& b);

/// gcd map G_2(y) = min(1, |y|_2^{-2}).
[[nodiscard]] Rational g2(const Rational& y);

/// 2x2 integer matrix acting on rationals as x -> (m00 x + m01)/(m10 x + m11).
struct IntMatrix2 {
  BigInt m00 = 1, m01 = 0, m10 = 0, m11 = 1;

  static IntMatrix2 identity() { return {}; }
  /// M_a = [[0, 1], [2^a, 2^a]].
  static IntMatrix2 cl(unsigned a);

  [[nodiscard]] BigInt det() const { return m00 * m11 - m01 * m10; }

  friend IntMatrix2 operator*(const IntMatrix2& a, const IntMatrix2& b);
  friend bool operator==(const IntMatrix2& a, const IntMatrix2& b) {
    return a.m00 == b.m00 && a.m01 == b.m01 && a.m10 == b.m10 && a.m11 == b.m11;
  }
};

[[nodiscard]] Rational lft_apply(const IntMatrix2& m, const Rational& x);
/// Signed derivative det(M)/(m10 x + m11)^2.
[[nodiscard]] Rational lft_derivative_at(const IntMatrix2& m, const Rational& x);

/// Number of bits of |n| (0 for n = 0).
[[nodiscard]] std::size_t bit_length(const BigInt& n);
[[nodiscard]] BigInt odd_part(const BigInt& n);

}  // namespace clgcd

#endif  // CLGCD_NUMBERS_HPP
