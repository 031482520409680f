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

#include "clgcd/numbers.hpp"

#include <cmath>
#include <limits>

namespace clgcd {

std::uint64_t Valuation::value() const {
  if (infinite_) throw std::logic_error("valuation of zero is infinite");
  return value_;
}

std::string Valuation::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(value_);
}

Valuation dyadic_valuation(const BigInt& n) {
  if (n == 0) return Valuation::infinity();
  return Valuation(mpz_scan1(n.get_mpz_t(), 0));
}

std::uint64_t dyadic_valuation_u64(std::uint64_t n) {
  if (n == 0) throw std::domain_error("dyadic_valuation_u64 of 0");
  return static_cast<std::uint64_t>(__builtin_ctzll(n));
}

std::size_t bit_length(const BigInt& n) {
  if (n == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

BigInt odd_part(const BigInt& n) {
  if (n == 0) return 0;
  BigInt out;
  mpz_tdiv_q_2exp(out.get_mpz_t(), n.get_mpz_t(), mpz_scan1(n.get_mpz_t(), 0));
  return out;
}

// ---------------------------------------------------------------- Rational

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw std::domain_error("rational with zero denominator");
  canonicalize();
}

void Rational::canonicalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g;
  mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

Rational Rational::parse(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(BigInt(text));
    return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
}

Rational Rational::pow2(long e) {
  BigInt p = 1;
  const auto shift = static_cast<mp_bitcnt_t>(e < 0 ? -e : e);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), shift);
  return e >= 0 ? Rational(p) : Rational(BigInt(1), p);
}

double Rational::to_double() const {
  mpq_class q(num_, den_);
  return q.get_d();
}

std::string Rational::to_string() const {
  if (den_ == 1) return num_.get_str();
  return num_.get_str() + "/" + den_.get_str();
}

Rational Rational::abs() const { return num_ < 0 ? -*this : *this; }

Rational Rational::reciprocal() const {
  if (num_ == 0) throw std::domain_error("reciprocal of zero");
  return Rational(den_, num_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("division by zero rational");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

Rational operator-(const Rational& a) {
  Rational out = a;
  out.num_ = -out.num_;
  return out;
}

bool operator<(const Rational& a, const Rational& b) {
  return a.num_ * b.den_ < b.num_ * a.den_;
}

// ------------------------------------------------------------ dyadic norm

Rational DyadicNorm::value() const {
  if (!exponent) return Rational(0);
  return Rational::pow2(*exponent);
}

double DyadicNorm::log() const {
  if (!exponent) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(*exponent) * std::log(2.0);
}

DyadicNorm dyadic_norm(const Rational& r) {
  if (r.is_zero()) return {};
  const auto vn = static_cast<long>(dyadic_valuation(r.num()).value());
  const auto vd = static_cast<long>(dyadic_valuation(r.den()).value());
  return {vd - vn};
}

DyadicNorm operator*(const DyadicNorm& a, const DyadicNorm& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return {*a.exponent + *b.exponent};
}

Rational g2(const Rational& y) {
  const DyadicNorm n = dyadic_norm(y);
  if (n.is_zero() || *n.exponent <= 0) return Rational(1);
  return Rational::pow2(-2 * *n.exponent);
}

// ---------------------------------------------------------------- matrices

IntMatrix2 IntMatrix2::cl(unsigned a) {
  BigInt p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), a);
  return {0, 1, p, p};
}

IntMatrix2 operator*(const IntMatrix2& a, const IntMatrix2& b) {
  return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
          a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

namespace {

// m10 x + m11 as a fraction over x's denominator.
BigInt denominator_numer(const IntMatrix2& m, const Rational& x) {
  return m.m10 * x.num() + m.m11 * x.den();
}

}  // namespace

Rational lft_apply(const IntMatrix2& m, const Rational& x) {
  BigInt den = denominator_numer(m, x);
  if (den == 0) throw PoleError("LFT evaluated at its pole x = " + x.to_string());
  return Rational(m.m00 * x.num() + m.m01 * x.den(), std::move(den));
}

Rational lft_derivative_at(const IntMatrix2& m, const Rational& x) {
  // d/dx (a x + b)/(c x + d) = det / (c x + d)^2, with c x + d = den / x.den.
  const BigInt den = denominator_numer(m, x);
  if (den == 0) throw PoleError("LFT derivative at its pole x = " + x.to_string());
  return Rational(m.det() * x.den() * x.den(), den * den);
}

}  // namespace clgcd
