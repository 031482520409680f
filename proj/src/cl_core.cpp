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

#include "clgcd/cl_core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace clgcd {

std::string to_string(Convention c) {
  return c == Convention::greedy ? "greedy" : "canonical";
}

Convention parse_convention(const std::string& text) {
  if (text == "greedy") return Convention::greedy;
  if (text == "canonical") return Convention::canonical;
  throw std::invalid_argument("unknown convention '" + text + "'");
}

// ------------------------------------------------------------ ExponentSeq

ExponentSeq::ExponentSeq(std::vector<unsigned> exponents) : exponents_(std::move(exponents)) {}

ExponentSeq ExponentSeq::parse(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789 ") != std::string::npos)
      throw std::invalid_argument("bad exponent '" + item + "'");
    out.push_back(static_cast<unsigned>(std::stoul(item)));
  }
  if (out.empty()) throw std::invalid_argument("empty exponent sequence");
  return ExponentSeq(std::move(out));
}

std::uint64_t ExponentSeq::shift_total() const {
  std::uint64_t s = 0;
  for (unsigned a : exponents_) s += a;
  return s;
}

ExponentSeq ExponentSeq::canonicalized() const {
  if (exponents_.empty() || exponents_.back() == 0) return *this;
  auto out = exponents_;
  out.back() -= 1;
  out.push_back(0);
  return ExponentSeq(std::move(out));
}

std::string ExponentSeq::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(exponents_[i]);
  }
  return out;
}

// ------------------------------------------------------------------ steps

unsigned cl_exponent(const BigInt& p, const BigInt& q) {
  if (p <= 0 || p > q) throw std::invalid_argument("cl_step requires 0 < p <= q");
  auto a = static_cast<long>(bit_length(q)) - static_cast<long>(bit_length(p));
  BigInt shifted;
  mpz_mul_2exp(shifted.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(a));
  if (shifted > q) --a;
  return static_cast<unsigned>(a);
}

Step cl_step(const BigInt& p, const BigInt& q) {
  Step s;
  s.a = cl_exponent(p, q);
  mpz_mul_2exp(s.shifted.get_mpz_t(), p.get_mpz_t(), s.a);
  s.remainder = q - s.shifted;
  return s;
}

namespace {

StepRecord make_record(std::size_t index, unsigned a, BigInt shifted, BigInt remainder,
                       bool forced) {
  StepRecord rec;
  rec.index = index;
  rec.exponent = a;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), shifted.get_mpz_t(), remainder.get_mpz_t());
  rec.val_shifted = dyadic_valuation(shifted);
  rec.val_remainder = dyadic_valuation(remainder);
  rec.val_gcd = dyadic_valuation(g);
  rec.shifted = std::move(shifted);
  rec.remainder = std::move(remainder);
  rec.forced = forced;
  return rec;
}

// Runs on 0 < p <= q; shared by cl_run and cf_expand.
Trace run_pairs(const BigInt& p0, const BigInt& q0, Convention convention) {
  Trace t;
  t.p = p0;
  t.q = q0;
  t.convention = convention;
  std::vector<unsigned> exps;
  BigInt p = p0, q = q0;
  while (p != 0) {
    Step s = cl_step(p, q);
    if (s.remainder == 0 && s.a >= 1 && convention == Convention::canonical) {
      // (..., a) -> (..., a-1, 0): q = 2^a p = 2^{a-1} p + 2^{a-1} p.
      BigInt half;
      mpz_mul_2exp(half.get_mpz_t(), p.get_mpz_t(), s.a - 1);
      t.records.push_back(make_record(t.records.size() + 1, s.a - 1, half, half, true));
      exps.push_back(s.a - 1);
      t.records.push_back(make_record(t.records.size() + 1, 0, half, 0, false));
      exps.push_back(0);
      p = 0;
      q = half;
      break;
    }
    t.records.push_back(make_record(t.records.size() + 1, s.a, s.shifted, s.remainder, false));
    exps.push_back(s.a);
    p = std::move(s.remainder);
    q = std::move(s.shifted);
  }
  t.exponent_seq = ExponentSeq(std::move(exps));
  t.K = t.records.size();
  t.S = t.exponent_seq.shift_total();
  t.terminal = q;
  t.odd_gcd = odd_part(q);
  return t;
}

}  // namespace

StepRecord Trace::initial_row() const {
  return make_record(0, 0, q, p, false);
}

Trace cl_run(const BigInt& p, const BigInt& q, Convention convention) {
  if (p <= 0 || p >= q) throw std::invalid_argument("cl_run requires 0 < p < q");
  return run_pairs(p, q, convention);
}

CompactRun cl_run_compact(std::uint64_t p, std::uint64_t q, Convention convention) {
  if (p == 0 || p >= q) throw std::invalid_argument("cl_run_compact requires 0 < p < q");
  CompactRun out;
  while (true) {
    unsigned a = static_cast<unsigned>(__builtin_clzll(p) - __builtin_clzll(q));
    if ((p << a) > q) --a;
    const std::uint64_t shifted = p << a;
    const std::uint64_t r = q - shifted;
    ++out.K;
    out.S += a;
    if (r == 0) {
      if (a >= 1 && convention == Convention::canonical) {
        ++out.K;
        --out.S;
        out.terminal = shifted >> 1;
        out.rewritten = true;
      } else {
        out.terminal = shifted;
      }
      break;
    }
    p = r;
    q = shifted;
  }
  out.terminal_valuation = static_cast<std::uint32_t>(__builtin_ctzll(out.terminal));
  return out;
}

// -------------------------------------------------------------- expansion

Rational cf_eval(const ExponentSeq& seq) {
  if (seq.empty()) throw std::invalid_argument("cf_eval of empty sequence");
  Rational x(0);
  const auto& e = seq.exponents();
  for (auto it = e.rbegin(); it != e.rend(); ++it) {
    // h_a(x) = 1 / (2^a (1 + x))
    x = (Rational::pow2(*it) * (Rational(1) + x)).reciprocal();
  }
  return x;
}

ExponentSeq cf_expand(const Rational& x, std::size_t depth) {
  if (x <= Rational(0) || x > Rational(1))
    throw std::invalid_argument("cf_expand requires 0 < x <= 1");
  ExponentSeq full = run_pairs(x.num(), x.den(), Convention::canonical).exponent_seq;
  if (depth == 0 || depth >= full.size()) return full;
  std::vector<unsigned> cut(full.exponents().begin(),
                            full.exponents().begin() + static_cast<long>(depth));
  return ExponentSeq(std::move(cut));
}

IntMatrix2 cl_matrix(const ExponentSeq& seq) {
  IntMatrix2 m = IntMatrix2::identity();
  for (unsigned a : seq.exponents()) m = m * IntMatrix2::cl(a);
  return m;
}

ContinuantPair continuants(const ExponentSeq& seq) {
  if (seq.empty()) throw std::invalid_argument("continuants of empty sequence");
  ContinuantPair c;
  c.M = cl_matrix(seq);
  c.P = c.M.m01;
  c.Q = c.M.m11;
  mpz_gcd(c.g.get_mpz_t(), c.P.get_mpz_t(), c.Q.get_mpz_t());
  c.R = c.Q / c.g;
  return c;
}

// ------------------------------------------------------------------ costs

double log2_big(const BigInt& n) {
  if (n <= 0) throw std::domain_error("log2 of nonpositive integer");
  long e = 0;
  const double m = mpz_get_d_2exp(&e, n.get_mpz_t());
  return std::log2(m) + static_cast<double>(e);
}

namespace {
double log_big(const BigInt& n) { return log2_big(n) * std::numbers::ln2; }
}  // namespace

double CostVector::sigma() const { return static_cast<double>(S) * std::numbers::ln2; }
double CostVector::q() const { return 2.0 * log_big(Q); }
double CostVector::rho() const { return 2.0 * static_cast<double>(g_exp) * std::numbers::ln2; }
double CostVector::r() const { return 2.0 * log_big(R); }
double CostVector::q2() const { return 2.0 * static_cast<double>(q2_exp) * std::numbers::ln2; }

LftQuadruple lft_quadruple(const ExponentSeq& seq) {
  if (seq.empty()) throw std::invalid_argument("lft_quadruple of empty sequence");
  // Chain rule along the backward orbit: h'(0) = prod h'_{a_i}(x_i) with
  // x_i = h_{a_{i+1}} o ... o h_{a_k}(0) and h_a'(x) = -2^{-a}/(1+x)^2.
  Rational x(0);
  Rational deriv(1);
  const auto& e = seq.exponents();
  for (auto it = e.rbegin(); it != e.rend(); ++it) {
    const Rational onep = Rational(1) + x;
    deriv = deriv * -(Rational::pow2(-static_cast<long>(*it)) / (onep * onep));
    x = (Rational::pow2(*it) * onep).reciprocal();
  }
  LftQuadruple out;
  out.derivative_abs = deriv.abs();
  out.derivative_dyadic = dyadic_norm(deriv).value();
  out.det = Rational::pow2(static_cast<long>(seq.shift_total()));
  out.gcd_map = g2(x);
  return out;
}

CostVector cost_vector(const ExponentSeq& seq) {
  const ContinuantPair c = continuants(seq);
  CostVector cv;
  cv.K = seq.size();
  cv.S = seq.shift_total();
  cv.Q = c.Q;
  cv.R = c.R;
  cv.g_exp = dyadic_valuation(c.g).value();
  cv.q2_exp = dyadic_valuation(c.Q).value();

  const LftQuadruple quad = lft_quadruple(seq);
  const Rational Q2(c.Q * c.Q);
  const Rational R2(c.R * c.R);
  const Rational g2sq(c.g * c.g);
  const Rational dyadic_Q = Rational::pow2(2 * static_cast<long>(cv.q2_exp));

  auto check = [](const Rational& lhs, const Rational& rhs, const char* what) {
    if (!(lhs == rhs))
      throw InternalConsistencyError(std::string("cost identity failed: ") + what + ": " +
                                     lhs.to_string() + " != " + rhs.to_string());
  };
  check(Q2.reciprocal(), quad.derivative_abs / quad.det, "Q^-2 = |h'(0)|/d(h)");
  check(dyadic_Q, quad.det * quad.derivative_dyadic, "|Q|_2^-2 = d(h)|h'(0)|_2");
  check(R2.reciprocal(), quad.derivative_abs * quad.derivative_dyadic * quad.gcd_map,
        "R^-2 = |h'(0)||h'(0)|_2 G_2[h(0)]");
  check(g2sq, quad.det * quad.derivative_dyadic * quad.gcd_map,
        "g^2 = d(h)|h'(0)|_2 G_2[h(0)]");
  return cv;
}

bool within_step_bound(std::uint64_t K, double log2q) {
  return static_cast<double>(K) <= 2.0 * log2q + 2.0;
}

bool within_shift_bound(std::uint64_t S, double log2q) {
  return static_cast<double>(S) <= (2.0 * log2q + 2.0) * log2q;
}

}  // namespace clgcd
