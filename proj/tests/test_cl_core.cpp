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

#include <doctest.h>

#include <numeric>
#include <random>

#include "clgcd/cl_core.hpp"

using namespace clgcd;

namespace {

std::vector<long> column(const Trace& t, int which) {
  std::vector<long> out;
  auto pick = [&](const StepRecord& r) -> long {
    switch (which) {
      case 0: return r.shifted.get_si();
      case 1: return r.remainder.get_si();
      default: return static_cast<long>(r.val_gcd.value());
    }
  };
  out.push_back(pick(t.initial_row()));
  for (const auto& r : t.records) out.push_back(pick(r));
  return out;
}

// Plain-integer pseudo-division loop, kept apart from the library kernels.
std::vector<unsigned> naive_exponents(std::uint64_t p, std::uint64_t q) {
  std::vector<unsigned> out;
  while (p != 0) {
    unsigned a = 0;
    while ((p << (a + 1)) <= q) ++a;
    const std::uint64_t shifted = p << a;
    out.push_back(a);
    const std::uint64_t r = q - shifted;
    q = shifted;
    p = r;
  }
  return out;
}

ExponentSeq random_sequence(std::mt19937_64& rng, bool canonical) {
  std::uniform_int_distribution<int> len(1, 30), exp(0, 8);
  std::vector<unsigned> e(static_cast<std::size_t>(len(rng)));
  for (auto& a : e) a = static_cast<unsigned>(exp(rng));
  if (canonical) e.back() = 0;
  return ExponentSeq(std::move(e));
}

}  // namespace

TEST_SUITE("cl_core") {
  TEST_CASE("single steps") {
    Step s = cl_step(31, 75);
    CHECK(s.a == 1);
    CHECK(s.remainder == 13);
    CHECK(s.shifted == 62);
    s = cl_step(13, 62);
    CHECK(s.a == 2);
    CHECK(s.remainder == 10);
    CHECK(s.shifted == 52);
    s = cl_step(1, 1);
    CHECK(s.a == 0);
    CHECK(s.remainder == 0);
    CHECK(s.shifted == 1);
    CHECK_THROWS_AS(static_cast<void>(cl_step(5, 3)), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(cl_step(0, 3)), std::invalid_argument);
  }

  TEST_CASE("execution table of (31, 75)") {
    const Trace t = cl_run(31, 75, Convention::canonical);
    CHECK(column(t, 0) == std::vector<long>{75, 62, 52, 40, 24, 16, 8, 8});
    CHECK(column(t, 1) == std::vector<long>{31, 13, 10, 12, 16, 8, 8, 0});
    CHECK(column(t, 2) == std::vector<long>{0, 0, 1, 2, 3, 3, 3, 3});
    CHECK(t.exponent_seq == ExponentSeq({1, 2, 2, 1, 0, 0, 0}));
    CHECK(t.K == 7);
    CHECK(t.S == 6);
    CHECK(t.terminal == 8);
    CHECK(t.odd_gcd == 1);
    CHECK(t.records.back().val_remainder.is_infinite());
    CHECK(t.records[5].forced);

    const Trace g = cl_run(31, 75, Convention::greedy);
    CHECK(g.exponent_seq == ExponentSeq({1, 2, 2, 1, 0, 1}));
    CHECK(g.K == 6);
    CHECK(g.S == 7);
    CHECK(g.terminal == 16);
  }

  TEST_CASE("(1, 2) under both conventions") {
    const Trace c = cl_run(1, 2, Convention::canonical);
    CHECK(c.exponent_seq == ExponentSeq({0, 0}));
    CHECK(c.K == 2);
    CHECK(c.S == 0);
    CHECK(c.terminal == 1);
    const Trace g = cl_run(1, 2, Convention::greedy);
    CHECK(g.exponent_seq == ExponentSeq({1}));
    CHECK(g.K == 1);
    CHECK(g.S == 1);
    CHECK(g.terminal == 2);
    CHECK_THROWS(static_cast<void>(cl_run(3, 3)));
  }

  TEST_CASE("evaluation and continuants") {
    CHECK(cf_eval(ExponentSeq({1, 2, 2, 1, 0, 0, 0})) == Rational(31, 75));
    CHECK(cf_eval(ExponentSeq({0})) == Rational(1));
    CHECK(cf_eval(ExponentSeq({1, 2})) == Rational(2, 5));

    ContinuantPair c = continuants(ExponentSeq({1, 2}));
    CHECK(c.P == 4);
    CHECK(c.Q == 10);
    CHECK(c.g == 2);
    CHECK(c.R == 5);
    c = continuants(ExponentSeq({0}));
    CHECK(c.P == 1);
    CHECK(c.Q == 1);
    CHECK(c.g == 1);
    CHECK(c.R == 1);
    c = continuants(ExponentSeq({1, 1}));
    CHECK(c.P == 2);
    CHECK(c.Q == 6);
    CHECK(c.g == 2);
    CHECK(c.R == 3);
    c = continuants(ExponentSeq({2, 0}));
    CHECK(c.P == 1);
    CHECK(c.Q == 8);
    CHECK(c.g == 1);
    CHECK(c.R == 8);
  }

  TEST_CASE("expansion") {
    CHECK(cf_expand(Rational(31, 75)) == ExponentSeq({1, 2, 2, 1, 0, 0, 0}));
    CHECK(cf_expand(Rational(31, 75), 3) == ExponentSeq({1, 2, 2}));
    CHECK(cf_expand(Rational(1)) == ExponentSeq({0}));
    CHECK_THROWS(static_cast<void>(cf_expand(Rational(3, 2))));
    CHECK(ExponentSeq::parse("1,2,0") == ExponentSeq({1, 2, 0}));
    CHECK_THROWS(static_cast<void>(ExponentSeq::parse("1,,2")));
    CHECK_THROWS(static_cast<void>(ExponentSeq::parse("-1")));
  }

  TEST_CASE("cost vector examples") {
    CostVector c = cost_vector(ExponentSeq({1, 2}));
    CHECK(c.S == 3);
    CHECK(c.Q * c.Q == 100);
    CHECK(c.q2_exp == 1);
    CHECK(c.R * c.R == 25);
    CHECK(c.g_exp == 1);
    const LftQuadruple quad = lft_quadruple(ExponentSeq({1, 2}));
    CHECK(quad.det == Rational(8));
    CHECK(quad.derivative_abs == Rational(2, 25));

    c = cost_vector(ExponentSeq({0}));
    CHECK(c.S == 0);
    CHECK(c.Q == 1);
    CHECK(c.g_exp == 0);
    CHECK(c.R == 1);
    CHECK(c.q2_exp == 0);

    c = cost_vector(ExponentSeq({2, 0}));
    CHECK(c.S == 2);
    CHECK(c.Q == 8);
    CHECK(c.g_exp == 0);
    CHECK(c.R == 8);
    CHECK(c.q2_exp == 3);
  }

  TEST_CASE("gcd oracle and reconstruction for q <= 400") {
    for (long q = 2; q <= 400; ++q)
      for (long p = 1; p < q; ++p) {
        const Trace t = cl_run(p, q);
        CHECK(t.odd_gcd == odd_part(BigInt(std::gcd(p, q))));
        if (std::gcd(p, q) == 1) CHECK(cf_eval(t.exponent_seq) == Rational(p, q));
      }
  }

  TEST_CASE("odd gcd of large random pairs") {
    std::mt19937_64 rng(3);
    gmp_randclass gr(gmp_randinit_default);
    gr.seed(7);
    for (int i = 0; i < 300; ++i) {
      BigInt g = gr.get_z_bits(40) + 1;
      BigInt p = g * BigInt(gr.get_z_bits(100) + 1);
      BigInt q = g * BigInt(gr.get_z_bits(120) + 1);
      if (p == q) continue;
      if (p > q) std::swap(p, q);
      BigInt e;
      mpz_gcd(e.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
      CHECK(cl_run(p, q).odd_gcd == odd_part(e));
      CHECK(cf_eval(cl_run(p, q).exponent_seq) == Rational(p, q));
    }
  }

  TEST_CASE("step count agrees with a plain loop") {
    for (std::uint64_t q = 2; q <= 300; ++q)
      for (std::uint64_t p = 1; p < q; ++p) {
        const auto naive = naive_exponents(p, q);
        const Trace g = cl_run(static_cast<unsigned long>(p), static_cast<unsigned long>(q),
                               Convention::greedy);
        CHECK(g.exponent_seq.exponents() == naive);
      }
  }

  TEST_CASE("worst-case bounds and convention bridge") {
    for (std::uint64_t q = 2; q <= 600; ++q)
      for (std::uint64_t p = 1; p < q; ++p) {
        const Trace g = cl_run(static_cast<unsigned long>(p), static_cast<unsigned long>(q),
                               Convention::greedy);
        const Trace c = cl_run(static_cast<unsigned long>(p), static_cast<unsigned long>(q),
                               Convention::canonical);
        const double lq = std::log2(static_cast<double>(q));
        CHECK(within_step_bound(g.K, lq));
        CHECK(within_step_bound(c.K, lq));
        CHECK(within_shift_bound(g.S, lq));
        CHECK(within_shift_bound(c.S, lq));
        const bool rewritten = g.exponent_seq.exponents().back() >= 1;
        CHECK(c.K == g.K + (rewritten ? 1 : 0));
        CHECK(c.S + (rewritten ? 1 : 0) == g.S);
        CHECK(c.exponent_seq == g.exponent_seq.canonicalized());
        CHECK(cf_eval(c.exponent_seq) == cf_eval(g.exponent_seq));

        const CompactRun cg = cl_run_compact(p, q, Convention::greedy);
        const CompactRun cc = cl_run_compact(p, q, Convention::canonical);
        CHECK(cg.K == g.K);
        CHECK(cg.S == g.S);
        CHECK(cg.terminal == g.terminal.get_ui());
        CHECK(cc.K == c.K);
        CHECK(cc.S == c.S);
        CHECK(cc.terminal == c.terminal.get_ui());
        CHECK(cc.rewritten == rewritten);
      }
  }

  TEST_CASE("step maximality") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::uint64_t> d(2, 1u << 30);
    for (int i = 0; i < 500; ++i) {
      std::uint64_t q = d(rng), p = d(rng) % q;
      if (p == 0) p = 1;
      const Trace t = cl_run(static_cast<unsigned long>(p), static_cast<unsigned long>(q));
      BigInt prev = t.q;
      BigInt cur = t.p;
      for (const auto& r : t.records) {
        if (!r.forced && !(r.index == t.K && t.records[r.index - 2].forced)) {
          BigInt next;
          mpz_mul_2exp(next.get_mpz_t(), cur.get_mpz_t(), r.exponent + 1);
          CHECK(next > prev);
        }
        CHECK(r.shifted + r.remainder == prev);
        prev = r.shifted;
        cur = r.remainder;
      }
    }
  }

  TEST_CASE("continuant coherence") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 2000; ++i) {
      const ExponentSeq seq = random_sequence(rng, i % 2 == 0);
      const ContinuantPair c = continuants(seq);
      CHECK(Rational(c.P, c.Q) == cf_eval(seq));
      CHECK(mpz_popcount(c.g.get_mpz_t()) == 1);
      CHECK(abs(c.M.det()) == BigInt(1) << static_cast<mp_bitcnt_t>(seq.shift_total()));
      CHECK(c.R == cf_eval(seq).den());
    }
  }

  TEST_CASE("cost identities on random sequences") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 2000; ++i) {
      const ExponentSeq seq = random_sequence(rng, true);
      CostVector c;
      REQUIRE_NOTHROW(c = cost_vector(seq));
      CHECK(c.K == seq.size());
      CHECK(c.S == seq.shift_total());
      CHECK(c.sigma() == doctest::Approx(static_cast<double>(c.S) * std::log(2.0)));
      // |Q|_2^{-2} = g^2 * 2^{2 delta(R)}
      CHECK(c.q2_exp == c.g_exp + dyadic_valuation(c.R).value());
    }
  }
}
