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

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "clgcd/cl_core.hpp"
#include "clgcd/dynamics.hpp"

using namespace clgcd;

TEST_SUITE("dynamics") {
  TEST_CASE("branches") {
    CHECK(branch_of(Rational(1)) == 0);
    CHECK(branch_of(Rational(3, 8)) == 1);
    CHECK(branch_of(Rational(1, 4)) == 2);
    CHECK_THROWS(static_cast<void>(branch_of(Rational(0))));

    auto [a, y] = t_apply(Rational(1, 2));
    CHECK(a == 1);
    CHECK(y.is_zero());
    std::tie(a, y) = t_apply(Rational(31, 75));
    CHECK(a == 1);
    CHECK(y == Rational(13, 62));
    std::tie(a, y) = t_apply(Rational(2, 5));
    CHECK(a == 1);
    CHECK(y == Rational(1, 4));
  }

  TEST_CASE("inverse branches") {
    for (unsigned a = 0; a <= 20; ++a) {
      CHECK(inverse_branch(a, Rational(0)) == Rational::pow2(-static_cast<long>(a)));
      CHECK(inverse_branch(a, Rational(1)) == Rational::pow2(-static_cast<long>(a) - 1));
    }
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> d(1, 1000000);
    for (int i = 0; i < 10000; ++i) {
      long p = d(rng), q = d(rng);
      if (p > q) std::swap(p, q);
      const Rational x(p, q);
      const auto [a, y] = t_apply(x);
      CHECK(inverse_branch(a, y) == x);
    }
  }

  TEST_CASE("density") {
    const double l = std::log(4.0 / 3.0);
    CHECK(psi(0) == doctest::Approx(1.0 / (2.0 * l)).epsilon(1e-14));
    CHECK(psi(0) == doctest::Approx(1.738030).epsilon(1e-6));
    CHECK(psi(1) == doctest::Approx(0.579343).epsilon(1e-6));
    CHECK(std::abs(gauss_legendre(psi, 0.0, 1.0) - 1.0) < 1e-10);
    CHECK(std::abs(psi_mass(0.0, 1.0) - 1.0) < 1e-14);
    for (unsigned a = 0; a < 10; ++a) {
      const double lo = std::ldexp(1.0, -static_cast<int>(a) - 1);
      const double hi = std::ldexp(1.0, -static_cast<int>(a));
      CHECK(gauss_legendre(psi, lo, hi, 8) == doctest::Approx(psi_mass(lo, hi)).epsilon(1e-12));
    }
  }

  TEST_CASE("transfer operator on closed forms") {
    const CollocationGrid grid(64);
    const auto fixed = transfer_apply(psi, grid, 1.0, 0.0, 1e-10, psi(0));
    double worst = 0;
    for (std::size_t j = 0; j < grid.size(); ++j)
      worst = std::max(worst, std::abs(fixed[j] - psi(grid.nodes()[j])));
    CHECK(worst < 1e-8);

    auto one = [](double) { return 1.0; };
    const auto h1 = transfer_apply(one, grid, 1.0, 0.0, 1e-13);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double x = grid.nodes()[j];
      CHECK(h1[j] == doctest::Approx(2.0 / ((1 + x) * (1 + x))).epsilon(1e-12));
    }
    const auto h2 = transfer_apply(one, grid, 2.0, 0.0, 1e-14);
    CHECK(grid.nodes()[0] == 0.0);
    CHECK(h2[0] == doctest::Approx(4.0 / 3.0).epsilon(1e-13));

    std::vector<double> samples(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) samples[j] = psi(grid.nodes()[j]);
    const auto interp = transfer_apply(samples, grid, 1.0, 0.0, 1e-12);
    for (std::size_t j = 0; j < grid.size(); ++j)
      CHECK(std::abs(interp[j] - samples[j]) < 1e-9);
  }

  TEST_CASE("orbits") {
    const OrbitSample o = orbit(Rational(1, 2), 10);
    CHECK(o.length() == 1);
    CHECK(o.steps[0].branch == 1);
    CHECK(o.final_point.is_zero());

    const OrbitSample o2 = orbit(Rational(2, 5), 10);
    REQUIRE(o2.length() == 2);
    CHECK(o2.steps[0].branch == 1);
    CHECK(o2.steps[1].branch == 2);

    const OrbitSample o3 = orbit(Rational(31, 75), 100);
    std::vector<unsigned> branches;
    for (const auto& s : o3.steps) branches.push_back(s.branch);
    CHECK(branches == cl_run(31, 75, Convention::greedy).exponent_seq.exponents());

    const OrbitSample cut = orbit(Rational(31, 75), 2);
    CHECK(cut.length() == 2);
    CHECK(cut.final_point == Rational(10, 52));
  }

  TEST_CASE("conjugacy with the pseudo-division for q <= 500") {
    for (long q = 2; q <= 500; ++q)
      for (long p = 1; p < q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        const OrbitSample o = orbit(Rational(p, q), 10000);
        const Trace t = cl_run(p, q, Convention::greedy);
        const auto& e = t.exponent_seq.exponents();
        REQUIRE(o.length() == e.size());
        for (std::size_t i = 0; i < e.size(); ++i) CHECK(o.steps[i].branch == e[i]);
      }
  }

  TEST_CASE("trajectory averages against the rational orbit") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> d(2, 1L << 40);
    const double ln2 = std::numbers::ln2;
    for (int i = 0; i < 200; ++i) {
      long q = d(rng), p = d(rng) % q;
      if (p == 0 || std::gcd(p, q) != 1) continue;
      const TrajectoryAverages avg = trajectory_averages(p, q);
      const OrbitSample o = orbit(Rational(p, q), 100000);
      double dyadic = 0;
      for (const auto& s : o.steps) dyadic += s.dyadic_log;
      const double K = static_cast<double>(o.length());
      CHECK(avg.e2 == doctest::Approx(dyadic / K).epsilon(1e-12));
      const CostVector c =
          cost_vector(cl_run(p, q, Convention::greedy).exponent_seq);
      CHECK(avg.e2 == doctest::Approx(c.q2() / K).epsilon(1e-12));
      CHECK(avg.rho_rate == doctest::Approx(c.rho() / K).epsilon(1e-12));
      CHECK(avg.shift_rate == doctest::Approx(static_cast<double>(c.S) / K));
      CHECK(avg.entropy == doctest::Approx(2.0 * std::log(static_cast<double>(q)) / K));
      CHECK(avg.valuation_rate * K ==
            doctest::Approx(static_cast<double>(c.S) - c.rho() / (2 * ln2)));
    }
  }

  TEST_CASE("birkhoff sampling is reproducible and thread independent") {
    const auto pairs = birkhoff_chunk_pairs(128, 5, 0, 50);
    CHECK(pairs == birkhoff_chunk_pairs(128, 5, 0, 50));
    CHECK(pairs != birkhoff_chunk_pairs(128, 5, 1, 50));
    for (const auto& [p, q] : pairs) {
      CHECK(bit_length(q) == 128);
      CHECK(p >= 1);
      CHECK(p < q);
    }
    const BirkhoffReport a = birkhoff_estimates(96, 5000, 42);
    const BirkhoffReport b = birkhoff_estimates_serial(96, 5000, 42);
    CHECK(a.e2.mean() == doctest::Approx(b.e2.mean()).epsilon(1e-13));
    CHECK(a.e2.std_error() == doctest::Approx(b.e2.std_error()).epsilon(1e-10));
    CHECK(a.entropy.mean() == doctest::Approx(b.entropy.mean()).epsilon(1e-13));
    CHECK(a.shift_rate.mean() == doctest::Approx(b.shift_rate.mean()).epsilon(1e-13));
    CHECK(a.valuation_rate.mean() ==
          doctest::Approx(b.valuation_rate.mean()).epsilon(1e-13));
    CHECK(a.e2.count() == 5000);
    CHECK_THROWS(static_cast<void>(birkhoff_estimates(32, 10, 1)));
    CHECK_THROWS(static_cast<void>(birkhoff_estimates(128, 0, 1)));
  }

  TEST_CASE("birkhoff estimates at 256 bits") {
    const BirkhoffReport r = birkhoff_estimates(256, 10000, 1978);
    CHECK(std::abs(r.shift_rate.mean() - 1.4094) < 0.01);
    CHECK(std::abs(r.entropy.mean() - 1.3397) < 0.02);
    CHECK(std::abs(r.e2.mean() - 1.2607) < 0.02);
    CHECK(std::abs(r.valuation_rate.mean() - 0.5) < 0.02);
  }
}
