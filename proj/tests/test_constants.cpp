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

#include "clgcd/constants.hpp"
#include "clgcd/dynamics.hpp"

using namespace clgcd;

TEST_SUITE("constants") {
  TEST_CASE("printed five-decimal values") {
    CHECK(std::abs(const_E() - 2.60045) < 1e-4);
    CHECK(std::abs(const_D() - 0.97693) < 1e-4);
    CHECK(std::abs(const_A() - 1.62352) < 1e-4);
    CHECK(std::abs(const_H_conjectured() - 1.33973) < 1e-4);
    CHECK(std::abs(2.0 / const_H_conjectured() - 1.49283) < 1e-4);
    CHECK(std::abs(const_D() / std::numbers::ln2 - 1.40942) < 1e-4);
  }

  TEST_CASE("E by integrating 2|log x| against the density") {
    // x = e^{-u}: E = int_0^inf 2u psi(e^{-u}) e^{-u} du
    auto f = [](double u) { return 2.0 * u * psi(std::exp(-u)) * std::exp(-u); };
    const double quad = gauss_legendre(f, 0.0, 60.0, 600);
    CHECK(quad == doctest::Approx(const_E()).epsilon(1e-11));
  }

  TEST_CASE("D as log 2 times the mean branch index") {
    double mean_a = 0;
    for (int a = 1; a < 200; ++a)
      mean_a += a * psi_mass(std::ldexp(1.0, -a - 1), std::ldexp(1.0, -a));
    CHECK(std::numbers::ln2 * mean_a == doctest::Approx(const_D()).epsilon(1e-12));
  }

  TEST_CASE("series bracket against the dilogarithm value") {
    // Li2(-1/2) = -0.4484142069236462...
    CHECK(entropy_bracket() ==
          doctest::Approx(std::numbers::pi * std::numbers::pi / 6 + 2 * -0.4484142069236462)
              .epsilon(1e-14));
    CHECK(std::abs(const_E(8) - const_E()) < 1e-3);
  }

  TEST_CASE("table identities") {
    const ConstantsTable t = m_table();
    CHECK(std::abs(t.A + t.D - t.E) < 1e-10);
    CHECK(std::abs(t.M.at("q") - t.E) < 1e-10);
    CHECK(std::abs(t.M.at("rho") - (2 * t.D - std::numbers::ln2)) < 1e-12);
    CHECK(std::abs(t.M.at("q2") - t.M.at("rho")) < 1e-12);
    CHECK(std::abs(t.M.at("sigma") - t.D) < 1e-15);
    CHECK(std::abs(t.M.at("r") - t.H_conj) < 1e-12);
    CHECK(std::abs(t.M.at("rho") - 1.26071) < 1e-4);
    CHECK(std::abs(t.D - t.B_conj - std::numbers::ln2) < 1e-15);
    CHECK(is_conjectural("rho"));
    CHECK(is_conjectural("r"));
    CHECK(is_conjectural("q2"));
    CHECK_FALSE(is_conjectural("sigma"));
    CHECK_FALSE(is_conjectural("q"));
  }
}
