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

#include "clgcd/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace clgcd {

namespace {
const double kLog2 = std::numbers::ln2;
const double kLog3 = std::log(3.0);
const double kLog43 = 2.0 * kLog2 - kLog3;
}  // namespace

double entropy_bracket(int terms) {
  if (terms < 1) throw std::invalid_argument("const_E needs at least one term");
  // Sum smallest terms first.
  double s = 0.0;
  for (int k = terms; k >= 1; --k) {
    const double kd = k;
    const double term = 1.0 / (kd * kd * std::exp2(kd));
    s += (k % 2 == 0) ? term : -term;
  }
  return std::numbers::pi * std::numbers::pi / 6.0 + 2.0 * s;
}

double const_E(int terms) { return entropy_bracket(terms) / kLog43; }

double const_D() { return kLog2 * (kLog3 - kLog2) / kLog43; }

double const_A() { return const_E() - const_D(); }

double const_B_conjectured() { return const_D() - kLog2; }

double const_H_conjectured() {
  const double h = (entropy_bracket() - kLog2 * (3.0 * kLog3 - 4.0 * kLog2)) / kLog43;
  const double via_ab = const_A() - const_B_conjectured();
  if (std::abs(h - via_ab) > 1e-12)
    throw std::logic_error("entropy formula disagrees with A - B");
  return h;
}

ConstantsTable m_table() {
  ConstantsTable t;
  t.E = const_E();
  t.D = const_D();
  t.A = t.E - t.D;
  t.B_conj = const_B_conjectured();
  t.H_conj = const_H_conjectured();
  t.two_over_H = 2.0 / t.H_conj;
  t.M["sigma"] = t.D;
  t.M["q"] = t.A + t.D;
  t.M["rho"] = t.B_conj + t.D;
  t.M["r"] = t.A - t.B_conj;
  t.M["q2"] = t.B_conj + t.D;
  return t;
}

bool is_conjectural(const std::string& cost) {
  return cost == "rho" || cost == "r" || cost == "q2";
}

}  // namespace clgcd
