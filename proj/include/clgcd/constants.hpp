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

#ifndef CLGCD_CONSTANTS_HPP
#define CLGCD_CONSTANTS_HPP

#include <map>
#include <string>

namespace clgcd {

/// pi^2/6 + 2 sum_{k=1}^{terms} (-1)^k / (k^2 2^k); the bracket shared by E and H.
[[nodiscard]] double entropy_bracket(int terms = 64);

/// E = E_psi[2|log x|], from the alternating series. The truncation error is
/// below 2^{-terms}/terms^2 (times 1/log(4/3)).
[[nodiscard]] double const_E(int terms = 64);
/// D = log 2 * log(3/2) / log(4/3).
[[nodiscard]] double const_D();
/// A = E - D, the entropy of the plain CL system.
[[nodiscard]] double const_A();
/// B under the conjecture D - B = log 2.
[[nodiscard]] double const_B_conjectured();
/// Entropy of the extended system under the conjecture, from the explicit
/// formula. Throws std::logic_error if it disagrees with A - B_conj.
[[nodiscard]] double const_H_conjectured();

struct ConstantsTable {
  double E = 0, D = 0, A = 0;
  double B_conj = 0;  // conjectural
  double H_conj = 0;  // conjectural
  double two_over_H = 0;
  /// M(c) for c in {sigma, q, rho, r, q2}; rho, r, q2 depend on the conjecture.
  std::map<std::string, double> M;
};

[[nodiscard]] ConstantsTable m_table();

/// Whether M(cost) depends on the value of B.
[[nodiscard]] bool is_conjectural(const std::string& cost);

}  // namespace clgcd

#endif  // CLGCD_CONSTANTS_HPP
