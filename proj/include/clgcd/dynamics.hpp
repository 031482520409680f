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

#ifndef CLGCD_DYNAMICS_HPP
#define CLGCD_DYNAMICS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "clgcd/numbers.hpp"
#include "clgcd/spectral.hpp"
#include "clgcd/stats.hpp"

namespace clgcd {

/// Branch a with 2^{-a-1} < x <= 2^{-a}. Dyadic points 2^{-a-1} go to the
/// deeper branch a+1, matching the max rule of the pseudo-division.
[[nodiscard]] unsigned branch_of(const Rational& x);

/// (a, T_a(x)) with T_a(x) = 1/(2^a x) - 1.
[[nodiscard]] std::pair<unsigned, Rational> t_apply(const Rational& x);

/// h_a(x) = 1/(2^a (1 + x)).
[[nodiscard]] Rational inverse_branch(unsigned a, const Rational& x);

/// Invariant density 1/(log(4/3) (x+1)(x+2)).
[[nodiscard]] double psi(double x);
/// Closed-form integral of psi over [lo, hi].
[[nodiscard]] double psi_mass(double lo, double hi);

/// Composite 8-point Gauss-Legendre rule on [lo, hi].
[[nodiscard]] double gauss_legendre(const std::function<double(double)>& f, double lo, double hi,
                                    std::size_t panels = 64);

/// H_{t,v} f sampled at the grid nodes, where f is a callable on [0,1].
[[nodiscard]] std::vector<double> transfer_apply(const std::function<double(double)>& f,
                                                 const CollocationGrid& grid, double t, double v,
                                                 double tail_tol, double f_sup = 1.0);
/// Same, with f given by its samples on the grid and interpolated between nodes.
[[nodiscard]] std::vector<double> transfer_apply(std::span<const double> samples,
                                                 const CollocationGrid& grid, double t, double v,
                                                 double tail_tol);

struct OrbitStep {
  Rational x;
  unsigned branch = 0;
  double dyadic_log = 0;  // 2 log |x|_2
};

struct OrbitSample {
  std::vector<OrbitStep> steps;
  Rational final_point;  // 0 when the orbit terminated

  [[nodiscard]] std::size_t length() const { return steps.size(); }
};

/// Iterates t_apply from x0 in (0,1) until 0 or max_steps.
[[nodiscard]] OrbitSample orbit(const Rational& x0, std::size_t max_steps);

/// Per-trajectory time averages of one random rational orbit.
struct TrajectoryAverages {
  double shift_rate = 0;      // S/K
  double entropy = 0;         // 2 log q / K
  double e2 = 0;              // (1/K) sum 2 log|x_i|_2
  double rho_rate = 0;        // 2 log g(P,Q) / K
  double valuation_rate = 0;  // delta(g_K)/K
};

/// Orbit averages for the rational p/q (0 < p < q), computed on the integer
/// pair without reducing intermediate fractions.
[[nodiscard]] TrajectoryAverages trajectory_averages(const BigInt& p, const BigInt& q);

struct BirkhoffReport {
  std::uint64_t bits = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  Moments shift_rate;
  Moments entropy;
  Moments e2;
  Moments rho_rate;
  Moments valuation_rate;
};

/// Draws `samples` coprime pairs with q uniform on [2^{bits-1}, 2^bits) and p
/// uniform on [1, q-1], and averages the trajectory statistics. Parallel over
/// sample chunks.
[[nodiscard]] BirkhoffReport birkhoff_estimates(std::uint64_t bits, std::uint64_t samples,
                                                std::uint64_t seed);
/// Straight-loop reference for birkhoff_estimates.
[[nodiscard]] BirkhoffReport birkhoff_estimates_serial(std::uint64_t bits,
                                                       std::uint64_t samples,
                                                       std::uint64_t seed);

/// The coprime pairs drawn for one sample chunk, in draw order.
[[nodiscard]] std::vector<std::pair<BigInt, BigInt>> birkhoff_chunk_pairs(
    std::uint64_t bits, std::uint64_t seed, std::uint64_t chunk, std::uint64_t count);

}  // namespace clgcd

#endif  // CLGCD_DYNAMICS_HPP
