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

#ifndef CLGCD_EXPERIMENTS_HPP
#define CLGCD_EXPERIMENTS_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "clgcd/cl_core.hpp"
#include "clgcd/dynamics.hpp"
#include "clgcd/stats.hpp"

namespace clgcd {

enum class OmegaMode { exhaustive, sampled };

/// Largest N for which exhaustive enumeration of Omega_N is accepted.
inline constexpr std::uint64_t kExhaustiveLimit = 100000;

struct OmegaSpec {
  std::uint64_t N = 0;
  OmegaMode mode = OmegaMode::exhaustive;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
  bool all_pairs = false;  // drop the coprimality filter (exploration only)

  /// Throws std::invalid_argument for N < 2, a sampled OmegaSpec without samples,
  /// or exhaustive mode beyond kExhaustiveLimit.
  void validate() const;
};

[[nodiscard]] std::string to_string(OmegaMode m);

/// Calls visit(p, q) for every pair described by spec, in a deterministic order.
/// Exhaustive: q ascending, then p ascending. Sampled: a pair drawn uniformly
/// from all 0 < p < q <= N, redrawn until coprime, so each draw is uniform
/// on Omega_N.
void omega_for_each(const OmegaSpec& spec,
                    const std::function<void(std::uint64_t, std::uint64_t)>& visit);
[[nodiscard]] std::vector<std::pair<std::uint64_t, std::uint64_t>> omega_pairs(
    const OmegaSpec& spec);

/// Cost names in report order.
inline constexpr std::array<const char*, 7> kCostNames = {"K", "S", "sigma", "q",
                                                          "rho", "r", "q2"};
inline constexpr std::size_t kCostCount = kCostNames.size();

/// Log-costs of one canonical run, in kCostNames order.
using CostSample = std::array<double, kCostCount>;

/// Costs of (p, q) from the machine-word kernel, using
/// (P, Q) = 2^S (p, q) / terminal.
[[nodiscard]] CostSample cost_sample(std::uint64_t p, std::uint64_t q);

/// Per-cost moments plus covariance of every cost with K.
struct CostAccumulator {
  std::array<Moments, kCostCount> moments;
  std::array<CoMoments, kCostCount> with_K;
  std::uint64_t bound_violations = 0;  // pairs breaking a worst-case bound

  void add(const CostSample& s);
  void merge(const CostAccumulator& other);
};

struct ExperimentReport {
  OmegaSpec spec;
  std::uint64_t pairs = 0;
  CostAccumulator acc;

  [[nodiscard]] double mean(const std::string& cost) const;
  [[nodiscard]] double std_error(const std::string& cost) const;
  /// mean(cost) / mean(K)
  [[nodiscard]] double ratio(const std::string& cost) const;
};

/// Worst-case bound check for one pair under both conventions.
[[nodiscard]] bool pair_within_bounds(std::uint64_t p, std::uint64_t q);

/// Mean costs over Omega_N. Parallel over q (exhaustive) or sample chunks.
[[nodiscard]] ExperimentReport mean_costs(const OmegaSpec& spec);
/// Straight-loop reference for mean_costs.
[[nodiscard]] ExperimentReport mean_costs_serial(const OmegaSpec& spec);

/// Theoretical limit of mean(c)/mean(K) (for K itself: 2/H, the log N slope).
[[nodiscard]] double theory_ratio(const std::string& cost);

struct SlopeReport {
  std::vector<std::uint64_t> ladder;  // N_max/16, N_max
  std::vector<ExperimentReport> rungs;
  std::map<std::string, double> slopes;             // per log N
  std::map<std::string, double> slope_errors;
  std::map<std::string, double> ratios;             // slope(c)/slope(K)
  std::map<std::string, double> ratio_errors;
  std::map<std::string, double> targets;            // theory for ratios; 2/H for K
  std::map<std::string, double> deviations;         // relative
};

/// Difference-quotient slopes (E_N[c] - E_{N/16}[c]) / log 16 on sampled rungs.
[[nodiscard]] SlopeReport slope_estimate(std::uint64_t N_max, std::uint64_t samples_per_rung,
                                         std::uint64_t seed);

struct DirichletResult {
  double s = 0;
  std::uint64_t N = 0;
  double partial_sum = 0;  // sum over q <= N of phi(q) q^{-2s}, including q = 1
  double omega_sum = 0;    // the same without q = 1: pairs 0 < p < q only
  double zeta_ratio = 0;   // zeta(2s-1) / zeta(2s)
  double deviation = 0;    // |partial_sum - zeta_ratio|
};

/// Riemann zeta for real x > 1 by direct summation with an Euler-Maclaurin tail.
[[nodiscard]] double zeta(double x);
/// Euler phi for 0..N by sieve.
[[nodiscard]] std::vector<std::uint64_t> totients(std::uint64_t N);
[[nodiscard]] DirichletResult dirichlet_check(double s, std::uint64_t N);

struct WorstCaseRow {
  unsigned n = 0;
  std::size_t K_greedy = 0, K_canonical = 0;
  std::uint64_t S_greedy = 0, S_canonical = 0;
  bool within_bounds = true;
};

struct WorstCaseScan {
  std::vector<WorstCaseRow> rows;
  double alpha_greedy = 0, beta_greedy = 0;  // K ~ alpha n + beta
  double alpha_canonical = 0, beta_canonical = 0;
  double gamma_greedy = 0, gamma_canonical = 0;  // S ~ gamma n^2 + ...
  bool all_within_bounds = true;
};

/// Runs the family (1, 2^n - 1) for 2 <= n <= n_max.
[[nodiscard]] WorstCaseScan worstcase_scan(unsigned n_max);

/// Two estimators of B + D: the Birkhoff mean of 2 log|x_i|_2 along random
/// orbits, and slope(rho)/slope(K) on the sampled ladder.
struct ConjectureResult {
  BirkhoffReport birkhoff;
  SlopeReport slopes;
  double target = 0;  // B + D under D - B = log 2
  double e2 = 0, e2_stderr = 0;
  double slope_ratio = 0, slope_stderr = 0;
  double D = 0;
  double B_from_e2 = 0, B_from_slope = 0;
  double deviation_e2 = 0, deviation_slope = 0;  // relative to target
  double difference = 0, combined_stderr = 0;
  bool within_tolerance = false;  // both within 5% of target
  bool agree = false;             // |difference| <= 3 combined_stderr
};

[[nodiscard]] ConjectureResult conjecture_test(std::uint64_t bits, std::uint64_t samples,
                                               std::uint64_t N_max,
                                               std::uint64_t slope_samples,
                                               std::uint64_t seed);

}  // namespace clgcd

#endif  // CLGCD_EXPERIMENTS_HPP
