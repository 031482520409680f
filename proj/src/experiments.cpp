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

#include "clgcd/experiments.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "clgcd/constants.hpp"

namespace clgcd {

namespace {

std::size_t cost_index(const std::string& cost) {
  for (std::size_t i = 0; i < kCostCount; ++i)
    if (cost == kCostNames[i]) return i;
  throw std::invalid_argument("unknown cost '" + cost + "'");
}

std::uint64_t chunk_count(std::uint64_t samples) {
  return (samples + kSampleChunk - 1) / kSampleChunk;
}

// Pair index k in [0, N(N-1)/2) -> (p, q), ordered by q then p.
std::pair<std::uint64_t, std::uint64_t> pair_at(std::uint64_t k) {
  // j = q - 1 is the largest j with j(j-1)/2 <= k.
  auto j = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(k))) / 2);
  while (j * (j - 1) / 2 > k) --j;
  while ((j + 1) * j / 2 <= k) ++j;
  return {k - j * (j - 1) / 2 + 1, j + 1};
}

// Draws the pairs of one sample chunk into out: uniform over all pairs
// 0 < p < q <= N, rejected until coprime.
void sampled_chunk(const OmegaSpec& spec, std::uint64_t chunk,
                   std::vector<std::pair<std::uint64_t, std::uint64_t>>& out) {
  const std::uint64_t begin = chunk * kSampleChunk;
  const std::uint64_t count = std::min(kSampleChunk, spec.sample_count - begin);
  auto engine = chunk_engine(spec.seed, chunk);
  std::uniform_int_distribution<std::uint64_t> draw(0, spec.N * (spec.N - 1) / 2 - 1);
  out.clear();
  while (out.size() < count) {
    const auto [p, q] = pair_at(draw(engine));
    if (spec.all_pairs || std::gcd(p, q) == 1) out.emplace_back(p, q);
  }
}

// mask[p] = 1 iff gcd(p, q) = 1, for 0 <= p < q; sieved by the prime factors of q.
void coprime_mask(std::uint64_t q, std::vector<char>& mask) {
  mask.assign(q, 1);
  mask[0] = q == 1 ? 1 : 0;
  std::uint64_t rest = q;
  auto strike = [&](std::uint64_t prime) {
    for (std::uint64_t m = prime; m < q; m += prime) mask[m] = 0;
  };
  for (std::uint64_t f = 2; f * f <= rest; ++f) {
    if (rest % f != 0) continue;
    strike(f);
    while (rest % f == 0) rest /= f;
  }
  if (rest > 1) strike(rest);
}

}  // namespace

void OmegaSpec::validate() const {
  if (N < 2) throw std::invalid_argument("Omega_N needs N >= 2");
  if (mode == OmegaMode::exhaustive && N > kExhaustiveLimit)
    throw std::invalid_argument("exhaustive mode is limited to N <= " +
                                std::to_string(kExhaustiveLimit));
  if (mode == OmegaMode::sampled && sample_count == 0)
    throw std::invalid_argument("sampled mode needs sample_count >= 1");
}

std::string to_string(OmegaMode m) {
  return m == OmegaMode::exhaustive ? "exhaustive" : "sampled";
}

void omega_for_each(const OmegaSpec& spec,
                    const std::function<void(std::uint64_t, std::uint64_t)>& visit) {
  spec.validate();
  if (spec.mode == OmegaMode::exhaustive) {
    std::vector<char> mask;
    for (std::uint64_t q = 2; q <= spec.N; ++q) {
      coprime_mask(q, mask);
      for (std::uint64_t p = 1; p < q; ++p)
        if (spec.all_pairs || mask[p]) visit(p, q);
    }
    return;
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> buf;
  for (std::uint64_t c = 0; c < chunk_count(spec.sample_count); ++c) {
    sampled_chunk(spec, c, buf);
    for (auto [p, q] : buf) visit(p, q);
  }
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> omega_pairs(const OmegaSpec& spec) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  omega_for_each(spec, [&](std::uint64_t p, std::uint64_t q) { out.emplace_back(p, q); });
  return out;
}

// ------------------------------------------------------------------ costs

namespace {

CostSample costs_of_run(const CompactRun& run, std::uint64_t p, std::uint64_t q) {
  const double ln2 = std::numbers::ln2;
  const std::uint64_t d = std::gcd(p, q);
  const auto S = static_cast<double>(run.S);
  const auto m = static_cast<double>(run.terminal_valuation);
  const auto dd = static_cast<double>(__builtin_ctzll(d));
  const auto dq = static_cast<double>(__builtin_ctzll(q));
  const double log_q = std::log(static_cast<double>(q));
  // Q = 2^S q / terminal, g = 2^{S + delta(d) - m}, R = q / d.
  CostSample c{};
  c[0] = run.K;
  c[1] = S;
  c[2] = S * ln2;
  c[3] = 2.0 * (S * ln2 + log_q - std::log(static_cast<double>(run.terminal)));
  c[4] = 2.0 * (S + dd - m) * ln2;
  c[5] = 2.0 * (log_q - std::log(static_cast<double>(d)));
  c[6] = 2.0 * (S + dq - m) * ln2;
  return c;
}

// Greedy counts follow from the canonical run by undoing the rewrite.
bool run_within_bounds(const CompactRun& c, std::uint64_t q) {
  const double lq = std::log2(static_cast<double>(q));
  const std::uint64_t Kg = c.K - (c.rewritten ? 1 : 0);
  const std::uint64_t Sg = c.S + (c.rewritten ? 1 : 0);
  return within_step_bound(c.K, lq) && within_step_bound(Kg, lq) &&
         within_shift_bound(c.S, lq) && within_shift_bound(Sg, lq);
}

}  // namespace

CostSample cost_sample(std::uint64_t p, std::uint64_t q) {
  return costs_of_run(cl_run_compact(p, q, Convention::canonical), p, q);
}

bool pair_within_bounds(std::uint64_t p, std::uint64_t q) {
  return run_within_bounds(cl_run_compact(p, q, Convention::canonical), q);
}

void CostAccumulator::add(const CostSample& s) {
  for (std::size_t i = 0; i < kCostCount; ++i) {
    moments[i].add(s[i]);
    with_K[i].add(s[i], s[0]);
  }
}

void CostAccumulator::merge(const CostAccumulator& other) {
  for (std::size_t i = 0; i < kCostCount; ++i) {
    moments[i].merge(other.moments[i]);
    with_K[i].merge(other.with_K[i]);
  }
  bound_violations += other.bound_violations;
}

double ExperimentReport::mean(const std::string& cost) const {
  return acc.moments[cost_index(cost)].mean();
}

double ExperimentReport::std_error(const std::string& cost) const {
  return acc.moments[cost_index(cost)].std_error();
}

double ExperimentReport::ratio(const std::string& cost) const {
  return mean(cost) / mean("K");
}

namespace {

void account(CostAccumulator& acc, std::uint64_t p, std::uint64_t q) {
  const CompactRun run = cl_run_compact(p, q, Convention::canonical);
  acc.add(costs_of_run(run, p, q));
  if (!run_within_bounds(run, q)) ++acc.bound_violations;
}

ExperimentReport finish(const OmegaSpec& spec, CostAccumulator acc) {
  ExperimentReport r;
  r.spec = spec;
  r.pairs = acc.moments[0].count();
  r.acc = std::move(acc);
  return r;
}

}  // namespace

ExperimentReport mean_costs(const OmegaSpec& spec) {
  spec.validate();
  if (spec.mode == OmegaMode::exhaustive) {
    // One accumulator per q, merged in q order.
    std::vector<CostAccumulator> per_q(spec.N + 1);
#pragma omp parallel
    {
      std::vector<char> mask;
#pragma omp for schedule(dynamic, 16)
      for (long qi = 2; qi <= static_cast<long>(spec.N); ++qi) {
        const auto q = static_cast<std::uint64_t>(qi);
        coprime_mask(q, mask);
        for (std::uint64_t p = 1; p < q; ++p)
          if (spec.all_pairs || mask[p]) account(per_q[q], p, q);
      }
    }
    CostAccumulator total;
    for (const auto& a : per_q) total.merge(a);
    return finish(spec, std::move(total));
  }
  const std::uint64_t chunks = chunk_count(spec.sample_count);
  std::vector<CostAccumulator> per_chunk(chunks);
#pragma omp parallel
  {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> buf;
#pragma omp for schedule(dynamic, 1)
    for (long c = 0; c < static_cast<long>(chunks); ++c) {
      sampled_chunk(spec, static_cast<std::uint64_t>(c), buf);
      for (auto [p, q] : buf) account(per_chunk[static_cast<std::size_t>(c)], p, q);
    }
  }
  CostAccumulator total;
  for (const auto& a : per_chunk) total.merge(a);
  return finish(spec, std::move(total));
}

ExperimentReport mean_costs_serial(const OmegaSpec& spec) {
  CostAccumulator acc;
  omega_for_each(spec, [&](std::uint64_t p, std::uint64_t q) { account(acc, p, q); });
  return finish(spec, std::move(acc));
}

double theory_ratio(const std::string& cost) {
  const ConstantsTable t = m_table();
  if (cost == "K") return t.two_over_H;
  if (cost == "S") return t.D / std::numbers::ln2;
  return t.M.at(cost);
}

// ------------------------------------------------------------------ slopes

SlopeReport slope_estimate(std::uint64_t N_max, std::uint64_t samples_per_rung,
                           std::uint64_t seed) {
  if (N_max < (1u << 16)) throw std::invalid_argument("slope_estimate requires N_max >= 2^16");
  if (samples_per_rung < 2) throw std::invalid_argument("slope_estimate needs samples >= 2");
  SlopeReport rep;
  rep.ladder = {N_max / 16, N_max};
  for (std::size_t i = 0; i < rep.ladder.size(); ++i) {
    OmegaSpec spec;
    spec.N = rep.ladder[i];
    spec.mode = OmegaMode::sampled;
    spec.sample_count = samples_per_rung;
    spec.seed = seed + i;  // independent rungs
    rep.rungs.push_back(mean_costs(spec));
  }
  const ExperimentReport& lo = rep.rungs[0];
  const ExperimentReport& hi = rep.rungs[1];
  const double span = std::log(static_cast<double>(rep.ladder[1]) /
                               static_cast<double>(rep.ladder[0]));
  auto sq = [](double x) { return x * x; };
  for (std::size_t i = 0; i < kCostCount; ++i) {
    const std::string name = kCostNames[i];
    const double slope = (hi.acc.moments[i].mean() - lo.acc.moments[i].mean()) / span;
    rep.slopes[name] = slope;
    rep.slope_errors[name] =
        std::sqrt(sq(hi.acc.moments[i].std_error()) + sq(lo.acc.moments[i].std_error())) / span;
  }
  const double slope_K = rep.slopes["K"];
  for (std::size_t i = 0; i < kCostCount; ++i) {
    const std::string name = kCostNames[i];
    const double ratio = rep.slopes[name] / slope_K;
    rep.ratios[name] = ratio;
    // Delta method on c - ratio*K, rung by rung (rungs are independent).
    double var = 0.0;
    for (const ExperimentReport* r : {&lo, &hi}) {
      const double n = static_cast<double>(r->acc.moments[i].count());
      const double v = r->acc.moments[i].variance() -
                       2.0 * ratio * r->acc.with_K[i].covariance() +
                       sq(ratio) * r->acc.moments[0].variance();
      var += std::max(v, 0.0) / n;
    }
    rep.ratio_errors[name] = std::sqrt(var) / (span * std::abs(slope_K));
    rep.targets[name] = theory_ratio(name);
    const double observed = name == "K" ? slope_K : ratio;
    rep.deviations[name] = (observed - rep.targets[name]) / rep.targets[name];
  }
  return rep;
}

// -------------------------------------------------------------- Dirichlet

double zeta(double x) {
  if (!(x > 1.0)) throw std::domain_error("zeta requires x > 1");
  constexpr int M = 10000;
  double s = 0.0;
  for (int n = M - 1; n >= 1; --n) s += std::pow(static_cast<double>(n), -x);
  // Euler-Maclaurin tail sum_{n>=M} n^{-x}; the next correction is below
  // x(x+1)(x+2)(x+3)(x+4) M^{-x-5} / 30240.
  const double Md = M;
  s += std::pow(Md, 1.0 - x) / (x - 1.0) + 0.5 * std::pow(Md, -x) +
       x * std::pow(Md, -x - 1.0) / 12.0 -
       x * (x + 1.0) * (x + 2.0) * std::pow(Md, -x - 3.0) / 720.0;
  return s;
}

std::vector<std::uint64_t> totients(std::uint64_t N) {
  std::vector<std::uint64_t> phi(N + 1);
  std::iota(phi.begin(), phi.end(), std::uint64_t{0});
  for (std::uint64_t i = 2; i <= N; ++i)
    if (phi[i] == i)
      for (std::uint64_t j = i; j <= N; j += i) phi[j] -= phi[j] / i;
  return phi;
}

DirichletResult dirichlet_check(double s, std::uint64_t N) {
  if (!(s >= 1.5)) throw std::invalid_argument("dirichlet_check requires s >= 1.5");
  if (N < 1 || N > kExhaustiveLimit)
    throw std::invalid_argument("dirichlet_check requires 1 <= N <= 1e5");
  const auto phi = totients(N);
  DirichletResult r;
  r.s = s;
  r.N = N;
  double omega = 0.0;
  for (std::uint64_t q = N; q >= 2; --q)
    omega += static_cast<double>(phi[q]) * std::pow(static_cast<double>(q), -2.0 * s);
  r.omega_sum = omega;
  r.partial_sum = 1.0 + omega;
  r.zeta_ratio = zeta(2.0 * s - 1.0) / zeta(2.0 * s);
  r.deviation = std::abs(r.partial_sum - r.zeta_ratio);
  return r;
}

// ------------------------------------------------------------- worst case

WorstCaseScan worstcase_scan(unsigned n_max) {
  if (n_max < 4 || n_max > 512) throw std::invalid_argument("worstcase_scan needs 4 <= n_max <= 512");
  WorstCaseScan scan;
  for (unsigned n = 2; n <= n_max; ++n) {
    BigInt q = 1;
    mpz_mul_2exp(q.get_mpz_t(), q.get_mpz_t(), n);
    q -= 1;
    const Trace g = cl_run(1, q, Convention::greedy);
    const Trace c = cl_run(1, q, Convention::canonical);
    WorstCaseRow row;
    row.n = n;
    row.K_greedy = g.K;
    row.S_greedy = g.S;
    row.K_canonical = c.K;
    row.S_canonical = c.S;
    const double lq = log2_big(q);
    row.within_bounds = within_step_bound(g.K, lq) && within_step_bound(c.K, lq) &&
                        within_shift_bound(g.S, lq) && within_shift_bound(c.S, lq);
    scan.all_within_bounds = scan.all_within_bounds && row.within_bounds;
    scan.rows.push_back(row);
  }
  const auto m = static_cast<Eigen::Index>(scan.rows.size());
  Eigen::MatrixXd lin(m, 2), quad(m, 3);
  Eigen::VectorXd kg(m), kc(m), sg(m), sc(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& row = scan.rows[static_cast<std::size_t>(i)];
    const double n = row.n;
    lin.row(i) << n, 1.0;
    quad.row(i) << n * n, n, 1.0;
    kg(i) = static_cast<double>(row.K_greedy);
    kc(i) = static_cast<double>(row.K_canonical);
    sg(i) = static_cast<double>(row.S_greedy);
    sc(i) = static_cast<double>(row.S_canonical);
  }
  const auto lin_qr = lin.colPivHouseholderQr();
  const auto quad_qr = quad.colPivHouseholderQr();
  const Eigen::VectorXd fkg = lin_qr.solve(kg), fkc = lin_qr.solve(kc);
  scan.alpha_greedy = fkg(0);
  scan.beta_greedy = fkg(1);
  scan.alpha_canonical = fkc(0);
  scan.beta_canonical = fkc(1);
  scan.gamma_greedy = quad_qr.solve(sg)(0);
  scan.gamma_canonical = quad_qr.solve(sc)(0);
  return scan;
}

ConjectureResult conjecture_test(std::uint64_t bits, std::uint64_t samples,
                                 std::uint64_t N_max, std::uint64_t slope_samples,
                                 std::uint64_t seed) {
  ConjectureResult out;
  out.birkhoff = birkhoff_estimates(bits, samples, seed);
  out.slopes = slope_estimate(N_max, slope_samples, seed);
  out.D = const_D();
  out.target = m_table().M.at("rho");
  out.e2 = out.birkhoff.e2.mean();
  out.e2_stderr = out.birkhoff.e2.std_error();
  out.slope_ratio = out.slopes.ratios.at("rho");
  out.slope_stderr = out.slopes.ratio_errors.at("rho");
  out.B_from_e2 = out.e2 - out.D;
  out.B_from_slope = out.slope_ratio - out.D;
  out.deviation_e2 = (out.e2 - out.target) / out.target;
  out.deviation_slope = (out.slope_ratio - out.target) / out.target;
  out.difference = out.e2 - out.slope_ratio;
  out.combined_stderr = std::hypot(out.e2_stderr, out.slope_stderr);
  out.within_tolerance =
      std::abs(out.deviation_e2) <= 0.05 && std::abs(out.deviation_slope) <= 0.05;
  out.agree = std::abs(out.difference) <= 3.0 * out.combined_stderr;
  return out;
}

}  // namespace clgcd
