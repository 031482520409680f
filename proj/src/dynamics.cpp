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

#include "clgcd/dynamics.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "clgcd/cl_core.hpp"

namespace clgcd {

unsigned branch_of(const Rational& x) {
  if (x <= Rational(0) || x > Rational(1))
    throw std::invalid_argument("branch_of requires 0 < x <= 1");
  // 2^{-a-1} < n/d <= 2^{-a}  <=>  2^a n <= d < 2^{a+1} n
  return cl_exponent(x.num(), x.den());
}

std::pair<unsigned, Rational> t_apply(const Rational& x) {
  if (x.is_zero()) throw std::invalid_argument("t_apply: 0 is the terminal fixed point");
  const unsigned a = branch_of(x);
  BigInt shifted;
  mpz_mul_2exp(shifted.get_mpz_t(), x.num().get_mpz_t(), a);
  return {a, Rational(x.den() - shifted, shifted)};
}

Rational inverse_branch(unsigned a, const Rational& x) {
  return (Rational::pow2(a) * (Rational(1) + x)).reciprocal();
}

double psi(double x) {
  return 1.0 / (std::log(4.0 / 3.0) * (x + 1.0) * (x + 2.0));
}

double psi_mass(double lo, double hi) {
  auto F = [](double x) { return std::log((x + 1.0) / (x + 2.0)); };
  return (F(hi) - F(lo)) / std::log(4.0 / 3.0);
}

double gauss_legendre(const std::function<double(double)>& f, double lo, double hi,
                      std::size_t panels) {
  if (panels == 0) throw std::invalid_argument("gauss_legendre needs at least one panel");
  static constexpr std::array<double, 4> x = {0.1834346424956498, 0.5255324099163290,
                                              0.7966664774136267, 0.9602898564975363};
  static constexpr std::array<double, 4> w = {0.3626837833783620, 0.3137066458778873,
                                              0.2223810344533745, 0.1012285362903763};
  const double h = (hi - lo) / static_cast<double>(panels);
  double total = 0;
  for (std::size_t k = 0; k < panels; ++k) {
    const double mid = lo + (static_cast<double>(k) + 0.5) * h;
    double panel = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      panel += w[i] * (f(mid - 0.5 * h * x[i]) + f(mid + 0.5 * h * x[i]));
    total += 0.5 * h * panel;
  }
  return total;
}

std::vector<double> transfer_apply(const std::function<double(double)>& f,
                                   const CollocationGrid& grid, double t, double v,
                                   double tail_tol, double f_sup) {
  const std::size_t a_max = branch_truncation(t, v, f_sup, tail_tol);
  std::vector<double> out(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.nodes()[j];
    double s = 0.0;
    for (std::size_t a = a_max + 1; a-- > 0;) {
      const double ad = static_cast<double>(a);
      s += std::exp2(ad * (v - t)) * f(std::exp2(-ad) / (1.0 + x));
    }
    out[j] = std::pow(1.0 + x, -2.0 * t) * s;
  }
  return out;
}

std::vector<double> transfer_apply(std::span<const double> samples, const CollocationGrid& grid,
                                   double t, double v, double tail_tol) {
  if (samples.size() != grid.size()) throw std::invalid_argument("samples/grid size mismatch");
  double sup = 0.0;
  for (double s : samples) sup = std::max(sup, std::abs(s));
  auto f = [&](double y) { return grid.interpolate(samples, y); };
  return transfer_apply(f, grid, t, v, tail_tol, sup * grid.lebesgue_bound());
}

OrbitSample orbit(const Rational& x0, std::size_t max_steps) {
  if (x0 <= Rational(0) || x0 >= Rational(1))
    throw std::invalid_argument("orbit requires 0 < x0 < 1");
  OrbitSample out;
  Rational x = x0;
  while (!x.is_zero() && out.steps.size() < max_steps) {
    auto [a, next] = t_apply(x);
    const double dlog = 2.0 * dyadic_norm(x).log();
    out.steps.push_back({x, a, dlog});
    x = std::move(next);
  }
  out.final_point = x;
  return out;
}

TrajectoryAverages trajectory_averages(const BigInt& p0, const BigInt& q0) {
  if (p0 <= 0 || p0 >= q0) throw std::invalid_argument("trajectory requires 0 < p < q");
  const double ln2 = std::numbers::ln2;
  BigInt p = p0, q = q0;
  std::uint64_t K = 0, S = 0;
  long dyadic = 0;  // sum of delta(den) - delta(num) over the orbit points p/q
  while (true) {
    dyadic += static_cast<long>(dyadic_valuation(q).value()) -
              static_cast<long>(dyadic_valuation(p).value());
    Step s = cl_step(p, q);
    ++K;
    S += s.a;
    if (s.remainder == 0) {
      q = std::move(s.shifted);
      break;
    }
    p = std::move(s.remainder);
    q = std::move(s.shifted);
  }
  const auto m = dyadic_valuation(q).value();
  const double Kd = static_cast<double>(K);
  TrajectoryAverages avg;
  avg.shift_rate = static_cast<double>(S) / Kd;
  avg.entropy = 2.0 * log2_big(q0) * ln2 / Kd;
  avg.e2 = 2.0 * static_cast<double>(dyadic) * ln2 / Kd;
  // For coprime inputs g(P,Q) = 2^{S - m}.
  avg.rho_rate = 2.0 * (static_cast<double>(S) - static_cast<double>(m)) * ln2 / Kd;
  avg.valuation_rate = static_cast<double>(m) / Kd;
  return avg;
}

std::vector<std::pair<BigInt, BigInt>> birkhoff_chunk_pairs(std::uint64_t bits,
                                                            std::uint64_t seed,
                                                            std::uint64_t chunk,
                                                            std::uint64_t count) {
  if (bits < 2) throw std::invalid_argument("bits must be at least 2");
  auto engine = chunk_engine(seed, chunk);
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(BigInt(std::to_string(engine())));
  BigInt low = 1;
  mpz_mul_2exp(low.get_mpz_t(), low.get_mpz_t(), bits - 1);
  std::vector<std::pair<BigInt, BigInt>> out;
  out.reserve(count);
  BigInt g;
  while (out.size() < count) {
    BigInt q = low + BigInt(rng.get_z_bits(bits - 1));
    BigInt p = BigInt(rng.get_z_range(q - 1)) + 1;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    if (g == 1) out.emplace_back(std::move(p), std::move(q));
  }
  return out;
}

namespace {

struct BirkhoffAccumulator {
  Moments shift_rate, entropy, e2, rho_rate, valuation_rate;

  void add(const TrajectoryAverages& a) {
    shift_rate.add(a.shift_rate);
    entropy.add(a.entropy);
    e2.add(a.e2);
    rho_rate.add(a.rho_rate);
    valuation_rate.add(a.valuation_rate);
  }
  void merge(const BirkhoffAccumulator& o) {
    shift_rate.merge(o.shift_rate);
    entropy.merge(o.entropy);
    e2.merge(o.e2);
    rho_rate.merge(o.rho_rate);
    valuation_rate.merge(o.valuation_rate);
  }
};

BirkhoffReport make_report(std::uint64_t bits, std::uint64_t samples, std::uint64_t seed,
                           const BirkhoffAccumulator& acc) {
  BirkhoffReport r;
  r.bits = bits;
  r.samples = samples;
  r.seed = seed;
  r.shift_rate = acc.shift_rate;
  r.entropy = acc.entropy;
  r.e2 = acc.e2;
  r.rho_rate = acc.rho_rate;
  r.valuation_rate = acc.valuation_rate;
  return r;
}

void check_birkhoff_args(std::uint64_t bits, std::uint64_t samples) {
  if (bits < 64) throw std::invalid_argument("birkhoff_estimates requires bits >= 64");
  if (samples < 1) throw std::invalid_argument("birkhoff_estimates requires samples >= 1");
}

std::uint64_t chunk_size(std::uint64_t samples, std::uint64_t chunk) {
  const std::uint64_t begin = chunk * kSampleChunk;
  return std::min(kSampleChunk, samples - begin);
}

}  // namespace

BirkhoffReport birkhoff_estimates(std::uint64_t bits, std::uint64_t samples, std::uint64_t seed) {
  check_birkhoff_args(bits, samples);
  const std::uint64_t chunks = (samples + kSampleChunk - 1) / kSampleChunk;
  // Finer work items than chunks: pairs are drawn per chunk, then averaged in
  // parallel one trajectory at a time.
  std::vector<std::pair<BigInt, BigInt>> pairs;
  pairs.reserve(samples);
  for (std::uint64_t c = 0; c < chunks; ++c) {
    auto part = birkhoff_chunk_pairs(bits, seed, c, chunk_size(samples, c));
    for (auto& pq : part) pairs.push_back(std::move(pq));
  }
  std::vector<TrajectoryAverages> values(pairs.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (long i = 0; i < static_cast<long>(pairs.size()); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    values[idx] = trajectory_averages(pairs[idx].first, pairs[idx].second);
  }
  // Merge per chunk, then chunks in order.
  BirkhoffAccumulator total;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    BirkhoffAccumulator acc;
    const std::uint64_t begin = c * kSampleChunk;
    for (std::uint64_t i = begin; i < begin + chunk_size(samples, c); ++i) acc.add(values[i]);
    total.merge(acc);
  }
  return make_report(bits, samples, seed, total);
}

BirkhoffReport birkhoff_estimates_serial(std::uint64_t bits, std::uint64_t samples,
                                         std::uint64_t seed) {
  check_birkhoff_args(bits, samples);
  const std::uint64_t chunks = (samples + kSampleChunk - 1) / kSampleChunk;
  BirkhoffAccumulator acc;
  for (std::uint64_t c = 0; c < chunks; ++c)
    for (const auto& [p, q] : birkhoff_chunk_pairs(bits, seed, c, chunk_size(samples, c)))
      acc.add(trajectory_averages(p, q));
  return make_report(bits, samples, seed, acc);
}

}  // namespace clgcd
