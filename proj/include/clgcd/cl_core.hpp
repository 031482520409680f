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

#ifndef CLGCD_CL_CORE_HPP
#define CLGCD_CL_CORE_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "clgcd/numbers.hpp"

namespace clgcd {

/// Raised when the two routes of the cost algebra disagree. Always a bug.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Convention { greedy, canonical };

[[nodiscard]] std::string to_string(Convention c);
[[nodiscard]] Convention parse_convention(const std::string& text);

/// CLCF digits (a_1, ..., a_k). Canonical form ends with 0.
class ExponentSeq {
 public:
  ExponentSeq() = default;
  explicit ExponentSeq(std::vector<unsigned> exponents);

  /// Parses "1,2,0".
  static ExponentSeq parse(const std::string& text);

  [[nodiscard]] const std::vector<unsigned>& exponents() const { return exponents_; }
  [[nodiscard]] std::size_t size() const { return exponents_.size(); }
  [[nodiscard]] bool empty() const { return exponents_.empty(); }
  [[nodiscard]] bool is_canonical() const {
    return !exponents_.empty() && exponents_.back() == 0;
  }
  [[nodiscard]] std::uint64_t shift_total() const;
  /// (..., a) -> (..., a-1, 0) when a >= 1; identity otherwise.
  [[nodiscard]] ExponentSeq canonicalized() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const ExponentSeq&, const ExponentSeq&) = default;

 private:
  std::vector<unsigned> exponents_;
};

/// One pseudo-division q = 2^a p + r.
struct Step {
  unsigned a = 0;
  BigInt remainder;
  BigInt shifted;  // 2^a p; the next pair is (remainder, shifted)
};

/// a(p, q) = max{k >= 0 : 2^k p <= q}. Requires 0 < p <= q.
[[nodiscard]] unsigned cl_exponent(const BigInt& p, const BigInt& q);
[[nodiscard]] Step cl_step(const BigInt& p, const BigInt& q);

/// One row of the execution table: step i turns (q_i, prev shifted) into
/// (q_{i+1}, 2^{a_i} q_i).
struct StepRecord {
  std::size_t index = 0;
  unsigned exponent = 0;
  BigInt shifted;
  BigInt remainder;
  Valuation val_shifted;
  Valuation val_remainder;
  Valuation val_gcd;  // delta(gcd(shifted, remainder))
  bool forced = false;  // rewritten by the canonical convention
};

struct Trace {
  BigInt p, q;
  Convention convention = Convention::canonical;
  std::vector<StepRecord> records;  // steps 1..K
  ExponentSeq exponent_seq;
  std::size_t K = 0;
  std::uint64_t S = 0;
  BigInt terminal;  // second component of the final pair (0, terminal)
  BigInt odd_gcd;

  /// Row 0 of the table: the input pair itself, with no exponent.
  [[nodiscard]] StepRecord initial_row() const;
};

/// Full traced CL execution. Requires 0 < p < q; non-coprime inputs allowed.
[[nodiscard]] Trace cl_run(const BigInt& p, const BigInt& q,
                           Convention convention = Convention::canonical);

/// Step count, shift total and terminal valuation of one run on machine words.
struct CompactRun {
  std::uint32_t K = 0;
  std::uint32_t S = 0;
  std::uint32_t terminal_valuation = 0;  // delta of the final nonzero value
  std::uint64_t terminal = 0;
  bool rewritten = false;  // canonical rewrite of a final exponent >= 1 applied
};

/// Allocation-free kernel used by the Omega_N loops. Requires 0 < p < q.
[[nodiscard]] CompactRun cl_run_compact(std::uint64_t p, std::uint64_t q,
                                        Convention convention = Convention::canonical);

/// h_{a_1} o ... o h_{a_k}(0), evaluated right to left on rationals.
[[nodiscard]] Rational cf_eval(const ExponentSeq& seq);

/// Canonical CLCF digits of a rational in (0, 1]. depth truncates if nonzero.
[[nodiscard]] ExponentSeq cf_expand(const Rational& x, std::size_t depth = 0);

struct ContinuantPair {
  BigInt P, Q;
  IntMatrix2 M;
  BigInt g;  // gcd(P, Q), a power of two
  BigInt R;  // Q / g
};

[[nodiscard]] IntMatrix2 cl_matrix(const ExponentSeq& seq);
[[nodiscard]] ContinuantPair continuants(const ExponentSeq& seq);

/// Costs K, S, sigma, q, rho, r, q2 of one expansion.
///
/// Powers of two are kept as integer exponents; the log-costs are only
/// materialized as doubles by the accessors.
struct CostVector {
  std::size_t K = 0;
  std::uint64_t S = 0;  // d(h) = 2^S
  BigInt Q;             // continuant denominator
  BigInt R;             // reduced continuant
  std::uint64_t g_exp = 0;   // g(P,Q) = 2^g_exp
  std::uint64_t q2_exp = 0;  // |Q|_2^{-2} = 2^(2 q2_exp), i.e. delta(Q)

  [[nodiscard]] double sigma() const;  // log d(h)
  [[nodiscard]] double q() const;      // log Q^2
  [[nodiscard]] double rho() const;    // log g^2
  [[nodiscard]] double r() const;      // log R^2
  [[nodiscard]] double q2() const;     // log |Q|_2^{-2}
};

/// Quadruple (|h'(0)|, |h'(0)|_2, d(h), G_2[h(0)]) of the LFT of a sequence.
struct LftQuadruple {
  Rational derivative_abs;
  Rational derivative_dyadic;
  Rational det;
  Rational gcd_map;
};

[[nodiscard]] LftQuadruple lft_quadruple(const ExponentSeq& seq);

/// Computes the costs from the continuants and again through the quadruple
/// identities; throws InternalConsistencyError if the two disagree.
[[nodiscard]] CostVector cost_vector(const ExponentSeq& seq);

/// log2 helpers for the worst-case bounds K <= 2 log2 q + 2 and
/// S <= (2 log2 q + 2) log2 q. Exact for machine words.
[[nodiscard]] bool within_step_bound(std::uint64_t K, double log2q);
[[nodiscard]] bool within_shift_bound(std::uint64_t S, double log2q);
[[nodiscard]] double log2_big(const BigInt& n);

}  // namespace clgcd

#endif  // CLGCD_CL_CORE_HPP
