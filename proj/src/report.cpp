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

#include "clgcd/report.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace clgcd {

namespace {

Json big(const BigInt& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

Json val(const Valuation& v) {
  if (v.is_infinite()) return "inf";
  return v.value();
}

Json row_json(const StepRecord& r, bool with_exponent) {
  Json j;
  j["i"] = r.index;
  j["a_i"] = with_exponent ? Json(r.exponent) : Json(nullptr);
  j["shifted"] = big(r.shifted);
  j["remainder"] = big(r.remainder);
  j["val_shifted"] = val(r.val_shifted);
  j["val_remainder"] = val(r.val_remainder);
  j["val_gcd"] = val(r.val_gcd);
  return j;
}

std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

Json to_json(const Trace& t) {
  Json j;
  j["p"] = big(t.p);
  j["q"] = big(t.q);
  j["convention"] = to_string(t.convention);
  j["K"] = t.K;
  j["S"] = t.S;
  j["exponents"] = t.exponent_seq.exponents();
  j["terminal"] = Json::array({0, big(t.terminal)});
  j["odd_gcd"] = big(t.odd_gcd);
  Json rows = Json::array();
  rows.push_back(row_json(t.initial_row(), false));
  for (const auto& r : t.records) rows.push_back(row_json(r, true));
  j["rows"] = std::move(rows);
  return j;
}

Json to_json(const ContinuantPair& c) {
  return Json{{"P", big(c.P)}, {"Q", big(c.Q)}, {"g", big(c.g)}, {"R", big(c.R)}};
}

Json to_json(const CostVector& c) {
  return Json{{"K", c.K},          {"S", c.S},          {"sigma", c.sigma()},
              {"q", c.q()},        {"rho", c.rho()},    {"r", c.r()},
              {"q2", c.q2()},      {"Q", big(c.Q)},     {"R", big(c.R)},
              {"g_log2", c.g_exp}, {"Q_val", c.q2_exp}};
}

Json to_json(const ConstantsTable& t) {
  Json m;
  for (const auto& [k, v] : t.M) m[k] = v;
  return Json{{"E", t.E},
              {"D", t.D},
              {"A", t.A},
              {"B_conj", t.B_conj},
              {"H_conj", t.H_conj},
              {"two_over_H", t.two_over_H},
              {"M", m},
              {"conjectural", Json::array({"B_conj", "H_conj", "two_over_H", "M.rho", "M.r",
                                           "M.q2"})}};
}

Json to_json(const SpectralResult& r, bool with_eigenfunction) {
  Json j{{"t", r.t},
         {"v", r.v},
         {"n", r.n},
         {"a_max", r.a_max},
         {"lambda", r.lambda},
         {"residual", r.residual},
         {"iterations", r.iterations},
         {"converged", r.converged}};
  if (with_eigenfunction) {
    j["nodes"] = r.nodes;
    j["eigenfunction"] = r.eigenfunction;
  }
  return j;
}

Json to_json(const TaylorEstimates& t) {
  return Json{{"A_est", t.A_est},
              {"D_est", t.D_est},
              {"fd_step", t.fd_step},
              {"richardson_order", t.richardson_order}};
}

Json to_json(const BirkhoffReport& r) {
  return Json{{"samples", r.samples},
              {"bits", r.bits},
              {"seed", r.seed},
              {"estimates",
               {{"shift_rate", r.shift_rate.mean()},
                {"entropy", r.entropy.mean()},
                {"e2", r.e2.mean()},
                {"rho_rate", r.rho_rate.mean()},
                {"valuation_rate", r.valuation_rate.mean()}}},
              {"std_errors",
               {{"shift_rate", r.shift_rate.std_error()},
                {"entropy", r.entropy.std_error()},
                {"e2", r.e2.std_error()},
                {"rho_rate", r.rho_rate.std_error()},
                {"valuation_rate", r.valuation_rate.std_error()}}}};
}

Json to_json(const ExperimentReport& r) {
  Json means, ratios;
  for (const char* c : kCostNames) {
    means[c] = Json{{"mean", r.mean(c)}, {"stderr", r.std_error(c)}};
    ratios[c] = r.ratio(c);
  }
  return Json{{"N", r.spec.N},
              {"mode", to_string(r.spec.mode)},
              {"samples", r.pairs},
              {"seed", r.spec.seed},
              {"convention", "canonical"},
              {"means", means},
              {"ratios", ratios},
              {"bound_violations", r.acc.bound_violations}};
}

Json to_json(const SlopeReport& r) {
  Json rungs = Json::array();
  for (const auto& e : r.rungs) rungs.push_back(to_json(e));
  Json costs;
  for (const char* c : kCostNames) {
    costs[c] = Json{{"slope", r.slopes.at(c)},
                    {"slope_stderr", r.slope_errors.at(c)},
                    {"ratio_to_K", r.ratios.at(c)},
                    {"ratio_stderr", r.ratio_errors.at(c)},
                    {"target", r.targets.at(c)},
                    {"deviation", r.deviations.at(c)}};
  }
  return Json{{"ladder", r.ladder}, {"costs", costs}, {"rungs", rungs}};
}

Json to_json(const DirichletResult& r) {
  return Json{{"s", r.s},
              {"N", r.N},
              {"partial_sum", r.partial_sum},
              {"omega_sum", r.omega_sum},
              {"zeta_ratio", r.zeta_ratio},
              {"deviation", r.deviation}};
}

Json to_json(const WorstCaseScan& s) {
  Json rows = Json::array();
  for (const auto& r : s.rows)
    rows.push_back(Json{{"n", r.n},
                        {"K_greedy", r.K_greedy},
                        {"S_greedy", r.S_greedy},
                        {"K_canonical", r.K_canonical},
                        {"S_canonical", r.S_canonical},
                        {"within_bounds", r.within_bounds}});
  return Json{{"rows", rows},
              {"fit",
               {{"alpha_greedy", s.alpha_greedy},
                {"beta_greedy", s.beta_greedy},
                {"gamma_greedy", s.gamma_greedy},
                {"alpha_canonical", s.alpha_canonical},
                {"beta_canonical", s.beta_canonical},
                {"gamma_canonical", s.gamma_canonical}}},
              {"all_within_bounds", s.all_within_bounds}};
}

Json to_json(const ConjectureResult& c) {
  return Json{{"target_B_plus_D", c.target},
              {"D", c.D},
              {"log2", std::numbers::ln2},
              {"birkhoff_e2", {{"estimate", c.e2}, {"stderr", c.e2_stderr},
                               {"B", c.B_from_e2}, {"D_minus_B", c.D - c.B_from_e2},
                               {"deviation", c.deviation_e2}}},
              {"slope_rho", {{"estimate", c.slope_ratio}, {"stderr", c.slope_stderr},
                             {"B", c.B_from_slope}, {"D_minus_B", c.D - c.B_from_slope},
                             {"deviation", c.deviation_slope}}},
              {"difference", c.difference},
              {"combined_stderr", c.combined_stderr},
              {"within_tolerance", c.within_tolerance},
              {"agree", c.agree},
              {"birkhoff", to_json(c.birkhoff)},
              {"ladder", c.slopes.ladder}};
}

// ------------------------------------------------------------------- text

std::string format_trace(const Trace& t) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"i", "a_i", "shifted", "remainder", "val_shifted", "val_remainder",
                   "val_gcd"});
  auto add = [&](const StepRecord& r, bool with_exponent) {
    cells.push_back({std::to_string(r.index), with_exponent ? std::to_string(r.exponent) : "-",
                     r.shifted.get_str(), r.remainder.get_str(), r.val_shifted.to_string(),
                     r.val_remainder.to_string(), r.val_gcd.to_string()});
  };
  add(t.initial_row(), false);
  for (const auto& r : t.records) add(r, true);
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream out;
  out << "CL trace of (" << t.p.get_str() << ", " << t.q.get_str() << "), "
      << to_string(t.convention) << " convention\n";
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "  " : "") << pad(row[c], width[c]);
    out << '\n';
  }
  out << "K = " << t.K << ", S = " << t.S << ", exponents = (" << t.exponent_seq.to_string()
      << "), terminal = (0, " << t.terminal.get_str() << "), odd gcd = " << t.odd_gcd.get_str()
      << '\n';
  return out.str();
}

std::string format_constants(const ConstantsTable& t) {
  std::ostringstream out;
  out << "E = " << fixed(t.E) << '\n'
      << "D = " << fixed(t.D) << '\n'
      << "A = " << fixed(t.A) << '\n'
      << "B = " << fixed(t.B_conj) << "  (conjectured: D - B = log 2)\n"
      << "H = " << fixed(t.H_conj) << "  (conjectured)\n"
      << "2/H = " << fixed(t.two_over_H) << "  (conjectured)\n"
      << "D/log2 = " << fixed(t.D / std::numbers::ln2) << '\n'
      << "\ncost   M(c)\n";
  for (const char* c : {"sigma", "q", "rho", "r", "q2"})
    out << pad(c, 5) << "  " << fixed(t.M.at(c)) << (is_conjectural(c) ? "  (conjectured)" : "")
        << '\n';
  return out.str();
}

std::string format_experiment(const ExperimentReport& r) {
  std::ostringstream out;
  out << "Omega_N, N = " << r.spec.N << ", " << to_string(r.spec.mode) << ", " << r.pairs
      << " pairs, canonical convention\n";
  out << " cost        mean      stderr  ratio_to_K\n";
  for (const char* c : kCostNames)
    out << pad(c, 5) << pad(fixed(r.mean(c)), 12) << pad(fixed(r.std_error(c)), 12)
        << pad(fixed(r.ratio(c)), 12) << '\n';
  out << "worst-case bound violations: " << r.acc.bound_violations << '\n';
  return out.str();
}

std::string format_slopes(const SlopeReport& r) {
  std::ostringstream out;
  out << "slopes in log N over N = " << r.ladder[0] << " -> " << r.ladder[1] << '\n';
  out << " cost       slope     ratio_to_K    stderr     target  deviation\n";
  for (const char* c : kCostNames) {
    const std::string name = c;
    out << pad(name, 5) << pad(fixed(r.slopes.at(name)), 12) << pad(fixed(r.ratios.at(name)), 14)
        << pad(fixed(r.ratio_errors.at(name)), 10) << pad(fixed(r.targets.at(name)), 11)
        << pad(fixed(100.0 * r.deviations.at(name), 2) + "%", 10) << '\n';
  }
  out << "(K row: target is 2/H for the slope itself)\n";
  return out.str();
}

std::string format_worstcase(const WorstCaseScan& s) {
  std::ostringstream out;
  out << "   n  K_greedy  S_greedy  K_canonical  S_canonical  bounds\n";
  for (const auto& r : s.rows)
    out << pad(std::to_string(r.n), 4) << pad(std::to_string(r.K_greedy), 10)
        << pad(std::to_string(r.S_greedy), 10) << pad(std::to_string(r.K_canonical), 13)
        << pad(std::to_string(r.S_canonical), 13) << (r.within_bounds ? "  ok" : "  VIOLATED")
        << '\n';
  out << "fit greedy:    K = " << fixed(s.alpha_greedy) << " n + " << fixed(s.beta_greedy)
      << ", S ~ " << fixed(s.gamma_greedy) << " n^2\n";
  out << "fit canonical: K = " << fixed(s.alpha_canonical) << " n + " << fixed(s.beta_canonical)
      << ", S ~ " << fixed(s.gamma_canonical) << " n^2\n";
  return out.str();
}

std::string format_conjecture(const ConjectureResult& c) {
  std::ostringstream out;
  out << "target B + D = 2D - log 2 = " << fixed(c.target) << "  (D = " << fixed(c.D) << ")\n";
  out << "estimator   " << pad("B+D", 10) << pad("stderr", 10) << pad("B", 10) << pad("D - B", 10)
      << pad("deviation", 11) << '\n';
  auto row = [&](const std::string& name, double est, double se, double dev) {
    out << name << std::string(12 - name.size(), ' ') << pad(fixed(est), 10) << pad(fixed(se), 10)
        << pad(fixed(est - c.D), 10) << pad(fixed(2 * c.D - est), 10)
        << pad(fixed(100.0 * dev, 2) + "%", 11) << '\n';
  };
  row("birkhoff e2", c.e2, c.e2_stderr, c.deviation_e2);
  row("slope rho/K", c.slope_ratio, c.slope_stderr, c.deviation_slope);
  out << "log 2 = " << fixed(std::numbers::ln2) << '\n';
  out << "difference " << fixed(c.difference) << " vs combined stderr " << fixed(c.combined_stderr)
      << (c.agree ? "  (agree)" : "  (disagree)") << '\n';
  out << "verdict: "
      << (c.within_tolerance && c.agree ? "consistent with D - B = log 2"
                                        : "not consistent with D - B = log 2 at these tolerances")
      << '\n';
  return out.str();
}

std::string experiment_csv(const std::vector<ExperimentReport>& reports) {
  std::ostringstream out;
  out << "N,mode,samples,cost,mean,stderr,ratio_to_K,theory,deviation\n";
  char buf[512];
  for (const auto& r : reports) {
    for (const char* c : kCostNames) {
      const double theory = theory_ratio(c);
      // K is compared through mean/log N, every other cost through mean/mean(K).
      const double observed =
          std::string(c) == "K" ? r.mean(c) / std::log(static_cast<double>(r.spec.N))
                                : r.ratio(c);
      std::snprintf(buf, sizeof buf, "%llu,%s,%llu,%s,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                    static_cast<unsigned long long>(r.spec.N), to_string(r.spec.mode).c_str(),
                    static_cast<unsigned long long>(r.pairs), c, r.mean(c), r.std_error(c),
                    r.ratio(c), theory, observed - theory);
      out << buf;
    }
  }
  return out.str();
}

}  // namespace clgcd
