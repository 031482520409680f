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

// clgcd: command-line front end for the CL gcd library.

#include <CLI11.hpp>

#include <omp.h>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "clgcd/cl_core.hpp"
#include "clgcd/constants.hpp"
#include "clgcd/dynamics.hpp"
#include "clgcd/experiments.hpp"
#include "clgcd/report.hpp"
#include "clgcd/spectral.hpp"

namespace {

using namespace clgcd;

constexpr std::uint64_t kDefaultSeed = 1978;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAssertion = 3;

// Raised when a hard check (worst-case bound, cost identity) fails.
struct AssertionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

BigInt parse_big(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("expected a positive integer, got '" + text + "'");
  return BigInt(text);
}

int default_threads() {
  if (const char* env = std::getenv("CLGCD_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
    std::cerr << "ignoring CLGCD_THREADS='" << env << "'\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continued logarithm gcd: traces, expansions, constants, spectra, experiments"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  int threads = default_threads();
  std::uint64_t seed = kDefaultSeed;
  app.add_option("--threads", threads, "worker threads (default: CLGCD_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed, "random seed")->capture_default_str();

  // trace
  std::string tp, tq, conv = "canonical";
  bool json = false;
  auto* trace = app.add_subcommand("trace", "pseudo-division table of one pair");
  trace->add_option("p", tp)->required();
  trace->add_option("q", tq)->required();
  trace->add_option("--convention", conv)
      ->check(CLI::IsMember({"greedy", "canonical"}))
      ->capture_default_str();
  trace->add_flag("--json", json);

  // expand
  std::string rational;
  std::size_t depth = 0;
  auto* expand = app.add_subcommand("expand", "CL continued-fraction digits of a rational");
  expand->add_option("--rational", rational, "p/q with 0 < p/q <= 1")->required();
  expand->add_option("--depth", depth, "truncate to this many digits (0: all)");
  expand->add_flag("--json", json);

  // eval
  std::string exponents;
  auto* eval = app.add_subcommand("eval", "value and continuants of an exponent sequence");
  eval->add_option("--exponents", exponents, "a1,a2,...")->required();
  eval->add_flag("--json", json);

  // constants
  auto* constants = app.add_subcommand("constants", "closed-form constants and M(c) table");
  constants->add_flag("--json", json);

  // eigen
  double t = 1.0, v = 0.0, tail_tol = 1e-14;
  std::size_t grid = 48;
  bool csv = false;
  auto* eigen = app.add_subcommand("eigen", "dominant eigenvalue of the transfer operator");
  eigen->add_option("--t", t)->required();
  eigen->add_option("--v", v)->required();
  eigen->add_option("--grid", grid)->capture_default_str();
  eigen->add_option("--tail-tol", tail_tol)->capture_default_str();
  eigen->add_flag("--json", json);
  eigen->add_flag("--csv", csv, "eigenfunction samples as x,value");

  // taylor
  double fd_step = 1e-3;
  auto* taylor = app.add_subcommand("taylor", "A and D from derivatives of lambda(t, v)");
  taylor->add_option("--fd-step", fd_step)->capture_default_str();
  taylor->add_option("--grid", grid)->capture_default_str();
  taylor->add_flag("--json", json);

  // experiment
  std::uint64_t nmax = 0, samples = 1000000;
  bool exhaustive = false;
  std::string out_path;
  auto* experiment = app.add_subcommand("experiment", "mean costs over Omega_N");
  experiment->add_option("--nmax", nmax)->required();
  experiment->add_option("--samples", samples, "pairs per ladder rung")->capture_default_str();
  experiment->add_flag("--exhaustive", exhaustive, "enumerate Omega_N instead of sampling");
  experiment->add_option("--out", out_path, "write the CSV report here");
  experiment->add_flag("--json", json);
  experiment->add_flag("--csv", csv);

  // dirichlet
  double s = 2.0;
  auto* dirichlet = app.add_subcommand("dirichlet", "partial sums against zeta(2s-1)/zeta(2s)");
  dirichlet->add_option("--s", s)->required();
  dirichlet->add_option("--nmax", nmax)->required();
  dirichlet->add_flag("--json", json);

  // worstcase
  unsigned n_max = 64;
  auto* worstcase = app.add_subcommand("worstcase", "the family (1, 2^n - 1)");
  worstcase->add_option("--nmax", n_max)->required();
  worstcase->add_flag("--json", json);

  // conjecture
  std::uint64_t bits = 256, slope_nmax = 1000000, slope_samples = 1000000;
  auto* conjecture = app.add_subcommand("conjecture", "two estimators of B + D");
  conjecture->add_option("--bits", bits)->required();
  conjecture->add_option("--samples", samples, "Birkhoff trajectories")->required();
  conjecture->add_option("--nmax", slope_nmax, "top of the slope ladder")->capture_default_str();
  conjecture->add_option("--slope-samples", slope_samples)->capture_default_str();
  conjecture->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*trace) {
      const Trace tr = cl_run(parse_big(tp), parse_big(tq), parse_convention(conv));
      if (json) emit(to_json(tr));
      else std::cout << format_trace(tr);
    } else if (*expand) {
      const Rational x = Rational::parse(rational);
      const ExponentSeq seq = cf_expand(x, depth);
      if (json) emit(Json{{"rational", x.to_string()}, {"exponents", seq.exponents()}});
      else std::cout << seq.to_string() << '\n';
    } else if (*eval) {
      const ExponentSeq seq = ExponentSeq::parse(exponents);
      const Rational x = cf_eval(seq);
      const ContinuantPair c = continuants(seq);
      if (json) {
        Json j = to_json(c);
        j["value"] = x.to_string();
        j["exponents"] = seq.exponents();
        emit(j);
      } else {
        std::cout << x.to_string() << " (P=" << c.P.get_str() << ", Q=" << c.Q.get_str()
                  << ", g=" << c.g.get_str() << ", R=" << c.R.get_str() << ")\n";
      }
    } else if (*constants) {
      const ConstantsTable table = m_table();
      if (json) emit(to_json(table));
      else std::cout << format_constants(table);
    } else if (*eigen) {
      const SpectralResult r = solve_spectral(t, v, grid, tail_tol);
      if (json) {
        emit(to_json(r));
      } else if (csv) {
        std::cout << "x,value\n";
        std::cout.precision(17);
        for (std::size_t i = 0; i < r.nodes.size(); ++i)
          std::cout << r.nodes[i] << ',' << r.eigenfunction[i] << '\n';
      } else {
        std::cout.precision(15);
        std::cout << "lambda(" << t << ", " << v << ") = " << r.lambda << '\n'
                  << "residual = " << r.residual << ", iterations = " << r.iterations
                  << ", branches = " << r.a_max + 1 << ", nodes = " << r.n << '\n';
      }
    } else if (*taylor) {
      const TaylorEstimates te = taylor_estimates(grid, fd_step);
      const double A = const_A(), D = const_D();
      if (json) {
        Json j = to_json(te);
        j["A_closed"] = A;
        j["D_closed"] = D;
        emit(j);
      } else {
        std::cout.precision(10);
        std::cout << "A: estimate " << te.A_est << ", closed form " << A << ", diff "
                  << te.A_est - A << '\n'
                  << "D: estimate " << te.D_est << ", closed form " << D << ", diff "
                  << te.D_est - D << '\n';
      }
    } else if (*experiment) {
      std::vector<ExperimentReport> reports;
      std::optional<SlopeReport> slopes;
      if (exhaustive) {
        OmegaSpec spec{nmax, OmegaMode::exhaustive, 0, seed, false};
        reports.push_back(mean_costs(spec));
      } else {
        slopes = slope_estimate(nmax, samples, seed);
        reports = slopes->rungs;
      }
      std::uint64_t violations = 0;
      for (const auto& r : reports) violations += r.acc.bound_violations;
      if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw std::invalid_argument("cannot write " + out_path);
        f << experiment_csv(reports);
      }
      if (json) {
        emit(slopes ? to_json(*slopes) : to_json(reports.front()));
      } else if (csv) {
        std::cout << experiment_csv(reports);
      } else {
        for (const auto& r : reports) std::cout << format_experiment(r) << '\n';
        if (slopes) std::cout << format_slopes(*slopes);
      }
      if (violations > 0)
        throw AssertionFailure(std::to_string(violations) + " pairs broke a worst-case bound");
    } else if (*dirichlet) {
      const DirichletResult r = dirichlet_check(s, nmax);
      if (json) {
        emit(to_json(r));
      } else {
        std::cout.precision(12);
        std::cout << "s = " << r.s << ", N = " << r.N << '\n'
                  << "partial sum       " << r.partial_sum << '\n'
                  << "over Omega_N      " << r.omega_sum << '\n'
                  << "zeta(2s-1)/zeta(2s) " << r.zeta_ratio << '\n'
                  << "deviation         " << r.deviation << '\n';
      }
    } else if (*worstcase) {
      const WorstCaseScan scan = worstcase_scan(n_max);
      if (json) emit(to_json(scan));
      else std::cout << format_worstcase(scan);
      if (!scan.all_within_bounds) throw AssertionFailure("worst-case bound violated");
    } else if (*conjecture) {
      const ConjectureResult c = conjecture_test(bits, samples, slope_nmax, slope_samples, seed);
      if (json) emit(to_json(c));
      else std::cout << format_conjecture(c);
      std::uint64_t violations = 0;
      for (const auto& r : c.slopes.rungs) violations += r.acc.bound_violations;
      if (violations > 0)
        throw AssertionFailure(std::to_string(violations) + " pairs broke a worst-case bound");
    }
  } catch (const AssertionFailure& e) {
    std::cerr << "assertion failed: " << e.what() << '\n';
    return kExitAssertion;
  } catch (const InternalConsistencyError& e) {
    std::cerr << "assertion failed: " << e.what() << '\n';
    return kExitAssertion;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return 0;
}
