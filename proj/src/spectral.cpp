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

#include "clgcd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace clgcd {

CollocationGrid::CollocationGrid(std::size_t n) {
  if (n < 2) throw std::invalid_argument("collocation grid needs at least 2 nodes");
  const std::size_t N = n - 1;
  const double pi = std::numbers::pi;
  nodes_.resize(n);
  bary_.resize(n);
  quad_.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = pi * static_cast<double>(j) / static_cast<double>(N);
    nodes_[j] = 0.5 * (1.0 - std::cos(theta));
    bary_[j] = (j % 2 == 0 ? 1.0 : -1.0) * ((j == 0 || j == N) ? 0.5 : 1.0);
  }
  // Pin the endpoints exactly.
  nodes_.front() = 0.0;
  nodes_.back() = 1.0;

  // Clenshaw-Curtis weights on [-1, 1], halved for [0, 1].
  const double Nd = static_cast<double>(N);
  std::vector<double> w(n, 0.0);
  if (N % 2 == 0) {
    w[0] = w[N] = 1.0 / (Nd * Nd - 1.0);
  } else {
    w[0] = w[N] = 1.0 / (Nd * Nd);
  }
  for (std::size_t i = 1; i < N; ++i) {
    const double theta = pi * static_cast<double>(i) / Nd;
    double s = 1.0;
    const std::size_t half = N % 2 == 0 ? N / 2 - 1 : (N - 1) / 2;
    for (std::size_t k = 1; k <= half; ++k) {
      const double kd = static_cast<double>(k);
      s -= 2.0 * std::cos(2.0 * kd * theta) / (4.0 * kd * kd - 1.0);
    }
    if (N % 2 == 0) s -= std::cos(Nd * theta) / (Nd * Nd - 1.0);
    w[i] = 2.0 * s / Nd;
  }
  for (std::size_t j = 0; j < n; ++j) quad_[j] = 0.5 * w[j];
}

void CollocationGrid::cardinals(double y, std::span<double> out) const {
  const std::size_t n = nodes_.size();
  for (std::size_t l = 0; l < n; ++l) {
    if (y == nodes_[l]) {
      std::fill(out.begin(), out.end(), 0.0);
      out[l] = 1.0;
      return;
    }
  }
  double denom = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    out[l] = bary_[l] / (y - nodes_[l]);
    denom += out[l];
  }
  for (std::size_t l = 0; l < n; ++l) out[l] /= denom;
}

double CollocationGrid::interpolate(std::span<const double> samples, double y) const {
  double num = 0.0, den = 0.0;
  for (std::size_t l = 0; l < nodes_.size(); ++l) {
    if (y == nodes_[l]) return samples[l];
    const double c = bary_[l] / (y - nodes_[l]);
    num += c * samples[l];
    den += c;
  }
  return num / den;
}

double CollocationGrid::integrate(std::span<const double> samples) const {
  double s = 0.0;
  for (std::size_t j = 0; j < quad_.size(); ++j) s += quad_[j] * samples[j];
  return s;
}

double CollocationGrid::lebesgue_bound() const {
  return 2.0 / std::numbers::pi * std::log(static_cast<double>(nodes_.size())) + 1.0;
}

std::size_t branch_truncation(double t, double v, double scale, double tail_tol) {
  if (!(t - v > 0.0))
    throw DivergentOperatorError("transfer operator diverges for t - v <= 0");
  if (!(tail_tol > 0.0)) throw std::invalid_argument("tail tolerance must be positive");
  const double ratio = std::exp2(v - t);
  const double lead = scale / (1.0 - ratio);
  // lead * ratio^(a+1) < tail_tol
  std::size_t a = 0;
  double term = lead * ratio;
  while (term >= tail_tol) {
    term *= ratio;
    ++a;
    if (a > 100000) throw std::domain_error("branch truncation does not terminate");
  }
  return a;
}

namespace {

void fill_row(Eigen::MatrixXd& m, std::size_t j, double t, double v,
              const CollocationGrid& grid, std::size_t a_max, std::vector<double>& card) {
  const std::size_t n = grid.size();
  const double x = grid.nodes()[j];
  const double prefactor = std::pow(1.0 + x, -2.0 * t);
  for (std::size_t l = 0; l < n; ++l) m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l)) = 0.0;
  for (std::size_t a = 0; a <= a_max; ++a) {
    const double ad = static_cast<double>(a);
    const double y = std::exp2(-ad) / (1.0 + x);
    const double weight = prefactor * std::exp2(ad * (v - t));
    grid.cardinals(y, card);
    for (std::size_t l = 0; l < n; ++l)
      m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l)) += weight * card[l];
  }
}

}  // namespace

Eigen::MatrixXd build_matrix_serial(double t, double v, const CollocationGrid& grid,
                                    double tail_tol) {
  const std::size_t n = grid.size();
  const std::size_t a_max = branch_truncation(t, v, grid.lebesgue_bound(), tail_tol);
  Eigen::MatrixXd m(n, n);
  std::vector<double> card(n);
  for (std::size_t j = 0; j < n; ++j) fill_row(m, j, t, v, grid, a_max, card);
  return m;
}

Eigen::MatrixXd build_matrix(double t, double v, const CollocationGrid& grid,
                             double tail_tol) {
  const std::size_t n = grid.size();
  const std::size_t a_max = branch_truncation(t, v, grid.lebesgue_bound(), tail_tol);
  Eigen::MatrixXd m(n, n);
#pragma omp parallel
  {
    std::vector<double> card(n);
#pragma omp for schedule(static)
    for (long j = 0; j < static_cast<long>(n); ++j)
      fill_row(m, static_cast<std::size_t>(j), t, v, grid, a_max, card);
  }
  return m;
}

SpectralResult dominant_eigen(const Eigen::MatrixXd& matrix, const CollocationGrid& grid,
                              const PowerIterationOptions& options) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  if (matrix.rows() != n || matrix.cols() != n)
    throw std::invalid_argument("matrix size does not match grid");
  SpectralResult res;
  res.n = grid.size();
  res.nodes.assign(grid.nodes().begin(), grid.nodes().end());

  Eigen::VectorXd x = Eigen::VectorXd::Ones(n).normalized();
  double lambda = 0.0;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    const Eigen::VectorXd y = matrix * x;
    lambda = x.dot(y);
    res.iterations = it;
    const double norm = y.norm();
    if (norm == 0.0) break;
    x = y / norm;
    if (std::abs(lambda - previous) < options.tolerance) {
      res.converged = true;
      break;
    }
    previous = lambda;
  }
  // One more product so that lambda is the Rayleigh quotient of the returned x.
  lambda = x.dot(matrix * x);

  std::vector<double> phi(x.data(), x.data() + n);
  const double integral = grid.integrate(phi);
  for (double& value : phi) value /= integral;
  Eigen::Map<const Eigen::VectorXd> phi_vec(phi.data(), n);
  res.residual = (matrix * phi_vec - lambda * phi_vec).cwiseAbs().maxCoeff();
  res.lambda = lambda;
  res.eigenfunction = std::move(phi);
  return res;
}

SpectralResult solve_spectral(double t, double v, std::size_t n, double tail_tol) {
  const CollocationGrid grid(n);
  SpectralResult res = dominant_eigen(build_matrix(t, v, grid, tail_tol), grid);
  res.t = t;
  res.v = v;
  res.a_max = branch_truncation(t, v, grid.lebesgue_bound(), tail_tol);
  return res;
}

TaylorEstimates taylor_estimates(std::size_t n, double fd_step, double tail_tol) {
  if (!(fd_step >= 1e-4 && fd_step <= 1e-2))
    throw std::invalid_argument("fd_step must lie in [1e-4, 1e-2]");
  auto lambda = [&](double t, double v) { return solve_spectral(t, v, n, tail_tol).lambda; };
  auto central_t = [&](double h) { return (lambda(1 + h, 0) - lambda(1 - h, 0)) / (2 * h); };
  auto central_v = [&](double h) { return (lambda(1, h) - lambda(1, -h)) / (2 * h); };
  const double h = fd_step;
  TaylorEstimates est;
  est.A_est = -(4.0 * central_t(h / 2) - central_t(h)) / 3.0;
  est.D_est = (4.0 * central_v(h / 2) - central_v(h)) / 3.0;
  est.fd_step = fd_step;
  est.richardson_order = 4;
  return est;
}

}  // namespace clgcd
