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

#ifndef CLGCD_SPECTRAL_HPP
#define CLGCD_SPECTRAL_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace clgcd {

/// Chebyshev-Lobatto nodes on [0, 1] with barycentric interpolation weights
/// and Clenshaw-Curtis quadrature weights.
class CollocationGrid {
 public:
  explicit CollocationGrid(std::size_t n);

  [[nodiscard]] std::size_t size() const { return nodes_.size(); }
  [[nodiscard]] std::span<const double> nodes() const { return nodes_; }
  [[nodiscard]] std::span<const double> quadrature_weights() const { return quad_; }

  /// Values of all Lagrange cardinal functions at y, written into out.
  void cardinals(double y, std::span<double> out) const;
  [[nodiscard]] double interpolate(std::span<const double> samples, double y) const;
  [[nodiscard]] double integrate(std::span<const double> samples) const;

  /// Upper bound on the Lebesgue constant, (2/pi) log n + 1.
  [[nodiscard]] double lebesgue_bound() const;

 private:
  std::vector<double> nodes_;
  std::vector<double> bary_;
  std::vector<double> quad_;
};

/// Raised for (t, v) with t - v <= 0, where the branch series diverges.
class DivergentOperatorError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Smallest a_max with scale * 2^{(a_max+1)(v-t)} / (1 - 2^{v-t}) < tail_tol.
[[nodiscard]] std::size_t branch_truncation(double t, double v, double scale, double tail_tol);

/// Collocation matrix of H_{t,v}: entry (j, l) is
/// (1+x_j)^{-2t} sum_{a<=a_max} 2^{a(v-t)} L_l(2^{-a}/(1+x_j)).
/// Rows are assembled in parallel.
[[nodiscard]] Eigen::MatrixXd build_matrix(double t, double v, const CollocationGrid& grid,
                                           double tail_tol = 1e-14);
/// Single-threaded reference assembly; bitwise identical to build_matrix.
[[nodiscard]] Eigen::MatrixXd build_matrix_serial(double t, double v,
                                                  const CollocationGrid& grid,
                                                  double tail_tol = 1e-14);

struct SpectralResult {
  double t = 0, v = 0;
  std::size_t n = 0;
  std::size_t a_max = 0;
  double lambda = 0;
  std::vector<double> nodes;
  std::vector<double> eigenfunction;  // unit integral
  double residual = 0;                // sup |(M - lambda) phi| at the nodes
  std::size_t iterations = 0;
  bool converged = false;
};

struct PowerIterationOptions {
  double tolerance = 1e-12;
  std::size_t max_iterations = 10000;
};

/// Power iteration with Rayleigh-quotient eigenvalue estimates. When the
/// iteration limit is hit, the last iterate is returned with converged=false.
[[nodiscard]] SpectralResult dominant_eigen(const Eigen::MatrixXd& matrix,
                                            const CollocationGrid& grid,
                                            const PowerIterationOptions& options = {});

/// build_matrix + dominant_eigen at one parameter point.
[[nodiscard]] SpectralResult solve_spectral(double t, double v, std::size_t n = 48,
                                            double tail_tol = 1e-14);

struct TaylorEstimates {
  double A_est = 0;  // -d lambda / dt at (1, 0)
  double D_est = 0;  //  d lambda / dv at (1, 0)
  double fd_step = 0;
  int richardson_order = 0;
};

/// Central differences at steps h and h/2 followed by one Richardson step.
[[nodiscard]] TaylorEstimates taylor_estimates(std::size_t n = 48, double fd_step = 1e-3,
                                               double tail_tol = 1e-14);

}  // namespace clgcd

#endif  // CLGCD_SPECTRAL_HPP
