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

#ifndef CLGCD_STATS_HPP
#define CLGCD_STATS_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace clgcd {

/// Welford running mean/variance with an associative merge.
class Moments {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  void merge(const Moments& other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
      *this = other;
      return;
    }
    const double n1 = static_cast<double>(count_);
    const double n2 = static_cast<double>(other.count_);
    const double delta = other.mean_ - mean_;
    const double n = n1 + n2;
    mean_ += delta * n2 / n;
    m2_ += other.m2_ + delta * delta * n1 * n2 / n;
    count_ += other.count_;
  }

  [[nodiscard]] std::uint64_t count() const { return count_; }
  [[nodiscard]] double mean() const { return mean_; }
  [[nodiscard]] double variance() const {
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
  }
  [[nodiscard]] double std_error() const {
    return count_ > 1 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
  }

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Running co-moment of (x, y), for covariances between costs.
class CoMoments {
 public:
  void add(double x, double y) {
    ++count_;
    const double n = static_cast<double>(count_);
    const double dx = x - mean_x_;
    mean_x_ += dx / n;
    mean_y_ += (y - mean_y_) / n;
    c_ += dx * (y - mean_y_);
  }

  void merge(const CoMoments& other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
      *this = other;
      return;
    }
    const double n1 = static_cast<double>(count_);
    const double n2 = static_cast<double>(other.count_);
    const double n = n1 + n2;
    const double dx = other.mean_x_ - mean_x_;
    const double dy = other.mean_y_ - mean_y_;
    c_ += other.c_ + dx * dy * n1 * n2 / n;
    mean_x_ += dx * n2 / n;
    mean_y_ += dy * n2 / n;
    count_ += other.count_;
  }

  [[nodiscard]] double covariance() const {
    return count_ > 1 ? c_ / static_cast<double>(count_ - 1) : 0.0;
  }

 private:
  std::uint64_t count_ = 0;
  double mean_x_ = 0.0;
  double mean_y_ = 0.0;
  double c_ = 0.0;
};

/// Samples are drawn in fixed-size chunks, each with its own generator seeded
/// from (seed, chunk). Results are independent of the number of workers.
inline constexpr std::uint64_t kSampleChunk = 4096;

[[nodiscard]] inline std::mt19937_64 chunk_engine(std::uint64_t seed, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace clgcd

#endif  // CLGCD_STATS_HPP
