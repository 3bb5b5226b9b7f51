/*
 * Copyright 2026 The vfbm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef VFBM_SIMULATE_HPP
#define VFBM_SIMULATE_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "vfbm/covariance.hpp"
#include "vfbm/model.hpp"

namespace vfbm {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Engine for replication `rep` of a run seeded with `seed`. Streams for
/// different replications are independent of each other and of the order
/// in which they are drawn.
std::mt19937_64 replication_engine(std::uint64_t seed, std::uint64_t rep);

/// N sampled paths on a grid. Row r of `values` is path r laid out as
/// (time k, component i) -> column k * p + i.
struct PathEnsemble {
  RowMatrix values;
  TimeGrid grid;
  std::size_t dimension = 0;
  std::uint64_t seed = 0;
  std::uint64_t model_hash = 0;

  std::size_t paths() const { return static_cast<std::size_t>(values.rows()); }
  double at(std::size_t rep, std::size_t k, std::size_t i) const {
    return values(static_cast<Eigen::Index>(rep),
                  static_cast<Eigen::Index>(k * dimension + i));
  }
};

/// Empirical covariance of ((k, i), (l, j)) entries with the standard error
/// of each entry (sample standard deviation of the centred products over
/// sqrt(N)).
struct CovTable {
  Eigen::MatrixXd cov;
  Eigen::MatrixXd se;
  TimeGrid grid;
  std::size_t dimension = 0;
  std::size_t samples = 0;
};

/// Digest of the model parameters, stored with every ensemble.
std::uint64_t model_hash(const CovarianceModel& model);

/// Exact draws of (X(t_1), ..., X(t_n)) through the lower factor of the
/// grid covariance. Bit-identical for identical arguments.
PathEnsemble sample_paths(const CovarianceModel& model, const TimeGrid& grid,
                          std::size_t n, std::uint64_t seed);

/// Unbiased sample covariance; needs at least two samples.
CovTable empirical_cov(const RowMatrix& samples, const TimeGrid& grid,
                       std::size_t dimension);
CovTable empirical_cov(const PathEnsemble& ensemble);

struct McConfig {
  std::size_t n_reps = 100000;
  // Largest cell width within distance 1 of a kernel singularity.
  double grid_step = 0.05;
  // Integration runs over x >= -trunc; 0 picks the smallest 10^k * max|t|
  // (k = 3..8) whose tail bound stays within half of tail_budget.
  double trunc = 0.0;
  std::uint64_t seed = 1;
  // Largest admissible truncated-tail variance, relative to var X_i(t).
  double tail_budget = 1e-3;
};

/// One cell [lo, hi] of the white-noise discretization.
struct Cell {
  double lo = 0.0;
  double hi = 0.0;
};

/// Cells covering [lo, hi], graded geometrically towards every singular
/// point and widening linearly with distance beyond reach 1.
std::vector<Cell> noise_mesh(std::span<const double> singular, double lo,
                             double hi, double step);

/// Monte Carlo of the moving-average integral itself: the white noise is
/// replaced by independent Gaussian cell increments and each kernel by its
/// exact cell average. Returns the empirical covariance table over the
/// grid. Throws ConfigError for inconsistent settings or when the
/// truncated tail could carry more than `tail_budget` of a variance.
CovTable mc_integral_oracle(const MixingMatrices& m, const TimeGrid& grid,
                            const McConfig& cfg);

}  // namespace vfbm

#endif  // VFBM_SIMULATE_HPP
