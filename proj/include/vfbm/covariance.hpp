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

#ifndef VFBM_COVARIANCE_HPP
#define VFBM_COVARIANCE_HPP

#include <Eigen/Dense>

#include <cstddef>

#include "vfbm/model.hpp"

namespace vfbm {

/// E X_i(s) X_i(t) = (sigma^2 / 2)(|s|^{2H} + |t|^{2H} - |t - s|^{2H}).
double cov_same(double h_i, double sigma_i, double s, double t);

/// c_ij for t > 0, c_ji for t < 0 (c_ij at t = 0, where it is multiplied
/// by zero).
double sign_coeff(double c_ij, double c_ji, double t);

/// Cross-covariance for H_i + H_j != 1:
///   (s_i s_j / 2){c_ij(s)|s|^h + c_ji(t)|t|^h - c_ji(t - s)|t - s|^h},
/// h = H_i + H_j. Throws RegimeMismatch for critical pairs.
double cov_cross_general(const PairCoefficients& pc, double h_i, double h_j,
                         double s, double t);

/// Cross-covariance for H_i + H_j = 1:
///   (s_i s_j / 2){d_ij(|s| + |t| - |s - t|)
///                 + f_ij(t log|t| - s log|s| - (t - s) log|t - s|)}.
double cov_cross_critical(const PairCoefficients& pc, double s, double t);

/// E X_i(s) X_j(t) for 0-based component indices.
double cov_pair(const CovarianceModel& model, std::size_t i, std::size_t j,
                double s, double t);

/// Joint covariance of (X(t_1), ..., X(t_n)), row index k * p + i.
struct CovMatrix {
  Eigen::MatrixXd entries;
  TimeGrid grid;
  std::size_t dimension = 0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;

  std::size_t index(std::size_t k, std::size_t i) const {
    return k * dimension + i;
  }
};

CovMatrix cov_matrix(const CovarianceModel& model, const TimeGrid& grid);

}  // namespace vfbm

#endif  // VFBM_COVARIANCE_HPP
