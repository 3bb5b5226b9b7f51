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

#include "vfbm/covariance.hpp"

#include <cmath>
#include <sstream>

#include "vfbm/error.hpp"
#include "vfbm/kernels.hpp"
#include "vfbm/parallel.hpp"

namespace vfbm {

namespace {

double abs_pow(double x, double a) { return kernels::pos_pow(std::abs(x), a); }

}  // namespace

double cov_same(double h_i, double sigma_i, double s, double t) {
  const double h = 2.0 * h_i;
  return 0.5 * sigma_i * sigma_i *
         (abs_pow(s, h) + abs_pow(t, h) - abs_pow(t - s, h));
}

double sign_coeff(double c_ij, double c_ji, double t) {
  return t < 0.0 ? c_ji : c_ij;
}

double cov_cross_general(const PairCoefficients& pc, double h_i, double h_j,
                         double s, double t) {
  const auto* g = std::get_if<GeneralCoefficients>(&pc.coefficients);
  if (g == nullptr || classify_pair(h_i, h_j) != PairRegime::General) {
    throw Error(ErrorCode::RegimeMismatch,
                "cov_cross_general needs a general pair with H_i + H_j != 1");
  }
  const double h = h_i + h_j;
  return 0.5 * pc.sigma_i * pc.sigma_j *
         (sign_coeff(g->c_ij, g->c_ji, s) * abs_pow(s, h) +
          sign_coeff(g->c_ji, g->c_ij, t) * abs_pow(t, h) -
          sign_coeff(g->c_ji, g->c_ij, t - s) * abs_pow(t - s, h));
}

double cov_cross_critical(const PairCoefficients& pc, double s, double t) {
  const auto* c = std::get_if<CriticalCoefficients>(&pc.coefficients);
  if (c == nullptr) {
    throw Error(ErrorCode::RegimeMismatch,
                "cov_cross_critical needs a critical pair");
  }
  using kernels::xlogx;
  return 0.5 * pc.sigma_i * pc.sigma_j *
         (c->d_ij * (std::abs(s) + std::abs(t) - std::abs(s - t)) +
          c->f_ij * (xlogx(t) - xlogx(s) - xlogx(t - s)));
}

double cov_pair(const CovarianceModel& model, std::size_t i, std::size_t j,
                double s, double t) {
  const PairCoefficients pc = model.pair(i, j);
  const auto& h = model.hurst();
  if (i == j) {
    return cov_same(h[i], pc.sigma_i, s, t);
  }
  if (pc.regime() == PairRegime::Critical) {
    return cov_cross_critical(pc, s, t);
  }
  return cov_cross_general(pc, h[i], h[j], s, t);
}

CovMatrix cov_matrix(const CovarianceModel& model, const TimeGrid& grid) {
  const std::size_t p = model.dimension();
  const std::size_t n = grid.size();
  const auto size = static_cast<Eigen::Index>(n * p);
  CovMatrix out{Eigen::MatrixXd::Zero(size, size), grid, p, 0.0, 0.0};

  // Pairs are resolved once; the entries below only do arithmetic.
  std::vector<PairCoefficients> pairs;
  pairs.reserve(p * p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) pairs.push_back(model.pair(i, j));
  }
  const auto& h = model.hurst();
  auto entry = [&](std::size_t i, std::size_t j, double s, double t) {
    const PairCoefficients& pc = pairs[i * p + j];
    if (i == j) return cov_same(h[i], pc.sigma_i, s, t);
    if (pc.regime() == PairRegime::Critical) return cov_cross_critical(pc, s, t);
    return cov_cross_general(pc, h[i], h[j], s, t);
  };

  parallel_for(n * p, [&](std::size_t row) {
    const std::size_t k = row / p;
    const std::size_t i = row % p;
    for (std::size_t col = row; col < n * p; ++col) {
      const std::size_t l = col / p;
      const std::size_t j = col % p;
      out.entries(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
          entry(i, j, grid[k], grid[l]);
    }
  });
  out.entries.triangularView<Eigen::StrictlyLower>() =
      out.entries.transpose().triangularView<Eigen::StrictlyLower>();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(out.entries,
                                                     Eigen::EigenvaluesOnly);
  out.lambda_min = eig.eigenvalues().minCoeff();
  out.lambda_max = eig.eigenvalues().maxCoeff();
  return out;
}

}  // namespace vfbm
