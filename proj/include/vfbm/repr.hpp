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

#ifndef VFBM_REPR_HPP
#define VFBM_REPR_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string_view>

#include "vfbm/model.hpp"

namespace vfbm {

/// Gram-type products of the mixing matrices:
///   app = A+ A+^T, amm = A- A-^T, apm = A+ A-^T, amp = A- A+^T.
struct AlphaProducts {
  Eigen::MatrixXd app;
  Eigen::MatrixXd amm;
  Eigen::MatrixXd apm;
  Eigen::MatrixXd amp;
};

AlphaProducts alpha_products(const MixingMatrices& m);

/// Standard deviation of X_i(1):
///   s_i^2 = B(H_i + 1/2, H_i + 1/2) / sin(H_i pi)
///           * (app_ii + amm_ii - 2 sin(H_i pi) apm_ii).
double sigma_from_mixing(const MixingMatrices& m, std::size_t i);

/// Covariance coefficients of the moving-average process. General pairs:
///   (s_i s_j / 2) c_ij = phi_ij (app_ij cos(H_i pi) + amm_ij cos(H_j pi))
///                        - B(H_i + 1/2, H_j + 1/2) apm_ij,
/// and c_ji is the same expression with i and j exchanged. Critical pairs:
///   s_i s_j d_ij = B ((sin(H_i pi) + sin(H_j pi)) / 2 (app_ij + amm_ij)
///                     - apm_ij - amp_ij),
///   s_i s_j f_ij = (H_j - H_i)(app_ij - amm_ij).
CovarianceModel coeffs_from_mixing(const MixingMatrices& m);

struct TildeC {
  Eigen::MatrixXd c_tilde;
};

/// C~ = cos(H pi) A+ A+^T + A- A-^T cos(H pi)
///      - sin(H pi) A+ A-^T cos(H pi) - cos(H pi) A+ A-^T sin(H pi)
TildeC tilde_c(const MixingMatrices& m);

enum class InfeasibleReason { NotSymmetric, NotPD };

std::string_view to_string(InfeasibleReason reason);

struct FactorizeResult {
  std::optional<MixingMatrices> mixing;
  InfeasibleReason reason = InfeasibleReason::NotPD;
  // Asymmetry ratio or smallest eigenvalue, whichever check ran last.
  double statistic = 0.0;

  bool feasible() const noexcept { return mixing.has_value(); }
};

/// Causal (A- = 0) factorization C~ = cos(H pi) A+ A+^T. Feasible iff
/// M = cos(H pi)^{-1} C~ is symmetric and positive definite; A+ is then its
/// lower Cholesky factor. Throws SingularCosine when some H_i = 1/2.
FactorizeResult causal_factorize(const TildeC& c_tilde, const HurstVector& h);

/// E X_i(s) X_j(t) summed directly from the four elementary kernels,
/// weighted by the alpha products. Independent of coeffs_from_mixing.
double assemble_via_kernels(const MixingMatrices& m, std::size_t i,
                            std::size_t j, double s, double t);

}  // namespace vfbm

#endif  // VFBM_REPR_HPP
