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

#ifndef VFBM_LINALG_HPP
#define VFBM_LINALG_HPP

#include <Eigen/Dense>

namespace vfbm {

/// Smallest eigenvalue of the symmetric part of `a`.
double min_eigenvalue(const Eigen::MatrixXd& a);

/// Largest absolute entry.
double max_abs(const Eigen::MatrixXd& a);

/// Lower-triangular L with L L^T = C for symmetric positive semi-definite C.
///
/// Pivots that round to zero (|d| <= n eps max|C|) leave a zero column,
/// which is what happens for rows of a covariance at t = 0. A pivot below
/// -1e-10 max|C| throws NotPSD with the smallest eigenvalue of C.
Eigen::MatrixXd cholesky_psd(const Eigen::MatrixXd& c);

}  // namespace vfbm

#endif  // VFBM_LINALG_HPP
