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

#include "vfbm/linalg.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "vfbm/constants.hpp"
#include "vfbm/error.hpp"

namespace vfbm {

double min_eigenvalue(const Eigen::MatrixXd& a) {
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

double max_abs(const Eigen::MatrixXd& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

Eigen::MatrixXd cholesky_psd(const Eigen::MatrixXd& c) {
  const Eigen::Index n = c.rows();
  if (c.cols() != n) {
    throw Error(ErrorCode::DomainError, "cholesky_psd needs a square matrix");
  }
  const double scale = max_abs(c);
  const double negative = -kDefinitenessSlack * scale;
  const double zero = static_cast<double>(n) *
                      std::numeric_limits<double>::epsilon() * scale;

  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double pivot = c(k, k) - l.row(k).head(k).squaredNorm();
    if (pivot < negative) {
      std::ostringstream os;
      os.precision(17);
      os << "matrix is not positive semi-definite: lambda_min = "
         << min_eigenvalue(c);
      throw Error(ErrorCode::NotPSD, os.str());
    }
    if (pivot <= zero) {
      continue;
    }
    const double root = std::sqrt(pivot);
    l(k, k) = root;
    const Eigen::Index below = n - k - 1;
    l.col(k).tail(below) =
        (c.col(k).tail(below) -
         l.bottomLeftCorner(below, k) * l.row(k).head(k).transpose()) /
        root;
  }
  return l;
}

}  // namespace vfbm
