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

#include "vfbm/repr.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "vfbm/constants.hpp"
#include "vfbm/error.hpp"
#include "vfbm/kernels.hpp"
#include "vfbm/linalg.hpp"
#include "vfbm/special.hpp"

namespace vfbm {

namespace {

template <class Fn>
Eigen::VectorXd trig_of(const HurstVector& h, Fn fn) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(h.size()));
  for (std::size_t i = 0; i < h.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = fn(kPi * h[i]);
  }
  return out;
}

void check_index(const MixingMatrices& m, std::size_t i) {
  if (i >= m.dimension()) {
    std::ostringstream os;
    os << "component index " << i + 1 << " outside 1.." << m.dimension();
    throw Error(ErrorCode::IndexOutOfRange, os.str());
  }
}

double sigma_squared(const AlphaProducts& a, double h, Eigen::Index i) {
  const double sine = std::sin(kPi * h);
  const double bracket = a.app(i, i) + a.amm(i, i) - 2.0 * sine * a.apm(i, i);
  const double scale = a.app(i, i) + a.amm(i, i);
  if (!(bracket > 1e-14 * std::max(1.0, scale))) {
    std::ostringstream os;
    os << "component " << i + 1 << " has non-positive variance";
    throw Error(ErrorCode::DegenerateComponent, os.str());
  }
  return special::beta(h + 0.5, h + 0.5) / sine * bracket;
}

// (s_i s_j / 2) c_ij without the s_i s_j / 2 factor.
double scaled_c(double h_i, double h_j, double app, double amm, double apm) {
  return special::phi(h_i, h_j) *
             (app * std::cos(kPi * h_i) + amm * std::cos(kPi * h_j)) -
         special::beta(h_i + 0.5, h_j + 0.5) * apm;
}

}  // namespace

AlphaProducts alpha_products(const MixingMatrices& m) {
  const auto& ap = m.a_plus();
  const auto& am = m.a_minus();
  return {ap * ap.transpose(), am * am.transpose(), ap * am.transpose(),
          am * ap.transpose()};
}

double sigma_from_mixing(const MixingMatrices& m, std::size_t i) {
  check_index(m, i);
  return std::sqrt(
      sigma_squared(alpha_products(m), m.hurst()[i], static_cast<Eigen::Index>(i)));
}

CovarianceModel coeffs_from_mixing(const MixingMatrices& m) {
  const std::size_t p = m.dimension();
  const AlphaProducts a = alpha_products(m);
  const HurstVector& h = m.hurst();

  std::vector<double> sigma(p);
  for (std::size_t i = 0; i < p; ++i) {
    sigma[i] = std::sqrt(sigma_squared(a, h[i], static_cast<Eigen::Index>(i)));
  }

  std::vector<PairCoefficients> pairs;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      const double ss = sigma[i] * sigma[j];
      PairCoefficients pc{i, j, sigma[i], sigma[j], GeneralCoefficients{}};
      if (classify_pair(h[i], h[j]) == PairRegime::Critical) {
        const double b = special::beta(h[i] + 0.5, h[j] + 0.5);
        const double sines =
            0.5 * (std::sin(kPi * h[i]) + std::sin(kPi * h[j]));
        const double d = b * (sines * (a.app(ii, jj) + a.amm(ii, jj)) -
                              a.apm(ii, jj) - a.amp(ii, jj)) / ss;
        const double f = (h[j] - h[i]) * (a.app(ii, jj) - a.amm(ii, jj)) / ss;
        pc.coefficients = CriticalCoefficients{d, f};
      } else {
        const double c_ij =
            2.0 * scaled_c(h[i], h[j], a.app(ii, jj), a.amm(ii, jj), a.apm(ii, jj)) / ss;
        const double c_ji =
            2.0 * scaled_c(h[j], h[i], a.app(jj, ii), a.amm(jj, ii), a.apm(jj, ii)) / ss;
        pc.coefficients = GeneralCoefficients{c_ij, c_ji};
      }
      pairs.push_back(pc);
    }
  }
  return CovarianceModel(h, std::move(sigma), std::move(pairs));
}

TildeC tilde_c(const MixingMatrices& m) {
  const Eigen::VectorXd cosine = trig_of(m.hurst(), [](double x) { return std::cos(x); });
  const Eigen::VectorXd sine = trig_of(m.hurst(), [](double x) { return std::sin(x); });
  const auto& ap = m.a_plus();
  const auto& am = m.a_minus();
  const Eigen::MatrixXd pm = ap * am.transpose();
  return {cosine.asDiagonal() * (ap * ap.transpose()) +
          (am * am.transpose()) * cosine.asDiagonal() -
          sine.asDiagonal() * pm * cosine.asDiagonal() -
          cosine.asDiagonal() * pm * sine.asDiagonal()};
}

std::string_view to_string(InfeasibleReason reason) {
  return reason == InfeasibleReason::NotSymmetric ? "NotSymmetric" : "NotPD";
}

FactorizeResult causal_factorize(const TildeC& c_tilde, const HurstVector& h) {
  const auto p = static_cast<Eigen::Index>(h.size());
  if (c_tilde.c_tilde.rows() != p || c_tilde.c_tilde.cols() != p) {
    throw Error(ErrorCode::ParseError, "C~ must be p x p");
  }
  const Eigen::VectorXd cosine = trig_of(h, [](double x) { return std::cos(x); });
  for (Eigen::Index i = 0; i < p; ++i) {
    if (std::abs(cosine(i)) < 1e-12) {
      std::ostringstream os;
      os << "cos(H_" << i + 1 << " pi) vanishes";
      throw Error(ErrorCode::SingularCosine, os.str());
    }
  }
  const Eigen::MatrixXd mat = cosine.cwiseInverse().asDiagonal() * c_tilde.c_tilde;

  FactorizeResult result;
  const double size = max_abs(mat);
  const double asym = max_abs(mat - mat.transpose());
  if (asym > 1e-10 * size) {
    result.reason = InfeasibleReason::NotSymmetric;
    result.statistic = size > 0.0 ? asym / size : asym;
    return result;
  }
  const Eigen::MatrixXd sym = 0.5 * (mat + mat.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().cwiseAbs().maxCoeff();
  result.statistic = lo;
  if (!(lo > kDefinitenessSlack * hi)) {
    result.reason = InfeasibleReason::NotPD;
    return result;
  }
  result.mixing.emplace(cholesky_psd(sym), Eigen::MatrixXd::Zero(p, p), h);
  return result;
}

double assemble_via_kernels(const MixingMatrices& m, std::size_t i,
                            std::size_t j, double s, double t) {
  check_index(m, i);
  check_index(m, j);
  const AlphaProducts a = alpha_products(m);
  const auto ii = static_cast<Eigen::Index>(i);
  const auto jj = static_cast<Eigen::Index>(j);
  const double hi = m.hurst()[i];
  const double hj = m.hurst()[j];
  using kernels::KernelKind;
  using kernels::kernel_cov;
  return a.app(ii, jj) * kernel_cov(KernelKind::PP, hi, hj, s, t) +
         a.apm(ii, jj) * kernel_cov(KernelKind::PM, hi, hj, s, t) +
         a.amp(ii, jj) * kernel_cov(KernelKind::MP, hi, hj, s, t) +
         a.amm(ii, jj) * kernel_cov(KernelKind::MM, hi, hj, s, t);
}

}  // namespace vfbm
