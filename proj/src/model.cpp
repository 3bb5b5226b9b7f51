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

#include "vfbm/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vfbm/constants.hpp"
#include "vfbm/error.hpp"

namespace vfbm {

HurstVector validate_hurst(std::span<const double> h) {
  if (h.empty()) {
    throw Error(ErrorCode::OutOfRange, "hurst vector must have p >= 1 entries");
  }
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0 && h[i] < 1.0)) {
      std::ostringstream os;
      os << "H_" << i + 1 << " = " << h[i] << " is outside (0, 1)";
      throw Error(ErrorCode::OutOfRange, os.str());
    }
  }
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t j = i + 1; j < h.size(); ++j) {
      const double gap = std::abs(h[i] + h[j] - 1.0);
      if (gap > kCriticalTolerance && gap < kNearSingularBand) {
        std::ostringstream os;
        os << "H_" << i + 1 << " + H_" << j + 1 << " - 1 = " << gap
           << " is too close to the critical sum";
        throw Error(ErrorCode::NearSingularPair, os.str());
      }
    }
  }
  return HurstVector(std::vector<double>(h.begin(), h.end()));
}

std::string_view to_string(PairRegime regime) {
  return regime == PairRegime::Critical ? "Critical" : "General";
}

PairRegime classify_pair(double h_i, double h_j) {
  return std::abs(h_i + h_j - 1.0) <= kCriticalTolerance ? PairRegime::Critical
                                                         : PairRegime::General;
}

PairCoefficients PairCoefficients::transposed() const {
  PairCoefficients out{j, i, sigma_j, sigma_i, coefficients};
  if (auto* g = std::get_if<GeneralCoefficients>(&out.coefficients)) {
    std::swap(g->c_ij, g->c_ji);
  } else {
    auto& c = std::get<CriticalCoefficients>(out.coefficients);
    c.f_ij = -c.f_ij;
  }
  return out;
}

CovarianceModel::CovarianceModel(HurstVector hurst, std::vector<double> sigma,
                                 std::vector<PairCoefficients> pairs)
    : hurst_(std::move(hurst)), sigma_(std::move(sigma)) {
  const std::size_t p = hurst_.size();
  if (sigma_.size() != p) {
    throw Error(ErrorCode::ParseError, "sigma must have one entry per component");
  }
  for (std::size_t i = 0; i < p; ++i) {
    if (!(sigma_[i] > 0.0) || !std::isfinite(sigma_[i])) {
      std::ostringstream os;
      os << "sigma_" << i + 1 << " must be positive";
      throw Error(ErrorCode::ParseError, os.str());
    }
  }

  std::vector<std::optional<PairCoefficients>> slots(p * (p - 1) / 2);
  for (auto pc : pairs) {
    if (pc.i >= p || pc.j >= p) {
      throw Error(ErrorCode::IndexOutOfRange, "pair index exceeds dimension");
    }
    if (pc.i == pc.j) {
      const auto* g = std::get_if<GeneralCoefficients>(&pc.coefficients);
      if (g == nullptr || g->c_ij != 1.0 || g->c_ji != 1.0) {
        throw Error(ErrorCode::ParseError,
                    "diagonal pairs must carry c_ii = c_ii' = 1");
      }
      continue;
    }
    if (pc.i > pc.j) {
      pc = pc.transposed();
    }
    auto& slot = slots[upper_index(pc.i, pc.j)];
    if (slot) {
      std::ostringstream os;
      os << "pair (" << pc.i + 1 << ", " << pc.j + 1 << ") given twice";
      throw Error(ErrorCode::ParseError, os.str());
    }
    pc.sigma_i = sigma_[pc.i];
    pc.sigma_j = sigma_[pc.j];
    slot = pc;
  }

  upper_.reserve(slots.size());
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      const auto& slot = slots[upper_index(i, j)];
      if (!slot) {
        std::ostringstream os;
        os << "pair (" << i + 1 << ", " << j + 1 << ") is missing";
        throw Error(ErrorCode::ParseError, os.str());
      }
      upper_.push_back(*slot);
    }
  }

  r_ = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(p),
                                 static_cast<Eigen::Index>(p));
  for (const auto& pc : upper_) {
    double rij = 0.0;
    if (const auto* g = std::get_if<GeneralCoefficients>(&pc.coefficients)) {
      rij = 0.5 * (g->c_ij + g->c_ji);
    } else {
      rij = std::get<CriticalCoefficients>(pc.coefficients).d_ij;
    }
    const auto a = static_cast<Eigen::Index>(pc.i);
    const auto b = static_cast<Eigen::Index>(pc.j);
    r_(a, b) = rij;
    r_(b, a) = rij;
  }
}

std::size_t CovarianceModel::upper_index(std::size_t i, std::size_t j) const {
  // Row-major offset of (i, j), i < j, in the strict upper triangle.
  const std::size_t p = hurst_.size();
  return i * p - i * (i + 1) / 2 + (j - i - 1);
}

PairCoefficients CovarianceModel::pair(std::size_t i, std::size_t j) const {
  const std::size_t p = hurst_.size();
  if (i >= p || j >= p) {
    std::ostringstream os;
    os << "component index (" << i + 1 << ", " << j + 1
       << ") outside 1.." << p;
    throw Error(ErrorCode::IndexOutOfRange, os.str());
  }
  if (i == j) {
    return {i, i, sigma_[i], sigma_[i], GeneralCoefficients{1.0, 1.0}};
  }
  if (i < j) {
    return upper_[upper_index(i, j)];
  }
  return upper_[upper_index(j, i)].transposed();
}

ValidationReport validate_model(const CovarianceModel& model) {
  ValidationReport report;
  const Eigen::MatrixXd& r = model.r();
  report.symmetry_error = (r - r.transpose()).cwiseAbs().maxCoeff();
  report.symmetric = report.symmetry_error <= 1e-12;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r, Eigen::EigenvaluesOnly);
  report.lambda_min = eig.eigenvalues().minCoeff();
  report.lambda_max = eig.eigenvalues().maxCoeff();
  report.positive_definite =
      report.lambda_min > -kDefinitenessSlack * std::max(1.0, report.lambda_max);

  const auto h = model.hurst();
  for (std::size_t i = 0; i < model.dimension(); ++i) {
    for (std::size_t j = i + 1; j < model.dimension(); ++j) {
      const PairRegime expected = classify_pair(h[i], h[j]);
      const PairRegime supplied = model.pair(i, j).regime();
      if (expected != supplied) {
        report.regime_issues.push_back({i, j, expected, supplied});
      }
    }
  }
  return report;
}

void ensure_valid(const CovarianceModel& model) {
  const ValidationReport report = validate_model(model);
  if (!report.regime_issues.empty()) {
    const auto& issue = report.regime_issues.front();
    std::ostringstream os;
    os << "pair (" << issue.i + 1 << ", " << issue.j + 1 << ") is "
       << to_string(issue.expected) << " but carries "
       << to_string(issue.supplied) << " coefficients";
    throw Error(ErrorCode::RegimeMismatch, os.str());
  }
  if (!report.symmetric || !report.positive_definite) {
    std::ostringstream os;
    os.precision(17);
    os << "R is not positive definite: lambda_min = " << report.lambda_min;
    throw Error(ErrorCode::NotPositiveDefinite, os.str());
  }
}

MixingMatrices::MixingMatrices(Eigen::MatrixXd a_plus, Eigen::MatrixXd a_minus,
                               HurstVector hurst)
    : a_plus_(std::move(a_plus)),
      a_minus_(std::move(a_minus)),
      hurst_(std::move(hurst)) {
  const auto p = static_cast<Eigen::Index>(hurst_.size());
  if (a_plus_.rows() != p || a_plus_.cols() != p || a_minus_.rows() != p ||
      a_minus_.cols() != p) {
    std::ostringstream os;
    os << "mixing matrices must be " << p << " x " << p;
    throw Error(ErrorCode::ParseError, os.str());
  }
  if (!a_plus_.allFinite() || !a_minus_.allFinite()) {
    throw Error(ErrorCode::ParseError, "mixing matrices must be finite");
  }
  for (Eigen::Index i = 0; i < p; ++i) {
    if (a_plus_.row(i).isZero(0.0) && a_minus_.row(i).isZero(0.0)) {
      std::ostringstream os;
      os << "component " << i + 1 << " has zero rows in both A+ and A-";
      throw Error(ErrorCode::DegenerateComponent, os.str());
    }
  }
}

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.empty()) {
    throw Error(ErrorCode::ParseError, "time grid is empty");
  }
  for (std::size_t k = 0; k < times_.size(); ++k) {
    if (!std::isfinite(times_[k])) {
      throw Error(ErrorCode::ParseError, "time grid has a non-finite entry");
    }
    if (k > 0 && !(times_[k] > times_[k - 1])) {
      throw Error(ErrorCode::ParseError, "time grid must be strictly increasing");
    }
  }
}

double TimeGrid::max_abs() const {
  return std::max(std::abs(times_.front()), std::abs(times_.back()));
}

TimeGrid TimeGrid::scaled(double lambda) const {
  if (!(lambda > 0.0)) {
    throw Error(ErrorCode::DomainError, "grid scale factor must be positive");
  }
  std::vector<double> out(times_);
  for (double& t : out) t *= lambda;
  return TimeGrid(std::move(out));
}

}  // namespace vfbm
