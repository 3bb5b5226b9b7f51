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

#ifndef VFBM_MODEL_HPP
#define VFBM_MODEL_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace vfbm {

/// Diagonal self-similarity exponent H = diag(H_1, ..., H_p), 0 < H_i < 1.
/// Only obtainable through validate_hurst().
class HurstVector {
 public:
  std::size_t size() const noexcept { return h_.size(); }
  double operator[](std::size_t i) const { return h_[i]; }
  std::span<const double> values() const noexcept { return h_; }

 private:
  explicit HurstVector(std::vector<double> h) : h_(std::move(h)) {}
  friend HurstVector validate_hurst(std::span<const double>);

  std::vector<double> h_;
};

/// Throws OutOfRange for an entry outside (0, 1) and NearSingularPair when
/// some i != j has 0 < |H_i + H_j - 1| < 1e-8 without being critical.
HurstVector validate_hurst(std::span<const double> h);

enum class PairRegime { General, Critical };

std::string_view to_string(PairRegime regime);

/// Critical iff |h_i + h_j - 1| <= 1e-12.
PairRegime classify_pair(double h_i, double h_j);

struct GeneralCoefficients {
  double c_ij = 0.0;
  double c_ji = 0.0;
};

struct CriticalCoefficients {
  double d_ij = 0.0;
  double f_ij = 0.0;
};

/// Cross-covariance parameters of one ordered pair (i, j), 0-based.
struct PairCoefficients {
  std::size_t i = 0;
  std::size_t j = 0;
  double sigma_i = 1.0;
  double sigma_j = 1.0;
  std::variant<GeneralCoefficients, CriticalCoefficients> coefficients;

  PairRegime regime() const noexcept {
    return std::holds_alternative<CriticalCoefficients>(coefficients)
               ? PairRegime::Critical
               : PairRegime::General;
  }

  /// The same coefficients seen from the (j, i) orientation:
  /// c_ij and c_ji trade places, f_ij changes sign.
  PairCoefficients transposed() const;
};

/// Fully specified law of a vfBm: exponents, scales and every cross pair.
/// Immutable once built.
class CovarianceModel {
 public:
  /// `pairs` must list every unordered pair i < j exactly once (either
  /// orientation). Diagonal entries may be given only as c = (1, 1).
  /// Regimes are stored as supplied; validate_model() checks them.
  CovarianceModel(HurstVector hurst, std::vector<double> sigma,
                  std::vector<PairCoefficients> pairs);

  std::size_t dimension() const noexcept { return hurst_.size(); }
  const HurstVector& hurst() const noexcept { return hurst_; }
  double sigma(std::size_t i) const { return sigma_.at(i); }
  std::span<const double> sigmas() const noexcept { return sigma_; }

  /// Coefficients oriented as (i, j); i == j gives c = (1, 1).
  PairCoefficients pair(std::size_t i, std::size_t j) const;

  /// R_ii = 1, R_ij = (c_ij + c_ji) / 2 or d_ij: the correlation matrix
  /// of X(1).
  const Eigen::MatrixXd& r() const noexcept { return r_; }

 private:
  std::size_t upper_index(std::size_t i, std::size_t j) const;

  HurstVector hurst_;
  std::vector<double> sigma_;
  std::vector<PairCoefficients> upper_;  // i < j, row-major
  Eigen::MatrixXd r_;
};

struct RegimeIssue {
  std::size_t i = 0;
  std::size_t j = 0;
  PairRegime expected = PairRegime::General;
  PairRegime supplied = PairRegime::General;
};

struct ValidationReport {
  double symmetry_error = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  bool symmetric = false;
  bool positive_definite = false;
  std::vector<RegimeIssue> regime_issues;

  /// Passing is a necessary condition for a vfBm with these coefficients
  /// to exist; it does not prove one does.
  bool pass() const noexcept {
    return symmetric && positive_definite && regime_issues.empty();
  }
};

ValidationReport validate_model(const CovarianceModel& model);

/// Throws NotPositiveDefinite or RegimeMismatch when validate_model fails.
void ensure_valid(const CovarianceModel& model);

/// Real p x p matrices A+ and A- of the two-sided moving-average
/// representation. Rows of (A+, A-) may not vanish together.
class MixingMatrices {
 public:
  MixingMatrices(Eigen::MatrixXd a_plus, Eigen::MatrixXd a_minus,
                 HurstVector hurst);

  std::size_t dimension() const noexcept { return hurst_.size(); }
  const Eigen::MatrixXd& a_plus() const noexcept { return a_plus_; }
  const Eigen::MatrixXd& a_minus() const noexcept { return a_minus_; }
  const HurstVector& hurst() const noexcept { return hurst_; }
  bool causal() const { return a_minus_.isZero(0.0); }

 private:
  Eigen::MatrixXd a_plus_;
  Eigen::MatrixXd a_minus_;
  HurstVector hurst_;
};

/// Strictly increasing, finite observation times. Zero and negative times
/// are allowed.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> times);

  std::size_t size() const noexcept { return times_.size(); }
  double operator[](std::size_t k) const { return times_[k]; }
  std::span<const double> times() const noexcept { return times_; }
  double max_abs() const;

  TimeGrid scaled(double lambda) const;

 private:
  std::vector<double> times_;
};

}  // namespace vfbm

#endif  // VFBM_MODEL_HPP
