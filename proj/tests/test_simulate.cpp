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

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "vfbm/covariance.hpp"
#include "vfbm/error.hpp"
#include "vfbm/linalg.hpp"
#include "vfbm/repr.hpp"
#include "vfbm/simulate.hpp"

using namespace vfbm;

namespace {

CovarianceModel brownian() {
  const std::vector<double> h = {0.5};
  return CovarianceModel(validate_hurst(h), {1.0}, {});
}

CovarianceModel upper_model(double h1, double h2) {
  Eigen::MatrixXd ap(2, 2);
  ap << 1.0, 0.5, 0.0, 1.0;
  const std::vector<double> h = {h1, h2};
  return coeffs_from_mixing(MixingMatrices(ap, Eigen::MatrixXd::Zero(2, 2), validate_hurst(h)));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no vfbm::Error thrown");
  return ErrorCode::IOError;
}

// Share of table entries within 4 standard errors of the exact covariance.
double share_within(const CovTable& t, const CovarianceModel& m) {
  const std::size_t p = t.dimension;
  std::size_t ok = 0, total = 0;
  for (std::size_t k = 0; k < t.grid.size(); ++k)
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t l = 0; l < t.grid.size(); ++l)
        for (std::size_t j = 0; j < p; ++j) {
          const auto a = static_cast<Eigen::Index>(k * p + i);
          const auto b = static_cast<Eigen::Index>(l * p + j);
          const double exact = cov_pair(m, i, j, t.grid[k], t.grid[l]);
          ok += std::abs(t.cov(a, b) - exact) <= 4.0 * t.se(a, b) ? 1 : 0;
          ++total;
        }
  return static_cast<double>(ok) / static_cast<double>(total);
}

}  // namespace

TEST_SUITE("simulate") {

TEST_CASE("cholesky of simple matrices") {
  CHECK(cholesky_psd(Eigen::MatrixXd::Identity(4, 4)).isIdentity(0.0));

  Eigen::MatrixXd bm(3, 3);
  bm << 1, 1, 1, 1, 2, 2, 1, 2, 3;
  Eigen::MatrixXd want(3, 3);
  want << 1, 0, 0, 1, 1, 0, 1, 1, 1;
  CHECK((cholesky_psd(bm) - want).cwiseAbs().maxCoeff() <= 1e-15);

  const CovMatrix c = cov_matrix(upper_model(0.3, 0.6), TimeGrid({-1.0, 0.0, 2.0}));
  const Eigen::MatrixXd l = cholesky_psd(c.entries);
  CHECK(l.row(2).isZero(0.0));
  CHECK(l.row(3).isZero(0.0));
  CHECK((l * l.transpose() - c.entries).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK(l.isLowerTriangular(0.0));

  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;
  CHECK(code_of([&] { cholesky_psd(indefinite); }) == ErrorCode::NotPSD);
}

TEST_CASE("one Brownian path per replication") {
  const PathEnsemble one = sample_paths(brownian(), TimeGrid({1.0}), 1, 9);
  CHECK(one.paths() == 1);
  CHECK(one.values.cols() == 1);

  // Increments over disjoint intervals are uncorrelated.
  const PathEnsemble e = sample_paths(brownian(), TimeGrid({1.0, 2.0, 3.0}), 40000, 10);
  double cross = 0.0;
  for (std::size_t r = 0; r < e.paths(); ++r) {
    cross += (e.at(r, 1, 0) - e.at(r, 0, 0)) * (e.at(r, 2, 0) - e.at(r, 1, 0));
  }
  cross /= static_cast<double>(e.paths());
  CHECK(std::abs(cross) <= 4.0 / std::sqrt(40000.0));
}

TEST_CASE("sampling is deterministic") {
  const auto m = upper_model(0.3, 0.7);
  const TimeGrid g({0.5, 1.0, 2.0});
  const PathEnsemble a = sample_paths(m, g, 300, 42);
  const PathEnsemble b = sample_paths(m, g, 300, 42);
  const PathEnsemble c = sample_paths(m, g, 300, 43);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  CHECK(a.model_hash == model_hash(m));
  CHECK(model_hash(m) != model_hash(upper_model(0.3, 0.6)));

  // The leading paths do not depend on how many follow.
  const PathEnsemble shorter = sample_paths(m, g, 100, 42);
  CHECK(shorter.values == a.values.topRows(100));

  const char* saved = std::getenv("VFBM_THREADS");
  const std::string restore = saved ? saved : "";
  setenv("VFBM_THREADS", "1", 1);
  const PathEnsemble serial = sample_paths(m, g, 300, 42);
  setenv("VFBM_THREADS", "3", 1);
  const PathEnsemble threaded = sample_paths(m, g, 300, 42);
  if (saved) setenv("VFBM_THREADS", restore.c_str(), 1); else unsetenv("VFBM_THREADS");
  CHECK(serial.values == threaded.values);
  CHECK(serial.values == a.values);
}

TEST_CASE("zero time gives zero samples") {
  const PathEnsemble e = sample_paths(upper_model(0.3, 0.6), TimeGrid({0.0, 1.0}), 50, 1);
  for (std::size_t r = 0; r < e.paths(); ++r) {
    CHECK(e.at(r, 0, 0) == 0.0);
    CHECK(e.at(r, 0, 1) == 0.0);
  }
  CHECK(code_of([] { sample_paths(brownian(), TimeGrid({1.0}), 0, 1); }) == ErrorCode::ConfigError);
}

TEST_CASE("empirical covariance") {
  const TimeGrid g({1.0, 2.0});
  const CovTable zero = empirical_cov(RowMatrix::Zero(10, 2), g, 1);
  CHECK(zero.cov.isZero(0.0));
  CHECK(zero.se.isZero(0.0));

  RowMatrix two(2, 2);
  two << 1.0, 3.0, -1.0, 5.0;
  const CovTable t = empirical_cov(two, g, 1);
  // Means (0, 4); deviations (1, -1) and (-1, 1).
  CHECK(t.cov(0, 0) == doctest::Approx(2.0));
  CHECK(t.cov(1, 1) == doctest::Approx(2.0));
  CHECK(t.cov(0, 1) == doctest::Approx(-2.0));
  CHECK(t.samples == 2);
  CHECK(code_of([&] { empirical_cov(RowMatrix::Zero(1, 2), g, 1); }) == ErrorCode::ConfigError);
}

TEST_CASE("sample covariance matches the model") {
  const auto m = upper_model(0.3, 0.6);
  const TimeGrid g({-1.0, 0.5, 1.5});
  double worst = 1.0;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    worst = std::min(worst, share_within(empirical_cov(sample_paths(m, g, 20000, seed)), m));
  }
  CHECK(worst >= 0.95);
}

TEST_CASE("noise mesh") {
  const std::vector<double> singular = {0.0, 1.0, 2.0};
  const auto cells = noise_mesh(singular, -50.0, 3.0, 0.05);
  REQUIRE_FALSE(cells.empty());
  CHECK(cells.front().lo == -50.0);
  CHECK(cells.back().hi == 3.0);
  bool hits_one = false;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    CHECK(cells[k].hi > cells[k].lo);
    if (k > 0) CHECK(cells[k].lo == cells[k - 1].hi);
    hits_one = hits_one || cells[k].hi == 1.0;
    if (std::abs(cells[k].lo) < 1.0 && std::abs(cells[k].hi) < 1.0) {
      CHECK(cells[k].hi - cells[k].lo <= 0.05 + 1e-15);
    }
  }
  CHECK(hits_one);
}

TEST_CASE("moving-average Monte Carlo of Brownian motion") {
  const std::vector<double> h = {0.5};
  const MixingMatrices mix(Eigen::MatrixXd::Identity(1, 1), Eigen::MatrixXd::Zero(1, 1), validate_hurst(h));
  McConfig cfg;
  cfg.n_reps = 20000;
  const CovTable t = mc_integral_oracle(mix, TimeGrid({1.0}), cfg);
  CHECK(std::abs(t.cov(0, 0) - 1.0) <= 4.0 * t.se(0, 0));

  McConfig few = cfg;
  few.n_reps = 10;
  CHECK(code_of([&] { mc_integral_oracle(mix, TimeGrid({1.0}), few); }) == ErrorCode::ConfigError);
  McConfig narrow = cfg;
  narrow.trunc = 1.5;
  CHECK(code_of([&] { mc_integral_oracle(mix, TimeGrid({1.0}), narrow); }) == ErrorCode::ConfigError);
}

TEST_CASE("Monte Carlo refuses a truncation that drops too much variance") {
  const std::vector<double> h = {0.9};
  const MixingMatrices mix(Eigen::MatrixXd::Identity(1, 1), Eigen::MatrixXd::Zero(1, 1), validate_hurst(h));
  McConfig cfg;
  cfg.n_reps = 200;
  cfg.trunc = 10.0;
  CHECK(code_of([&] { mc_integral_oracle(mix, TimeGrid({1.0}), cfg); }) == ErrorCode::ConfigError);
}

TEST_CASE("replication streams") {
  auto a = replication_engine(5, 7);
  auto b = replication_engine(5, 7);
  auto c = replication_engine(5, 8);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
}

}
