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

#include <random>
#include <vector>

#include "vfbm/error.hpp"
#include "vfbm/model.hpp"
#include "vfbm/repr.hpp"
#include "vfbm/verify.hpp"

using namespace vfbm;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no vfbm::Error thrown");
  return ErrorCode::IOError;
}

CovarianceModel two_component(double h1, double h2, PairCoefficients pc) {
  const std::vector<double> h = {h1, h2};
  return CovarianceModel(validate_hurst(h), {1.0, 1.0}, {pc});
}

PairCoefficients general(std::size_t i, std::size_t j, double cij, double cji) {
  return {i, j, 1.0, 1.0, GeneralCoefficients{cij, cji}};
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("validate_hurst") {
  const std::vector<double> bm = {0.5};
  CHECK(validate_hurst(bm).size() == 1);

  const std::vector<double> pair = {0.3, 0.7};
  const HurstVector hv = validate_hurst(pair);
  CHECK(hv.size() == 2);
  CHECK(classify_pair(hv[0], hv[1]) == PairRegime::Critical);

  const std::vector<double> high = {0.2, 1.1};
  CHECK(code_of([&] { validate_hurst(high); }) == ErrorCode::OutOfRange);
  const std::vector<double> zero = {0.0, 0.5};
  CHECK(code_of([&] { validate_hurst(zero); }) == ErrorCode::OutOfRange);
  const std::vector<double> none;
  CHECK(code_of([&] { validate_hurst(none); }) == ErrorCode::OutOfRange);
  const std::vector<double> near = {0.3, 0.7 + 1e-10};
  CHECK(code_of([&] { validate_hurst(near); }) == ErrorCode::NearSingularPair);
}

TEST_CASE("classify_pair") {
  CHECK(classify_pair(0.3, 0.6) == PairRegime::General);
  CHECK(classify_pair(0.3, 0.7) == PairRegime::Critical);
  CHECK(classify_pair(0.5, 0.5) == PairRegime::Critical);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int k = 0; k < 1000; ++k) {
    const double a = u(rng), b = u(rng);
    CHECK(classify_pair(a, b) == classify_pair(b, a));
    CHECK(classify_pair(a, 1.0 - a) == PairRegime::Critical);
  }
}

TEST_CASE("independent components pass") {
  const auto m = two_component(0.3, 0.6, general(0, 1, 0.0, 0.0));
  const ValidationReport rep = validate_model(m);
  CHECK(rep.pass());
  CHECK(rep.lambda_min == doctest::Approx(1.0));
  CHECK(m.r().isIdentity(0.0));
  CHECK_NOTHROW(ensure_valid(m));
}

TEST_CASE("correlation beyond one fails") {
  const auto m = two_component(0.3, 0.6, general(0, 1, 1.25, 1.25));
  const ValidationReport rep = validate_model(m);
  CHECK_FALSE(rep.pass());
  CHECK_FALSE(rep.positive_definite);
  CHECK(rep.lambda_min == doctest::Approx(1.0 - 1.25).epsilon(1e-14));
  CHECK(code_of([&] { ensure_valid(m); }) == ErrorCode::NotPositiveDefinite);
}

TEST_CASE("asymmetric coefficients enter R through their mean") {
  const auto m = two_component(0.3, 0.6, general(0, 1, 1.5, -0.5));
  CHECK(m.r()(0, 1) == doctest::Approx(0.5));
  CHECK(m.r()(1, 0) == m.r()(0, 1));
  CHECK(validate_model(m).pass());
}

TEST_CASE("models from mixing matrices pass") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 50; ++k) {
    const auto layout = k % 2 ? verify::HurstLayout::WithCritical : verify::HurstLayout::General;
    const auto mix = verify::random_mixing(rng, 3, layout, k % 3 == 0);
    CHECK(validate_model(coeffs_from_mixing(mix)).pass());
  }
}

TEST_CASE("regime must match the exponents") {
  const auto wrong = two_component(0.3, 0.7, general(0, 1, 0.1, 0.1));
  const ValidationReport rep = validate_model(wrong);
  REQUIRE(rep.regime_issues.size() == 1);
  CHECK(rep.regime_issues[0].expected == PairRegime::Critical);
  CHECK(rep.regime_issues[0].supplied == PairRegime::General);
  CHECK(code_of([&] { ensure_valid(wrong); }) == ErrorCode::RegimeMismatch);

  const auto also_wrong = two_component(
      0.3, 0.6, PairCoefficients{0, 1, 1.0, 1.0, CriticalCoefficients{0.1, 0.0}});
  CHECK_FALSE(validate_model(also_wrong).pass());
}

TEST_CASE("pair orientation") {
  const std::vector<double> h = {0.3, 0.6, 0.7};
  const CovarianceModel m(
      validate_hurst(h), {1.0, 2.0, 3.0},
      {general(1, 0, 0.2, -0.1), general(0, 2, 0.3, 0.1),
       PairCoefficients{1, 2, 1.0, 1.0, GeneralCoefficients{0.05, 0.02}}});
  const auto g01 = std::get<GeneralCoefficients>(m.pair(0, 1).coefficients);
  CHECK(g01.c_ij == -0.1);
  CHECK(g01.c_ji == 0.2);
  CHECK(m.pair(0, 1).sigma_j == 2.0);
  const auto g10 = std::get<GeneralCoefficients>(m.pair(1, 0).coefficients);
  CHECK(g10.c_ij == 0.2);
  const auto same = std::get<GeneralCoefficients>(m.pair(2, 2).coefficients);
  CHECK(same.c_ij == 1.0);
  CHECK(code_of([&] { m.pair(0, 3); }) == ErrorCode::IndexOutOfRange);

  const PairCoefficients crit{0, 1, 1.0, 1.0, CriticalCoefficients{0.4, 0.25}};
  const auto t = crit.transposed();
  CHECK(t.i == 1);
  CHECK(std::get<CriticalCoefficients>(t.coefficients).d_ij == 0.4);
  CHECK(std::get<CriticalCoefficients>(t.coefficients).f_ij == -0.25);
}

TEST_CASE("every pair exactly once") {
  const std::vector<double> h = {0.3, 0.6, 0.7};
  CHECK(code_of([&] {
          CovarianceModel(validate_hurst(h), {1, 1, 1}, {general(0, 1, 0, 0), general(0, 2, 0, 0)});
        }) == ErrorCode::ParseError);
  CHECK(code_of([&] {
          CovarianceModel(validate_hurst(h), {1, 1, 1},
                          {general(0, 1, 0, 0), general(1, 0, 0, 0), general(0, 2, 0, 0),
                           general(1, 2, 0, 0)});
        }) == ErrorCode::ParseError);
  CHECK(code_of([&] {
          CovarianceModel(validate_hurst(h), {1, 1}, {general(0, 1, 0, 0), general(0, 2, 0, 0),
                                                      general(1, 2, 0, 0)});
        }) == ErrorCode::ParseError);
}

TEST_CASE("mixing matrices") {
  const std::vector<double> h = {0.3, 0.6};
  Eigen::MatrixXd ap(2, 2);
  ap << 1.0, 0.0, 0.0, 0.0;
  CHECK(code_of([&] { MixingMatrices(ap, Eigen::MatrixXd::Zero(2, 2), validate_hurst(h)); }) ==
        ErrorCode::DegenerateComponent);
  Eigen::MatrixXd am = Eigen::MatrixXd::Zero(2, 2);
  am(1, 0) = 1.0;
  const MixingMatrices ok(ap, am, validate_hurst(h));
  CHECK_FALSE(ok.causal());
  CHECK(code_of([&] { MixingMatrices(Eigen::MatrixXd::Identity(3, 3), Eigen::MatrixXd::Zero(3, 3),
                                     validate_hurst(h)); }) == ErrorCode::ParseError);
}

TEST_CASE("time grid") {
  const TimeGrid g({-1.0, 0.0, 2.5});
  CHECK(g.max_abs() == 2.5);
  CHECK(g.scaled(2.0)[2] == 5.0);
  CHECK(code_of([] { TimeGrid({1.0, 1.0}); }) == ErrorCode::ParseError);
  CHECK(code_of([] { TimeGrid({}); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { (void)g.scaled(-1.0); }) == ErrorCode::DomainError);
}

}
