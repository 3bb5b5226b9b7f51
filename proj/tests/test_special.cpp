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
#include <random>

#include "oracles.hpp"
#include "vfbm/constants.hpp"
#include "vfbm/error.hpp"
#include "vfbm/special.hpp"

using namespace vfbm;

TEST_SUITE("special") {

TEST_CASE("log_gamma at integers and one half") {
  CHECK(std::abs(special::log_gamma(1.0)) <= 1e-15);
  CHECK(std::abs(special::log_gamma(2.0)) <= 1e-15);
  CHECK(oracle::rel_err(special::log_gamma(0.5), 0.5 * std::log(kPi)) <= 1e-14);
  CHECK(oracle::rel_err(special::log_gamma(5.0), std::log(24.0)) <= 1e-14);
}

TEST_CASE("log_gamma against the C library over (0, 3]") {
  double worst = 0.0;
  for (int k = 1; k <= 600; ++k) {
    const double x = 0.005 * k;
    const double want = std::lgamma(x);
    const double err = std::abs(special::log_gamma(x) - want) / std::max(1.0, std::abs(want));
    worst = std::max(worst, err);
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("log_gamma recurrence") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 4.0);
  for (int k = 0; k < 200; ++k) {
    const double x = u(rng);
    CHECK(std::abs(special::log_gamma(x + 1.0) - special::log_gamma(x) - std::log(x)) <= 1e-13);
  }
}

TEST_CASE("log_gamma rejects non-positive input") {
  CHECK_THROWS_AS(special::log_gamma(0.0), Error);
  CHECK_THROWS_AS(special::log_gamma(-1.0), Error);
  CHECK_THROWS_AS(special::log_gamma(std::nan("")), Error);
}

TEST_CASE("beta closed values") {
  CHECK(oracle::rel_err(special::beta(1.0, 1.0), 1.0) <= 1e-14);
  CHECK(oracle::rel_err(special::beta(0.5, 0.5), kPi) <= 1e-14);
}

TEST_CASE("beta against the Euler integral") {
  const double want = static_cast<double>(oracle::beta(0.8L, 1.1L));
  CHECK(oracle::rel_err(special::beta(0.8, 1.1), want) <= 1e-13);
  // Frozen high-precision reference.
  CHECK(oracle::rel_err(special::beta(0.8, 1.1), 1.151622149289569787) <= 1e-13);
  for (double x : {0.6, 0.75, 0.95, 1.2, 1.4}) {
    for (double y : {0.6, 0.85, 1.1, 1.3}) {
      CHECK(oracle::rel_err(special::beta(x, y),
                            static_cast<double>(oracle::beta(x, y))) <= 1e-13);
    }
  }
}

TEST_CASE("beta is exactly symmetric") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  for (int k = 0; k < 500; ++k) {
    const double x = u(rng), y = u(rng);
    CHECK(special::beta(x, y) == special::beta(y, x));
  }
}

TEST_CASE("beta domain") {
  CHECK_THROWS_AS(special::beta(0.0, 1.0), Error);
  CHECK_THROWS_AS(special::beta(1.0, -0.5), Error);
}

TEST_CASE("phi values") {
  CHECK(oracle::rel_err(special::phi(0.25, 0.25), special::beta(0.75, 0.75)) <= 1e-14);
  const long double ref = oracle::beta(0.8L, 1.1L) / std::sin(0.9L * 3.141592653589793238462643383279502884L);
  CHECK(oracle::rel_err(special::phi(0.3, 0.6), static_cast<double>(ref)) <= 1e-12);
  CHECK(oracle::rel_err(special::phi(0.3, 0.6), 3.7267275594954597722) <= 1e-12);
  CHECK(special::phi(0.3, 0.6) == special::phi(0.6, 0.3));
}

TEST_CASE("phi refuses the critical sum") {
  try {
    special::phi(0.3, 0.7);
    FAIL("expected CriticalRegime");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CriticalRegime);
  }
}

}
