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

#include "vfbm/special.hpp"

#include <array>
#include <cmath>
#include <string>

#include "vfbm/constants.hpp"
#include "vfbm/error.hpp"

namespace vfbm::special {

namespace {

constexpr double kLogRootTwoPi = 0.91893853320467274178;
constexpr double kEulerGamma = 0.57721566490153286061;

// Lanczos, gamma = 7, truncated at 1/(z + 8).
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993227684700473478,
    676.520368121885098567009190444019,
    -1259.13921672240287047156078755283,
    771.3234287776530788486528258894,
    -176.61502916214059906584551354,
    12.507343278686904814458936853,
    -0.13857109526572011689554707,
    9.984369578019570859563e-6,
    1.50563273514931155834e-7};

// zeta(2) .. zeta(30)
constexpr std::array<double, 29> kZeta = {
    1.6449340668482264, 1.2020569031595942, 1.0823232337111381,
    1.03692775514337,   1.0173430619844492, 1.008349277381923,
    1.0040773561979444, 1.0020083928260821, 1.000994575127818,
    1.0004941886041194, 1.000246086553308,  1.0001227133475785,
    1.0000612481350588, 1.000030588236307,  1.0000152822594086,
    1.0000076371976379, 1.000003817293265,  1.0000019082127165,
    1.0000009539620338, 1.0000004769329869, 1.0000002384505027,
    1.000000119219926,  1.000000059608189,  1.0000000298035034,
    1.0000000149015549, 1.0000000074507118, 1.000000003725334,
    1.0000000018626598, 1.0000000009313275};

double lanczos(double x) {
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) {
    series += kLanczos[k] / (z + static_cast<double>(k));
  }
  const double base = z + 7.5;
  return (z + 0.5) * std::log(base) - base + kLogRootTwoPi + std::log(series);
}

// ln Gamma(1 + e) = -gamma e + sum_{k>=2} (-1)^k zeta(k) e^k / k, |e| < 1.
double log_gamma_near_one(double e) {
  double sum = 0.0;
  double power = -e;  // (-e)^k after the update below
  for (std::size_t k = 2; k < kZeta.size() + 2; ++k) {
    power *= -e;
    sum += kZeta[k - 2] * power / static_cast<double>(k);
  }
  return -kEulerGamma * e + sum;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw Error(ErrorCode::DomainError,
                "log_gamma: argument must be positive, got " + std::to_string(x));
  }
  if (x < 0.5) {
    return log_gamma(x + 1.0) - std::log(x);
  }
  if (std::abs(x - 1.0) < 0.25) {
    return log_gamma_near_one(x - 1.0);
  }
  if (std::abs(x - 2.0) < 0.25) {
    const double e = x - 2.0;
    return std::log1p(e) + log_gamma_near_one(e);
  }
  return lanczos(x);
}

double beta(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) {
    throw Error(ErrorCode::DomainError, "beta: arguments must be positive");
  }
  // Sum in a fixed order so that beta(x, y) == beta(y, x) bit for bit.
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  return std::exp(log_gamma(lo) + log_gamma(hi) - log_gamma(lo + hi));
}

double phi(double h_i, double h_j) {
  const double sum = h_i + h_j;
  if (std::abs(sum - 1.0) <= kCriticalTolerance) {
    throw Error(ErrorCode::CriticalRegime,
                "phi: H_i + H_j = 1, use the critical-regime formulas");
  }
  return beta(h_i + 0.5, h_j + 0.5) / std::sin(kPi * sum);
}

}  // namespace vfbm::special
