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

#ifndef VFBM_VERIFY_HPP
#define VFBM_VERIFY_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "vfbm/model.hpp"

namespace vfbm::verify {

struct Check {
  std::string name;
  double statistic = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

enum class HurstLayout {
  General,       // every cross pair has |H_i + H_j - 1| >= 0.05
  WithCritical,  // components 1 and 2 satisfy H_1 + H_2 = 1 exactly
};

/// Exponents in [0.1, 0.9] for p components.
std::vector<double> random_hurst(std::mt19937_64& rng, std::size_t p,
                                 HurstLayout layout);

/// Gaussian A+ (and A- unless causal) with entries of scale 1.
MixingMatrices random_mixing(std::mt19937_64& rng, std::size_t p,
                             HurstLayout layout, bool causal);

/// Suites: special, kernels, identities, prop31, tildec, factorize,
/// sampler, mc, all.
std::vector<std::string_view> suite_names();

/// Throws ConfigError for an unknown suite name.
std::vector<Check> run_suite(std::string_view suite, std::uint64_t seed);

}  // namespace vfbm::verify

#endif  // VFBM_VERIFY_HPP
