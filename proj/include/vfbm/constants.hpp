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

#ifndef VFBM_CONSTANTS_HPP
#define VFBM_CONSTANTS_HPP

namespace vfbm {

inline constexpr double kPi = 3.14159265358979323846;

// |H_i + H_j - 1| at or below this is treated as exactly critical.
inline constexpr double kCriticalTolerance = 1e-12;

// Sums this close to 1 (but not critical) make B/sin(.) unusable.
inline constexpr double kNearSingularBand = 1e-8;

// Relative eigenvalue slack for positive-(semi)definiteness checks.
inline constexpr double kDefinitenessSlack = 1e-10;

}  // namespace vfbm

#endif  // VFBM_CONSTANTS_HPP
