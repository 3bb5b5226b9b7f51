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

#ifndef VFBM_SPECIAL_HPP
#define VFBM_SPECIAL_HPP

namespace vfbm::special {

/// Natural log of the gamma function for x > 0.
///
/// Lanczos approximation (g = 7, nine terms) away from the zeros at
/// x = 1 and x = 2; within 0.25 of either zero the Taylor series of
/// ln Gamma(1 + e) is used so that relative accuracy survives there.
/// Arguments below 0.5 are shifted up with Gamma(x + 1) = x Gamma(x).
double log_gamma(double x);

/// Euler Beta function, exp(lnG(x) + lnG(y) - lnG(x + y)).
double beta(double x, double y);

/// B(h_i + 1/2, h_j + 1/2) / sin((h_i + h_j) pi). Throws CriticalRegime
/// when h_i + h_j = 1, where the sine vanishes.
double phi(double h_i, double h_j);

}  // namespace vfbm::special

#endif  // VFBM_SPECIAL_HPP
