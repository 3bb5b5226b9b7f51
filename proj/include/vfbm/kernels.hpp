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

#ifndef VFBM_KERNELS_HPP
#define VFBM_KERNELS_HPP

#include <cstddef>
#include <string_view>

namespace vfbm::kernels {

/// Which pair of elementary integrals I+/- a covariance is taken between:
///   I+_i(s) = int ((s - x)_+^{H_i - 1/2} - (-x)_+^{H_i - 1/2}) W(dx)
///   I-_i(s) = int ((s - x)_-^{H_i - 1/2} - (-x)_-^{H_i - 1/2}) W(dx)
enum class KernelKind { PP, MM, PM, MP };

std::string_view to_string(KernelKind kind);

/// x_+^a with 0^a = 0.
double pos_pow(double x, double a);

/// x log|x| with 0 log 0 = 0.
double xlogx(double x);

/// cos(H_i pi) for s > 0, cos(H_j pi) for s < 0. At s = 0 the value is
/// cos(H_i pi); it only ever multiplies |0|^{H_i+H_j} = 0.
double b_coeff(double h_i, double h_j, double s);

/// Closed-form E I^{kind_1}_i(s) I^{kind_2}_j(t), dispatched on whether
/// H_i + H_j = 1. Exactly zero when s = 0 or t = 0.
double kernel_cov(KernelKind kind, double h_i, double h_j, double s, double t);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double tail_bound = 0.0;
  std::size_t evaluations = 0;
};

/// Direct numerical evaluation of int_R f^{kind_1}_{i,s}(x) f^{kind_2}_{j,t}(x) dx.
///
/// The line is cut at {0, s, t}. Finite pieces use tanh-sinh quadrature
/// with endpoint-relative coordinates, so the integrable power
/// singularities at the cuts are resolved without cancellation. The
/// semi-infinite tails are mapped through x = x0 -/+ L e^u and integrated
/// with Gauss-Legendre panels up to a truncation point whose analytic
/// remainder bound stays below tol / 4. Throws NoConvergence when
/// `max_evaluations` is exhausted first.
QuadratureResult quadrature_kernel_integral(KernelKind kind, double h_i,
                                            double h_j, double s, double t,
                                            double tol,
                                            std::size_t max_evaluations = 1'000'000);

/// Value-only form of quadrature_kernel_integral.
double quadrature_kernel_oracle(KernelKind kind, double h_i, double h_j,
                                double s, double t, double tol,
                                std::size_t max_evaluations = 1'000'000);

}  // namespace vfbm::kernels

#endif  // VFBM_KERNELS_HPP
