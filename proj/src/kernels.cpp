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

#include "vfbm/kernels.hpp"

#include <cmath>

#include "vfbm/constants.hpp"
#include "vfbm/model.hpp"
#include "vfbm/special.hpp"

namespace vfbm::kernels {

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::PP: return "PP";
    case KernelKind::MM: return "MM";
    case KernelKind::PM: return "PM";
    case KernelKind::MP: return "MP";
  }
  return "?";
}

double pos_pow(double x, double a) { return x > 0.0 ? std::pow(x, a) : 0.0; }

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(std::abs(x)); }

double b_coeff(double h_i, double h_j, double s) {
  return s < 0.0 ? std::cos(kPi * h_j) : std::cos(kPi * h_i);
}

namespace {

double abs_pow(double x, double a) { return pos_pow(std::abs(x), a); }

double general_kernel(KernelKind kind, double h_i, double h_j, double s,
                      double t) {
  const double h = h_i + h_j;
  switch (kind) {
    case KernelKind::PP:
      return special::phi(h_i, h_j) *
             (b_coeff(h_i, h_j, s) * abs_pow(s, h) +
              b_coeff(h_j, h_i, t) * abs_pow(t, h) -
              b_coeff(h_i, h_j, s - t) * abs_pow(s - t, h));
    case KernelKind::MM:
      return special::phi(h_i, h_j) *
             (b_coeff(h_j, h_i, s) * abs_pow(s, h) +
              b_coeff(h_i, h_j, t) * abs_pow(t, h) -
              b_coeff(h_j, h_i, s - t) * abs_pow(s - t, h));
    case KernelKind::PM:
      return special::beta(h_i + 0.5, h_j + 0.5) *
             (pos_pow(s - t, h) - pos_pow(s, h) - pos_pow(-t, h));
    case KernelKind::MP:
      return special::beta(h_i + 0.5, h_j + 0.5) *
             (pos_pow(t - s, h) - pos_pow(t, h) - pos_pow(-s, h));
  }
  return 0.0;
}

// H_i + H_j = 1: the covariance is linear in |.| plus x log|x| terms.
double critical_kernel(KernelKind kind, double h_i, double h_j, double s,
                       double t) {
  const double b = special::beta(h_i + 0.5, h_j + 0.5);
  const double bm = std::abs(s) + std::abs(t) - std::abs(s - t);
  const double logs = xlogx(s) - xlogx(t) - xlogx(s - t);
  switch (kind) {
    case KernelKind::PP:
      return b / kPi *
             (0.5 * kPi * std::sin(kPi * h_i) * bm - std::cos(kPi * h_i) * logs);
    case KernelKind::MM:
      return b / kPi *
             (0.5 * kPi * std::sin(kPi * h_i) * bm + std::cos(kPi * h_i) * logs);
    case KernelKind::PM:
    case KernelKind::MP:
      return -0.5 * b * bm;
  }
  return 0.0;
}

}  // namespace

double kernel_cov(KernelKind kind, double h_i, double h_j, double s, double t) {
  if (s == 0.0 || t == 0.0) {
    return 0.0;
  }
  if (classify_pair(h_i, h_j) == PairRegime::Critical) {
    return critical_kernel(kind, h_i, h_j, s, t);
  }
  return general_kernel(kind, h_i, h_j, s, t);
}

}  // namespace vfbm::kernels
