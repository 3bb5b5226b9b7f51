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

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "vfbm/constants.hpp"
#include "vfbm/error.hpp"
#include "vfbm/kernels.hpp"

namespace vfbm::kernels {

namespace {

// One factor f^{+/-}_{a,c}: plus  -> (c - x)_+^a - (-x)_+^a
//                           minus -> (x - c)_+^a - (x)_+^a
struct Factor {
  bool plus = true;
  double c = 0.0;
  double a = 0.0;

  // Evaluated at x = base + offset, with base one of the cut points, so
  // that distances to a cut are formed without rounding.
  double operator()(double base, double offset) const {
    double near = (c - base) - offset;  // c - x
    double far = -base - offset;        // -x
    if (!plus) {
      near = -near;
      far = -far;
    }
    if (near > 0.0 && far > 0.0 && std::abs(c) <= 0.5 * far) {
      // Increment of a power over a short relative step.
      const double ratio = (plus ? c : -c) / far;
      return std::pow(far, a) * std::expm1(a * std::log1p(ratio));
    }
    return pos_pow(near, a) - pos_pow(far, a);
  }
};

class Budget {
 public:
  explicit Budget(std::size_t limit) : limit_(limit) {}

  void charge(std::size_t n) {
    used_ += n;
    if (used_ > limit_) {
      std::ostringstream os;
      os << "quadrature exceeded " << limit_ << " integrand evaluations";
      throw Error(ErrorCode::NoConvergence, os.str());
    }
  }
  std::size_t used() const noexcept { return used_; }

 private:
  std::size_t limit_;
  std::size_t used_ = 0;
};

struct Piece {
  double value = 0.0;
  double error = 0.0;
};

// Tanh-sinh on [l, r]. f(base, offset) is called with base = l or r and the
// offset measured from that end.
template <class F>
Piece tanh_sinh(const F& f, double l, double r, double tol, Budget& budget) {
  constexpr double kTauMax = 6.0;
  constexpr int kMinLevel = 4;
  constexpr int kMaxLevel = 14;
  const double half = 0.5 * (r - l);

  auto contribution = [&](double tau) {
    const double u = 0.5 * kPi * std::sinh(tau);
    const double q = std::exp(-2.0 * u);
    const double dist = 2.0 * half * q / (1.0 + q);
    const double weight =
        half * 0.5 * kPi * std::cosh(tau) * 4.0 * q / ((1.0 + q) * (1.0 + q));
    const double sum = f(l, dist) + f(r, -dist);
    return sum == 0.0 ? 0.0 : weight * sum;
  };

  double step = 1.0;
  double sum = half * 0.5 * kPi * f(l, half);
  int count = 1;
  for (int k = 1; k * step <= kTauMax; ++k) {
    sum += contribution(k * step);
    count += 2;
  }
  budget.charge(static_cast<std::size_t>(count));
  double estimate = step * sum;

  for (int level = 1; level <= kMaxLevel; ++level) {
    step *= 0.5;
    count = 0;
    for (int k = 1; k * step <= kTauMax; k += 2) {
      sum += contribution(k * step);
      count += 2;
    }
    budget.charge(static_cast<std::size_t>(count));
    const double refined = step * sum;
    const double change = std::abs(refined - estimate);
    estimate = refined;
    if (level >= kMinLevel && change <= tol) {
      return {estimate, change};
    }
  }
  throw Error(ErrorCode::NoConvergence,
              "tanh-sinh refinement did not reach the requested tolerance");
}

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule legendre_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double x = std::cos(kPi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[static_cast<std::size_t>(k)] = x;
    rule.weights[static_cast<std::size_t>(k)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GaussRule& coarse_rule() {
  static const GaussRule rule = legendre_rule(12);
  return rule;
}

const GaussRule& fine_rule() {
  static const GaussRule rule = legendre_rule(24);
  return rule;
}

template <class G>
double apply_rule(const GaussRule& rule, const G& g, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    sum += rule.weights[k] * g(mid + half * rule.nodes[k]);
  }
  return half * sum;
}

template <class G>
Piece adaptive_gauss(const G& g, double lo, double hi, double tol,
                     Budget& budget, int depth = 0) {
  budget.charge(coarse_rule().nodes.size() + fine_rule().nodes.size());
  const double coarse = apply_rule(coarse_rule(), g, lo, hi);
  const double fine = apply_rule(fine_rule(), g, lo, hi);
  const double diff = std::abs(fine - coarse);
  if (diff <= tol || depth >= 30) {
    return {fine, diff};
  }
  const double mid = 0.5 * (lo + hi);
  const Piece left = adaptive_gauss(g, lo, mid, 0.5 * tol, budget, depth + 1);
  const Piece right = adaptive_gauss(g, mid, hi, 0.5 * tol, budget, depth + 1);
  return {left.value + right.value, left.error + right.error};
}

// Mean-value bound: beyond distance y of every cut, |f_{a,c}| <= |a c| y^{a-1},
// so int_Y^inf |f_s f_t| <= |a_i s a_j t| Y^{h-2} / (2 - h).
double tail_truncation(double coeff, double h, double tol, double min_distance,
                       double& bound) {
  if (coeff == 0.0) {
    bound = 0.0;
    return min_distance;
  }
  const double target = 0.25 * tol;
  double y = std::pow(target * (2.0 - h) / coeff, 1.0 / (h - 2.0));
  y = std::max(y, min_distance);
  bound = coeff * std::pow(y, h - 2.0) / (2.0 - h);
  return y;
}

}  // namespace

QuadratureResult quadrature_kernel_integral(KernelKind kind, double h_i,
                                            double h_j, double s, double t,
                                            double tol,
                                            std::size_t max_evaluations) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::DomainError, "quadrature tolerance must be positive");
  }
  if (!(h_i > 0.0 && h_i < 1.0 && h_j > 0.0 && h_j < 1.0)) {
    throw Error(ErrorCode::OutOfRange, "exponents must lie in (0, 1)");
  }
  QuadratureResult result;
  if (s == 0.0 || t == 0.0) {
    return result;
  }

  const bool first_plus = kind == KernelKind::PP || kind == KernelKind::PM;
  const bool second_plus = kind == KernelKind::PP || kind == KernelKind::MP;
  const Factor fs{first_plus, s, h_i - 0.5};
  const Factor ft{second_plus, t, h_j - 0.5};
  auto integrand = [&](double base, double offset) {
    const double a = fs(base, offset);
    if (a == 0.0) return 0.0;
    return a * ft(base, offset);
  };

  std::vector<double> cuts = {0.0, s, t};
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const double reach = std::max({std::abs(s), std::abs(t), std::abs(s - t)});

  // Both factors vanish left of min(cuts) unless both are '+' kernels, and
  // right of max(cuts) unless both are '-' kernels.
  const bool left_tail = first_plus && second_plus;
  const bool right_tail = !first_plus && !second_plus;

  std::vector<std::pair<double, double>> finite;
  if (left_tail) finite.emplace_back(cuts.front() - reach, cuts.front());
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    finite.emplace_back(cuts[k], cuts[k + 1]);
  }
  if (right_tail) finite.emplace_back(cuts.back(), cuts.back() + reach);

  const std::size_t pieces = finite.size() + (left_tail || right_tail ? 1 : 0);
  const double piece_tol = 0.75 * tol / static_cast<double>(pieces);

  Budget budget(max_evaluations);
  for (const auto& [l, r] : finite) {
    const Piece piece = tanh_sinh(integrand, l, r, piece_tol, budget);
    result.value += piece.value;
    result.error_estimate += piece.error;
  }

  if (left_tail || right_tail) {
    const double h = h_i + h_j;
    const double coeff = std::abs((h_i - 0.5) * s * (h_j - 0.5) * t);
    const double anchor = left_tail ? cuts.front() : cuts.back();
    const double direction = left_tail ? -1.0 : 1.0;
    double bound = 0.0;
    const double y = tail_truncation(coeff, h, tol, reach, bound);
    if (coeff != 0.0) {
      // x = anchor + direction * reach * e^u, u in [0, log(y / reach)].
      auto mapped = [&](double u) {
        const double dist = reach * std::exp(u);
        const double v = integrand(anchor, direction * dist);
        return v == 0.0 ? 0.0 : v * dist;
      };
      const double upper = std::log(y / reach);
      const int panels = std::max(1, static_cast<int>(std::ceil(upper)));
      const double width = upper / panels;
      for (int k = 0; k < panels; ++k) {
        const Piece piece =
            adaptive_gauss(mapped, k * width, (k + 1) * width,
                           piece_tol / panels, budget);
        result.value += piece.value;
        result.error_estimate += piece.error;
      }
    }
    result.tail_bound = bound;
    result.error_estimate += bound;
  }
  result.evaluations = budget.used();
  return result;
}

double quadrature_kernel_oracle(KernelKind kind, double h_i, double h_j,
                                double s, double t, double tol,
                                std::size_t max_evaluations) {
  return quadrature_kernel_integral(kind, h_i, h_j, s, t, tol, max_evaluations)
      .value;
}

}  // namespace vfbm::kernels
