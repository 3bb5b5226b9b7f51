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

#include "vfbm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vfbm/constants.hpp"
#include "vfbm/covariance.hpp"
#include "vfbm/error.hpp"
#include "vfbm/kernels.hpp"
#include "vfbm/repr.hpp"
#include "vfbm/simulate.hpp"
#include "vfbm/special.hpp"

namespace vfbm::verify {

namespace {

using kernels::KernelKind;

Check make_check(std::string name, double statistic, double tolerance) {
  return {std::move(name), statistic, tolerance, statistic <= tolerance};
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Nonzero time with random sign, magnitude in [0.1, 5].
double random_time(std::mt19937_64& rng) {
  const double t = uniform(rng, 0.1, 5.0);
  return rng() % 2 == 0 ? t : -t;
}

double term_scale(const CovarianceModel& m, std::size_t i, std::size_t j,
                  std::initializer_list<double> times) {
  double reach = 0.0;
  for (double t : times) reach = std::max(reach, std::abs(t));
  const double h = m.hurst()[i] + m.hurst()[j];
  return m.sigma(i) * m.sigma(j) * std::pow(reach, h) *
         (1.0 + std::abs(std::log(reach)));
}

std::vector<Check> special_suite() {
  std::vector<Check> out;
  out.push_back(make_check("log_gamma(1)", std::abs(special::log_gamma(1.0)), 1e-15));
  out.push_back(make_check("log_gamma(2)", std::abs(special::log_gamma(2.0)), 1e-15));
  out.push_back(make_check(
      "log_gamma(0.5) = log sqrt(pi)",
      std::abs(special::log_gamma(0.5) - 0.5 * std::log(kPi)) / (0.5 * std::log(kPi)),
      1e-13));
  double worst = 0.0;
  for (double x : {0.6, 0.9, 1.4}) {
    worst = std::max(worst, std::abs(special::beta(x, 1.0) * x - 1.0));
  }
  out.push_back(make_check("beta(x, 1) = 1 / x", worst, 1e-12));
  out.push_back(make_check("beta(1/2, 1/2) = pi",
                           std::abs(special::beta(0.5, 0.5) / kPi - 1.0), 1e-12));
  return out;
}

std::vector<Check> kernel_suite() {
  struct Config {
    double hi, hj, s, t;
  };
  const Config configs[] = {
      {0.3, 0.6, 1.0, 2.0},  {0.3, 0.6, -1.0, 2.0}, {0.3, 0.6, -1.5, -0.5},
      {0.3, 0.7, 1.0, 2.0},  {0.3, 0.7, -1.0, 2.0}, {0.3, 0.7, -2.0, -0.5},
      {0.4, 0.4, 1.0, 1.0},  {0.8, 0.35, 2.0, -1.0}};
  const KernelKind kinds[] = {KernelKind::PP, KernelKind::MM, KernelKind::PM,
                              KernelKind::MP};
  double worst = 0.0;
  for (const auto& c : configs) {
    for (KernelKind kind : kinds) {
      const double closed = kernels::kernel_cov(kind, c.hi, c.hj, c.s, c.t);
      const double numeric =
          kernels::quadrature_kernel_oracle(kind, c.hi, c.hj, c.s, c.t, 1e-8);
      worst = std::max(worst, std::abs(closed - numeric));
    }
  }
  return {make_check("kernel_cov vs quadrature (abs)", worst, 1e-6)};
}

std::vector<Check> identity_suite(std::mt19937_64& rng) {
  double scaling = 0.0, increments = 0.0, symmetry = 0.0, boundary = 0.0;
  for (int draw = 0; draw < 200; ++draw) {
    const auto layout = draw % 2 == 0 ? HurstLayout::General : HurstLayout::WithCritical;
    const CovarianceModel m =
        coeffs_from_mixing(random_mixing(rng, 2 + draw % 2, layout, draw % 3 == 0));
    const std::size_t i = rng() % m.dimension();
    std::size_t j = rng() % m.dimension();
    if (layout == HurstLayout::WithCritical && draw % 4 == 1) j = 1 - std::min<std::size_t>(i, 1);
    const double s = random_time(rng), t = random_time(rng), shift = random_time(rng);
    const double lambda = uniform(rng, 0.1, 10.0);
    const double h = m.hurst()[i] + m.hurst()[j];

    const double base = cov_pair(m, i, j, s, t);
    scaling = std::max(scaling,
                       std::abs(cov_pair(m, i, j, lambda * s, lambda * t) -
                                std::pow(lambda, h) * base) /
                           (std::pow(lambda, h) * term_scale(m, i, j, {s, t, s - t})));

    const double shifted = cov_pair(m, i, j, s + shift, t + shift) -
                           cov_pair(m, i, j, s + shift, shift) -
                           cov_pair(m, i, j, shift, t + shift) +
                           cov_pair(m, i, j, shift, shift);
    increments = std::max(
        increments, std::abs(shifted - base) /
                        term_scale(m, i, j, {s, t, s + shift, t + shift, shift}));

    const double both = cov_pair(m, i, j, s, t) + cov_pair(m, i, j, t, s);
    double expected = 0.0;
    const PairCoefficients pc = m.pair(i, j);
    if (i == j) {
      expected = 2.0 * cov_same(m.hurst()[i], m.sigma(i), s, t);
    } else if (const auto* g = std::get_if<GeneralCoefficients>(&pc.coefficients)) {
      expected = m.sigma(i) * m.sigma(j) * 0.5 * (g->c_ij + g->c_ji) *
                 (std::pow(std::abs(s), h) + std::pow(std::abs(t), h) -
                  std::pow(std::abs(s - t), h));
    } else {
      expected = m.sigma(i) * m.sigma(j) *
                 std::get<CriticalCoefficients>(pc.coefficients).d_ij *
                 (std::abs(s) + std::abs(t) - std::abs(s - t));
    }
    symmetry = std::max(symmetry,
                        std::abs(both - expected) / term_scale(m, i, j, {s, t, s - t}));

    boundary = std::max({boundary, std::abs(cov_pair(m, i, j, 0.0, t)),
                         std::abs(cov_pair(m, i, j, s, 0.0))});
  }
  return {make_check("self-similarity scaling", scaling, 1e-12),
          make_check("stationary increments", increments, 1e-10),
          make_check("symmetrization identity", symmetry, 1e-10),
          make_check("zero boundary", boundary, 0.0)};
}

std::vector<Check> assembly_suite(std::mt19937_64& rng) {
  double cross = 0.0, variance = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    const auto layout = draw % 2 == 0 ? HurstLayout::General : HurstLayout::WithCritical;
    const MixingMatrices mix = random_mixing(rng, 2 + draw % 2, layout, draw % 4 == 0);
    const CovarianceModel m = coeffs_from_mixing(mix);
    for (std::size_t i = 0; i < m.dimension(); ++i) {
      const double sigma = sigma_from_mixing(mix, i);
      variance = std::max(variance, std::abs(assemble_via_kernels(mix, i, i, 1.0, 1.0) /
                                                 (sigma * sigma) - 1.0));
      for (std::size_t j = 0; j < m.dimension(); ++j) {
        for (int rep = 0; rep < 5; ++rep) {
          const double s = random_time(rng), t = random_time(rng);
          const double gap = std::abs(cov_pair(m, i, j, s, t) -
                                      assemble_via_kernels(mix, i, j, s, t));
          cross = std::max(cross, gap / term_scale(m, i, j, {s, t, s - t}));
        }
      }
    }
  }
  return {make_check("closed form vs kernel assembly", cross, 1e-10),
          make_check("sigma^2 vs kernel assembly (rel)", variance, 1e-12)};
}

std::vector<Check> tildec_suite(std::mt19937_64& rng) {
  double worst = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    const MixingMatrices mix =
        random_mixing(rng, 2 + draw % 2, HurstLayout::General, draw % 3 == 0);
    const CovarianceModel m = coeffs_from_mixing(mix);
    const TildeC ct = tilde_c(mix);
    const auto h = m.hurst();
    for (std::size_t i = 0; i < m.dimension(); ++i) {
      for (std::size_t j = 0; j < m.dimension(); ++j) {
        if (i == j && classify_pair(h[i], h[j]) == PairRegime::Critical) continue;
        const auto g = std::get<GeneralCoefficients>(m.pair(i, j).coefficients);
        const double lhs = ct.c_tilde(static_cast<Eigen::Index>(i),
                                      static_cast<Eigen::Index>(j)) *
                           2.0 * special::phi(h[i], h[j]);
        const double rhs = m.sigma(i) * m.sigma(j) * g.c_ij;
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
      }
    }
  }
  return {make_check("2 phi_ij c~_ij = sigma_i sigma_j c_ij", worst, 1e-10)};
}

std::vector<Check> factorize_suite(std::mt19937_64& rng) {
  double worst = 0.0;
  bool rejects = true;
  for (int draw = 0; draw < 20; ++draw) {
    const MixingMatrices mix =
        random_mixing(rng, 2 + draw % 2, HurstLayout::General, true);
    const TildeC ct = tilde_c(mix);
    const FactorizeResult fr = causal_factorize(ct, mix.hurst());
    if (!fr.feasible()) {
      worst = std::numeric_limits<double>::infinity();
      continue;
    }
    const TildeC back = tilde_c(*fr.mixing);
    worst = std::max(worst, (back.c_tilde - ct.c_tilde).cwiseAbs().maxCoeff());

    Eigen::MatrixXd skew = ct.c_tilde;
    skew(0, 1) += 1.0;
    rejects = rejects &&
              causal_factorize({skew}, mix.hurst()).reason == InfeasibleReason::NotSymmetric &&
              !causal_factorize({skew}, mix.hurst()).feasible();
    const Eigen::VectorXd cosine = [&] {
      Eigen::VectorXd c(static_cast<Eigen::Index>(mix.dimension()));
      for (std::size_t i = 0; i < mix.dimension(); ++i)
        c(static_cast<Eigen::Index>(i)) = std::cos(kPi * mix.hurst()[i]);
      return c;
    }();
    const Eigen::MatrixXd indefinite = -Eigen::MatrixXd(cosine.asDiagonal());
    const FactorizeResult neg = causal_factorize({indefinite}, mix.hurst());
    rejects = rejects && !neg.feasible() && neg.reason == InfeasibleReason::NotPD;
  }
  return {make_check("tilde_c o causal_factorize roundtrip", worst, 1e-10),
          make_check("infeasible inputs rejected", rejects ? 0.0 : 1.0, 0.0)};
}

// Largest |empirical - analytic| / allowed over the whole table.
double table_ratio(const CovTable& table, const CovarianceModel& m,
                   double relative_floor) {
  const std::size_t p = table.dimension;
  double worst = 0.0;
  for (std::size_t k = 0; k < table.grid.size(); ++k) {
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t l = 0; l < table.grid.size(); ++l) {
        for (std::size_t j = 0; j < p; ++j) {
          const auto a = static_cast<Eigen::Index>(k * p + i);
          const auto b = static_cast<Eigen::Index>(l * p + j);
          const double exact = cov_pair(m, i, j, table.grid[k], table.grid[l]);
          const double allowed =
              std::max(4.0 * table.se(a, b), relative_floor * std::abs(exact));
          const double gap = std::abs(table.cov(a, b) - exact);
          if (allowed == 0.0) {
            if (gap > 0.0) return std::numeric_limits<double>::infinity();
            continue;
          }
          worst = std::max(worst, gap / allowed);
        }
      }
    }
  }
  return worst;
}

Eigen::MatrixXd upper_example() {
  Eigen::MatrixXd a(2, 2);
  a << 1.0, 0.5, 0.0, 1.0;
  return a;
}

std::vector<Check> sampler_suite(std::uint64_t seed) {
  const std::vector<double> h = {0.3, 0.6};
  const MixingMatrices mix(upper_example(), Eigen::MatrixXd::Zero(2, 2), validate_hurst(h));
  const CovarianceModel m = coeffs_from_mixing(mix);
  const TimeGrid grid({0.5, 1.0, 1.5, 2.0});
  const PathEnsemble e = sample_paths(m, grid, 50000, seed);
  const PathEnsemble again = sample_paths(m, grid, 50000, seed);
  return {make_check("sampler covariance within 4 SE", table_ratio(empirical_cov(e), m, 0.0), 1.0),
          make_check("sampler reproducible", e.values == again.values ? 0.0 : 1.0, 0.0)};
}

std::vector<Check> mc_suite(std::uint64_t seed) {
  std::vector<Check> out;
  for (const std::vector<double>& h : {std::vector<double>{0.3, 0.6},
                                      std::vector<double>{0.3, 0.7}}) {
    const MixingMatrices mix(upper_example(), Eigen::MatrixXd::Zero(2, 2), validate_hurst(h));
    McConfig cfg;
    cfg.n_reps = 20000;
    cfg.seed = seed;
    const CovTable table = mc_integral_oracle(mix, TimeGrid({0.5, 1.0, 2.0}), cfg);
    out.push_back(make_check(
        "moving-average Monte Carlo H=(" + std::to_string(h[0]).substr(0, 3) + "," +
            std::to_string(h[1]).substr(0, 3) + ")",
        table_ratio(table, coeffs_from_mixing(mix), 0.02), 1.0));
  }
  return out;
}

}  // namespace

std::vector<double> random_hurst(std::mt19937_64& rng, std::size_t p,
                                 HurstLayout layout) {
  std::vector<double> h;
  std::size_t start = 0;
  if (layout == HurstLayout::WithCritical && p >= 2) {
    const double first = uniform(rng, 0.1, 0.9);
    h = {first, 1.0 - first};
    start = 2;
  }
  for (std::size_t k = start; k < p; ++k) {
    for (;;) {
      const double cand = uniform(rng, 0.1, 0.9);
      const bool clear = std::all_of(h.begin(), h.end(), [&](double other) {
        return std::abs(cand + other - 1.0) >= 0.05;
      });
      if (clear) {
        h.push_back(cand);
        break;
      }
    }
  }
  return h;
}

MixingMatrices random_mixing(std::mt19937_64& rng, std::size_t p,
                             HurstLayout layout, bool causal) {
  std::normal_distribution<double> normal;
  const auto n = static_cast<Eigen::Index>(p);
  Eigen::MatrixXd ap(n, n), am = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) ap(r, c) = normal(rng);
  if (!causal) {
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) am(r, c) = normal(rng);
  }
  return MixingMatrices(std::move(ap), std::move(am),
                        validate_hurst(random_hurst(rng, p, layout)));
}

std::vector<std::string_view> suite_names() {
  return {"special", "kernels", "identities", "prop31", "tildec",
          "factorize", "sampler", "mc", "all"};
}

std::vector<Check> run_suite(std::string_view suite, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  if (suite == "special") return special_suite();
  if (suite == "kernels") return kernel_suite();
  if (suite == "identities") return identity_suite(rng);
  if (suite == "prop31") return assembly_suite(rng);
  if (suite == "tildec") return tildec_suite(rng);
  if (suite == "factorize") return factorize_suite(rng);
  if (suite == "sampler") return sampler_suite(seed);
  if (suite == "mc") return mc_suite(seed);
  if (suite == "all") {
    std::vector<Check> all;
    for (std::string_view name : suite_names()) {
      if (name == "all") continue;
      auto part = run_suite(name, seed);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw Error(ErrorCode::ConfigError, "unknown verify suite \"" + std::string(suite) + "\"");
}

}  // namespace vfbm::verify
