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

#include "vfbm/simulate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "vfbm/error.hpp"
#include "vfbm/kernels.hpp"
#include "vfbm/linalg.hpp"
#include "vfbm/parallel.hpp"
#include "vfbm/repr.hpp"

namespace vfbm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Fnv1a {
 public:
  void add(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) byte(static_cast<unsigned char>(bits >> (8 * b)));
  }
  void add(std::uint64_t v) {
    for (int b = 0; b < 8; ++b) byte(static_cast<unsigned char>(v >> (8 * b)));
  }
  std::uint64_t value() const noexcept { return hash_; }

 private:
  void byte(unsigned char c) {
    hash_ ^= c;
    hash_ *= 0x100000001b3ULL;
  }
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

constexpr std::size_t kBatch = 512;

// x_+^{a+1} / (a + 1): antiderivative piece of the power kernels.
double lifted(double y, double a) {
  return y > 0.0 ? std::pow(y, a + 1.0) / (a + 1.0) : 0.0;
}

// int over [x0, x1] of (c - x)_+^a - (-x)_+^a   (plus)
//                 or (x - c)_+^a - (x)_+^a      (minus)
double cell_integral(bool plus, double c, double a, double x0, double x1) {
  if (c == 0.0) return 0.0;
  if (plus) {
    return (lifted(c - x0, a) - lifted(c - x1, a)) -
           (lifted(-x0, a) - lifted(-x1, a));
  }
  return (lifted(x1 - c, a) - lifted(x0 - c, a)) -
         (lifted(x1, a) - lifted(x0, a));
}

}  // namespace

std::mt19937_64 replication_engine(std::uint64_t seed, std::uint64_t rep) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(~rep)));
}

std::uint64_t model_hash(const CovarianceModel& model) {
  Fnv1a h;
  const std::size_t p = model.dimension();
  h.add(static_cast<std::uint64_t>(p));
  for (std::size_t i = 0; i < p; ++i) {
    h.add(model.hurst()[i]);
    h.add(model.sigma(i));
  }
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      const PairCoefficients pc = model.pair(i, j);
      if (const auto* g = std::get_if<GeneralCoefficients>(&pc.coefficients)) {
        h.add(std::uint64_t{0});
        h.add(g->c_ij);
        h.add(g->c_ji);
      } else {
        const auto& c = std::get<CriticalCoefficients>(pc.coefficients);
        h.add(std::uint64_t{1});
        h.add(c.d_ij);
        h.add(c.f_ij);
      }
    }
  }
  return h.value();
}

PathEnsemble sample_paths(const CovarianceModel& model, const TimeGrid& grid,
                          std::size_t n, std::uint64_t seed) {
  if (n == 0) {
    throw Error(ErrorCode::ConfigError, "need at least one path");
  }
  const CovMatrix c = cov_matrix(model, grid);
  const Eigen::MatrixXd l = cholesky_psd(c.entries);
  const Eigen::Index dim = l.rows();

  Eigen::MatrixXd z(dim, static_cast<Eigen::Index>(n));
  parallel_for(n, [&](std::size_t rep) {
    auto engine = replication_engine(seed, rep);
    std::normal_distribution<double> normal;
    for (Eigen::Index k = 0; k < dim; ++k) {
      z(k, static_cast<Eigen::Index>(rep)) = normal(engine);
    }
  });

  PathEnsemble out{RowMatrix((l * z).transpose()), grid, model.dimension(),
                   seed, model_hash(model)};
  return out;
}

CovTable empirical_cov(const RowMatrix& samples, const TimeGrid& grid,
                       std::size_t dimension) {
  const Eigen::Index n = samples.rows();
  if (n < 2) {
    throw Error(ErrorCode::ConfigError, "empirical covariance needs N >= 2");
  }
  const auto nd = static_cast<double>(n);
  Eigen::MatrixXd x = samples;
  const Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;

  const Eigen::MatrixXd sum_z = x.transpose() * x;
  const Eigen::MatrixXd sq = x.cwiseAbs2();
  const Eigen::MatrixXd sum_z2 = sq.transpose() * sq;

  CovTable out{sum_z / (nd - 1.0), Eigen::MatrixXd(), grid, dimension,
               static_cast<std::size_t>(n)};
  const Eigen::MatrixXd var_z =
      ((sum_z2 - sum_z.cwiseAbs2() / nd) / (nd - 1.0)).cwiseMax(0.0);
  out.se = (var_z / nd).cwiseSqrt();
  return out;
}

CovTable empirical_cov(const PathEnsemble& ensemble) {
  return empirical_cov(ensemble.values, ensemble.grid, ensemble.dimension);
}

std::vector<Cell> noise_mesh(std::span<const double> singular, double lo,
                             double hi, double step) {
  std::vector<double> points(singular.begin(), singular.end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  constexpr double kGrading = 0.2;
  constexpr double kFarGrowth = 0.1;
  const double floor = 1e-4 * step;

  std::vector<Cell> cells;
  double x = lo;
  while (x < hi) {
    const auto next_it = std::upper_bound(points.begin(), points.end(), x);
    double dist = std::numeric_limits<double>::infinity();
    if (next_it != points.end()) dist = *next_it - x;
    if (next_it != points.begin()) dist = std::min(dist, x - *std::prev(next_it));

    double width = dist <= 1.0 ? std::min(step, std::max(floor, kGrading * dist))
                               : std::max(step, kFarGrowth * dist);
    double stop = hi;
    if (next_it != points.end()) stop = std::min(stop, *next_it);
    double end = x + width;
    if (end > stop || stop - end < 0.5 * floor) end = stop;
    cells.push_back({x, end});
    x = end;
  }
  return cells;
}

CovTable mc_integral_oracle(const MixingMatrices& m, const TimeGrid& grid,
                            const McConfig& cfg) {
  const double reach = grid.max_abs();
  if (cfg.n_reps < 100) {
    throw Error(ErrorCode::ConfigError, "n_reps must be at least 100");
  }
  if (!(cfg.grid_step > 0.0)) {
    throw Error(ErrorCode::ConfigError, "grid_step must be positive");
  }
  if (!(cfg.tail_budget > 0.0)) {
    throw Error(ErrorCode::ConfigError, "tail_budget must be positive");
  }

  const std::size_t p = m.dimension();
  const std::size_t n = grid.size();
  const HurstVector& h = m.hurst();
  const bool causal = m.causal();

  // Mean-value bound on the share of var X_i(t) lost beyond distance `far`:
  // ratio(i, t) * far^(2 H_i - 2).
  std::vector<double> ratio(p * n, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const double a = h[i] - 0.5;
    const double weight = m.a_plus().row(ii).squaredNorm() +
                          (causal ? 0.0 : m.a_minus().row(ii).squaredNorm());
    const double sigma = sigma_from_mixing(m, i);
    for (std::size_t k = 0; k < n; ++k) {
      const double t = grid[k];
      if (t == 0.0) continue;
      ratio[k * p + i] = weight * a * a * t * t /
                         ((2.0 - 2.0 * h[i]) * sigma * sigma *
                          std::pow(std::abs(t), 2.0 * h[i]));
    }
  }
  const auto lost_share = [&](double far) {
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < p; ++i)
        worst = std::max(worst, ratio[k * p + i] * std::pow(far, 2.0 * h[i] - 2.0));
    return worst;
  };

  double trunc = cfg.trunc;
  if (!(trunc > 0.0)) {
    // Smallest power-of-ten multiple of the reach, from 1e3 up to 1e8,
    // that keeps the tail inside half the budget.
    trunc = 1e3 * reach;
    while (trunc < 1e8 * reach && lost_share(trunc - reach) > 0.5 * cfg.tail_budget) {
      trunc *= 10.0;
    }
  }
  if (!(trunc > 2.0 * reach)) {
    throw Error(ErrorCode::ConfigError,
                "grid times must lie inside (-trunc / 2, trunc / 2)");
  }
  if (const double lost = lost_share(trunc - reach); lost > cfg.tail_budget) {
    std::ostringstream os;
    os << "truncation at " << trunc << " may lose a share " << lost
       << " of a path variance; raise trunc or tail_budget";
    throw Error(ErrorCode::ConfigError, os.str());
  }

  std::vector<double> singular(grid.times().begin(), grid.times().end());
  singular.push_back(0.0);
  const double lo = -trunc;
  const double hi = causal ? std::max(grid[n - 1], 0.0) + 1.0 : trunc;
  const std::vector<Cell> cells = noise_mesh(singular, lo, hi, cfg.grid_step);
  const auto n_cells = static_cast<Eigen::Index>(cells.size());
  const auto dim = static_cast<Eigen::Index>(n * p);

  // Row (k, i): exact cell averages of the kernel times sqrt(cell width),
  // so that a standard normal per cell reproduces the noise increment.
  Eigen::MatrixXd g_plus(dim, n_cells);
  Eigen::MatrixXd g_minus = Eigen::MatrixXd::Zero(causal ? 0 : dim, n_cells);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < p; ++i) {
      const auto row = static_cast<Eigen::Index>(k * p + i);
      const double a = h[i] - 0.5;
      for (Eigen::Index c = 0; c < n_cells; ++c) {
        const Cell& cell = cells[static_cast<std::size_t>(c)];
        const double root = std::sqrt(cell.hi - cell.lo);
        g_plus(row, c) = cell_integral(true, grid[k], a, cell.lo, cell.hi) / root;
        if (!causal) {
          g_minus(row, c) =
              cell_integral(false, grid[k], a, cell.lo, cell.hi) / root;
        }
      }
    }
  }

  // Row (k, i) of the path mixes noise component q through A(i, q).
  RowMatrix samples(static_cast<Eigen::Index>(cfg.n_reps), dim);
  const auto np = static_cast<Eigen::Index>(p);
  for (std::size_t start = 0; start < cfg.n_reps; start += kBatch) {
    const std::size_t count = std::min(kBatch, cfg.n_reps - start);
    const auto cols = static_cast<Eigen::Index>(count);
    Eigen::MatrixXd noise(np * n_cells, cols);
    parallel_for(count, [&](std::size_t r) {
      auto engine = replication_engine(cfg.seed, start + r);
      std::normal_distribution<double> normal;
      for (Eigen::Index e = 0; e < noise.rows(); ++e) {
        noise(e, static_cast<Eigen::Index>(r)) = normal(engine);
      }
    });

    Eigen::MatrixXd paths = Eigen::MatrixXd::Zero(dim, cols);
    for (Eigen::Index q = 0; q < np; ++q) {
      const auto block = noise.middleRows(q * n_cells, n_cells);
      const Eigen::MatrixXd plus = g_plus * block;
      Eigen::MatrixXd minus;
      if (!causal) minus = g_minus * block;
      for (Eigen::Index row = 0; row < dim; ++row) {
        const Eigen::Index i = row % np;
        paths.row(row) += m.a_plus()(i, q) * plus.row(row);
        if (!causal) paths.row(row) += m.a_minus()(i, q) * minus.row(row);
      }
    }
    samples.middleRows(static_cast<Eigen::Index>(start), cols) = paths.transpose();
  }
  return empirical_cov(samples, grid, p);
}

}  // namespace vfbm
