// Copyright 2026 The idp-curator Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "idp/oracle.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "idp/error.h"
#include "idp/kernels.h"
#include "idp/noise.h"
#include "idp/sensitivity.h"

namespace idp::oracle {
namespace {

constexpr double kTailMass = 1e-12;

void require_on_grid(const Dataset& d, const GridDomain& grid) {
  for (const double v : d.values()) {
    if (!std::binary_search(grid.points.begin(), grid.points.end(), v)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "dataset value " + std::to_string(v) + " is not a grid point");
    }
  }
}

void require_grid_size(const Dataset& d, const GridDomain& grid) {
  grid.validate();
  if (d.size() != grid.n) {
    throw Error(ErrorCode::kInvalidArgument, "dataset size does not match the grid's n");
  }
  require_on_grid(d, grid);
}

void enumerate(const GridDomain& grid, std::size_t first, std::vector<double>& prefix,
               std::vector<Dataset>& out) {
  if (prefix.size() == grid.n) {
    out.emplace_back(prefix, grid.bounds());
    return;
  }
  for (std::size_t i = first; i < grid.points.size(); ++i) {
    prefix.push_back(grid.points[i]);
    enumerate(grid, i, prefix, out);
    prefix.pop_back();
  }
}

double output_log_ratio(const QueryValue& at_d, const QueryValue& at_other,
                        const MechanismConfig& cfg, const Calibration& cal) {
  if (cfg.noise == NoiseFamily::kDiscreteLaplace) {
    if (!at_d.is_vector()) {
      return discrete_log_ratio(*cal.alpha, std::llround(at_d.scalar),
                                std::llround(at_other.scalar));
    }
    // Independent noise per bin: the joint sup is the product of the per-bin sups.
    double total = 0.0;
    for (std::size_t b = 0; b < at_d.bins.size(); ++b) {
      total += discrete_log_ratio(*cal.alpha, std::llround(at_d.bins[b]),
                                  std::llround(at_other.bins[b]));
    }
    return total;
  }
  const double shift = value_distance(at_d, at_other);
  if (cal.noise_scale == 0.0) {
    return shift == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::log(density_ratio_bound(LaplaceParams{0.0, cal.noise_scale}, shift));
}

}  // namespace

void GridDomain::validate() const {
  if (points.empty() || points.size() > 6) {
    throw Error(ErrorCode::kInvalidArgument, "grid must have between 1 and 6 points");
  }
  if (!std::is_sorted(points.begin(), points.end()) ||
      std::adjacent_find(points.begin(), points.end()) != points.end()) {
    throw Error(ErrorCode::kInvalidArgument, "grid points must be strictly ascending");
  }
  if (n < 1 || n > 7) throw Error(ErrorCode::kInvalidArgument, "grid dataset size must be 1..7");
}

std::vector<Dataset> enumerate_datasets(const GridDomain& grid) {
  grid.validate();
  std::vector<Dataset> out;
  std::vector<double> prefix;
  prefix.reserve(grid.n);
  enumerate(grid, 0, prefix, out);
  return out;
}

std::size_t dataset_distance(const Dataset& a, const Dataset& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kInvalidArgument, "datasets of different sizes are not comparable");
  }
  const auto x = a.values();
  const auto y = b.values();
  std::size_t common = 0;
  for (std::size_t i = 0, j = 0; i < x.size() && j < y.size();) {
    if (x[i] == y[j]) {
      ++common;
      ++i;
      ++j;
    } else if (x[i] < y[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return a.size() - common;
}

double brute_local_sensitivity(const Dataset& d, const QuerySpec& q, const GridDomain& grid) {
  grid.validate();
  require_on_grid(d, grid);
  const QueryValue base = evaluate(d, q);
  double best = 0.0;
  const auto values = d.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0 && values[i] == values[i - 1]) continue;
    for (const double p : grid.points) {
      if (p == values[i]) continue;
      best = std::max(best, value_distance(evaluate(d.with_replaced(i, p), q), base));
    }
  }
  return best;
}

double brute_smooth_sensitivity(const Dataset& d, const QuerySpec& q, double beta,
                                const GridDomain& grid) {
  if (!(beta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "beta must be positive");
  require_grid_size(d, grid);
  const auto all = enumerate_datasets(grid);
  return kernels::max_over_indices(all.size(), 0.0, [&](std::size_t i) {
    const double decay = std::exp(-beta * static_cast<double>(dataset_distance(d, all[i])));
    return brute_local_sensitivity(all[i], q, grid) * decay;
  });
}

std::vector<double> brute_group_sensitivity(const Dataset& d, const QuerySpec& q,
                                            const GridDomain& grid, std::size_t g) {
  require_grid_size(d, grid);
  const QueryValue base = evaluate(d, q);
  std::vector<double> exact_at(grid.n + 1, 0.0);
  for (const auto& y : enumerate_datasets(grid)) {
    const std::size_t dist = dataset_distance(d, y);
    exact_at[dist] = std::max(exact_at[dist], value_distance(evaluate(y, q), base));
  }
  std::vector<double> out(g, 0.0);
  double running = 0.0;
  for (std::size_t i = 1; i <= g; ++i) {
    if (i < exact_at.size()) running = std::max(running, exact_at[i]);
    out[i - 1] = running;
  }
  return out;
}

double discrete_log_ratio(double alpha, std::int64_t z, std::int64_t z_prime) {
  if (alpha == 0.0) return z == z_prime ? 0.0 : std::numeric_limits<double>::infinity();
  const DiscreteLaplaceParams p{alpha};
  p.validate();
  // Beyond K steps from both centres each tail holds < kTailMass, and there
  // the pointwise ratio is the constant alpha^{-|z - z'|}.
  const auto k = static_cast<std::int64_t>(std::ceil(std::log(kTailMass) / std::log(alpha))) + 1;
  const std::int64_t lo = std::min(z, z_prime) - k;
  const std::int64_t hi = std::max(z, z_prime) + k;
  const double shift = static_cast<double>(z > z_prime ? z - z_prime : z_prime - z);
  double worst = std::log(density_ratio_bound(p, shift));
  for (std::int64_t s = lo; s <= hi; ++s) {
    const double a = discrete_laplace_pmf(p, s - z);
    const double b = discrete_laplace_pmf(p, s - z_prime);
    worst = std::max(worst, std::abs(std::log(a / b)));
  }
  return worst;
}

RatioReport verify_ratio_bound(const Dataset& d, const QuerySpec& q, const MechanismConfig& cfg,
                               const GridDomain& grid, std::size_t distance, double tolerance) {
  if (cfg.regime == Regime::kDpSmooth) {
    throw Error(ErrorCode::kUnsupported,
                "ratio verification supports Laplace and discrete Laplace noise only");
  }
  require_grid_size(d, grid);
  const Calibration cal = calibrate(d, q, cfg);
  const QueryValue base = evaluate(d, q);
  RatioReport report;
  for (const auto& other : enumerate_datasets(grid)) {
    const std::size_t dist = dataset_distance(d, other);
    if (dist == 0 || dist > distance) continue;
    ++report.neighbors_checked;
    const double log_ratio = output_log_ratio(base, evaluate(other, q), cfg, cal);
    const double allowed =
        cfg.epsilon * (cfg.regime == Regime::kGdp ? static_cast<double>(dist) : 1.0);
    const double excess = log_ratio - allowed;
    if (excess > report.worst_excess) {
      report.worst_excess = excess;
      report.worst_log_ratio = log_ratio;
      report.worst_distance = dist;
      report.worst_neighbor = other;
    }
  }
  report.pass = report.neighbors_checked == 0 || report.worst_excess <= tolerance;
  return report;
}

Pmf discrete_output_pmf(std::int64_t exact, double alpha, std::int64_t lo, std::int64_t hi) {
  Pmf out;
  for (std::int64_t s = lo; s <= hi; ++s) {
    if (alpha == 0.0) {
      out[s] = s == exact ? 1.0 : 0.0;
    } else {
      out[s] = discrete_laplace_pmf({alpha}, s - exact);
    }
  }
  return out;
}

Pmf pushforward(const Pmf& pmf, const std::function<std::int64_t(std::int64_t)>& map) {
  Pmf out;
  for (const auto& [s, mass] : pmf) out[map(s)] += mass;
  return out;
}

Pmf mixture(double p, const Pmf& first, const Pmf& second) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "mixture weight outside [0,1]");
  Pmf out;
  for (const auto& [s, mass] : first) out[s] += p * mass;
  for (const auto& [s, mass] : second) out[s] += (1.0 - p) * mass;
  return out;
}

double max_log_ratio(const Pmf& a, const Pmf& b) {
  const auto mass = [](const Pmf& pmf, std::int64_t s) {
    const auto it = pmf.find(s);
    return it == pmf.end() ? 0.0 : it->second;
  };
  double worst = 0.0;
  const auto visit = [&](const Pmf& keys) {
    for (const auto& [s, unused] : keys) {
      const double x = mass(a, s);
      const double y = mass(b, s);
      if (x == 0.0 && y == 0.0) continue;
      if (x == 0.0 || y == 0.0) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, std::abs(std::log(x / y)));
    }
    return worst;
  };
  if (std::isinf(visit(a))) return std::numeric_limits<double>::infinity();
  return visit(b);
}

double per_dataset_calibration_log_ratio(const Dataset& x, const Dataset& x_prime,
                                         const QuerySpec& q, double epsilon) {
  const double scale = local_sensitivity(x, q) / epsilon;
  const double scale_prime = local_sensitivity(x_prime, q) / epsilon;
  const double shift = value_distance(evaluate(x, q), evaluate(x_prime, q));
  if (scale != scale_prime) return std::numeric_limits<double>::infinity();
  if (scale == 0.0) return shift == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return shift / scale;
}

}  // namespace idp::oracle
