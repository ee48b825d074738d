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

#include "idp/bench.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "idp/error.h"
#include "idp/kernels.h"
#include "idp/noise.h"
#include "idp/oracle.h"
#include "idp/random.h"
#include "idp/sensitivity.h"

namespace idp::bench {
namespace {

constexpr std::size_t kChunk = 1 << 16;

template <typename Fn>
void run_indices(Execution exec, std::size_t count, Fn&& fn) {
  if (exec == Execution::kSerial) {
    kernels::for_each_index_serial(count, fn);
  } else {
    kernels::for_each_index(count, fn);
  }
}

// Empirical 2.5% and 97.5% order statistics.
Interval central_95(std::vector<double> draws) {
  const auto at = [&](double q) {
    const auto k = static_cast<std::size_t>(std::floor(q * static_cast<double>(draws.size() - 1)));
    std::nth_element(draws.begin(), draws.begin() + static_cast<std::ptrdiff_t>(k), draws.end());
    return draws[k];
  };
  Interval out;
  out.lower = at(0.025);
  out.upper = at(0.975);
  return out;
}

template <typename Sampler>
std::vector<double> draw_many(std::size_t trials, std::uint64_t seed, Execution exec,
                              Sampler&& sample) {
  std::vector<double> draws(trials);
  const std::size_t chunks = (trials + kChunk - 1) / kChunk;
  run_indices(exec, chunks, [&](std::size_t c) {
    RandomSource rng(derive_seed(seed, c));
    const std::size_t end = std::min(trials, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) draws[i] = sample(rng);
  });
  return draws;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

}  // namespace

void ExperimentPlan::validate() const {
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "plan needs at least one trial");
  if (epsilons.empty()) throw Error(ErrorCode::kInvalidArgument, "plan needs at least one epsilon");
  if (distributions.empty() || sizes.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "plan needs distributions and sizes");
  }
  for (const double e : epsilons) {
    if (!(e > 0.0)) throw Error(ErrorCode::kInvalidArgument, "epsilons must be positive");
  }
  for (const auto n : sizes) {
    if (n < 2) throw Error(ErrorCode::kInvalidArgument, "plan sizes must be at least 2");
  }
  if (!(gamma > 1.0)) throw Error(ErrorCode::kInvalidArgument, "gamma must exceed 1");
}

std::size_t records_for_size(std::size_t size) { return size | 1U; }

ErrorTable run_error_grid(const ExperimentPlan& plan, Execution exec) {
  plan.validate();
  const QuerySpec median = QuerySpec::median();
  ErrorTable table;
  for (std::size_t di = 0; di < plan.distributions.size(); ++di) {
    for (std::size_t si = 0; si < plan.sizes.size(); ++si) {
      const Distribution dist = plan.distributions[di];
      const std::size_t records = records_for_size(plan.sizes[si]);
      const std::uint64_t cell_seed = derive_seed(plan.seed, di * 1024 + si);
      for (std::size_t ei = 0; ei < plan.epsilons.size(); ++ei) {
        const double eps = plan.epsilons[ei];
        const auto idp_cfg = MechanismConfig::idp_local(eps);
        const auto dp_cfg = MechanismConfig::dp_smooth(eps, plan.gamma);

        std::vector<double> idp_err(plan.trials);
        std::vector<double> dp_err(plan.trials);
        run_indices(exec, plan.trials, [&](std::size_t t) {
          const std::uint64_t data_seed = derive_seed(cell_seed, t);
          // The same dataset serves every epsilon, so cells differ only in noise.
          const Dataset d = synthesize(dist, records, data_seed);
          const QueryValue exact = evaluate(d, median);
          RandomSource idp_rng(derive_seed(data_seed, 2 * ei + 1));
          RandomSource dp_rng(derive_seed(data_seed, 2 * ei + 2));
          const auto idp_value = add_noise(exact, idp_cfg, calibrate(d, median, idp_cfg), idp_rng);
          const auto dp_value = add_noise(exact, dp_cfg, calibrate(d, median, dp_cfg), dp_rng);
          idp_err[t] = std::abs(idp_value.scalar - exact.scalar);
          dp_err[t] = std::abs(dp_value.scalar - exact.scalar);
        });
        table.push_back({dist, plan.sizes[si], eps, Regime::kIdpLocal,
                         kernels::compensated_mean(idp_err), plan.trials});
        table.push_back({dist, plan.sizes[si], eps, Regime::kDpSmooth,
                         kernels::compensated_mean(dp_err), plan.trials});
      }
    }
  }
  return table;
}

CiTable run_ci_table(double epsilon, double sensitivity, std::size_t trials, std::uint64_t seed,
                     Execution exec) {
  if (trials < 100000) throw Error(ErrorCode::kInvalidArgument, "ci-table needs at least 1e5 trials");
  if (!(epsilon > 0.0) || !(sensitivity > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon and sensitivity must be positive");
  }
  const LaplaceParams lap{0.0, sensitivity / epsilon};
  const AdmissibleNoiseParams g2{2.0, 4.0 * 2.0 * sensitivity / epsilon};
  const AdmissibleNoiseParams g3{3.0, 4.0 * 3.0 * sensitivity / epsilon};
  CiTable out;
  out.trials = trials;
  out.laplace = central_95(draw_many(trials, derive_seed(seed, 1), exec,
                                     [&](RandomSource& r) { return sample_laplace(lap, r); }));
  out.gamma2 = central_95(draw_many(trials, derive_seed(seed, 2), exec,
                                    [&](RandomSource& r) { return sample_admissible(g2, r); }));
  out.gamma3 = central_95(draw_many(trials, derive_seed(seed, 3), exec,
                                    [&](RandomSource& r) { return sample_admissible(g3, r); }));
  return out;
}

std::vector<NoiseProfileRow> run_noise_profile(double epsilon, double sensitivity,
                                               const std::vector<double>& grid) {
  if (!(sensitivity > 0.0) || !(epsilon > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon and sensitivity must be positive");
  }
  const LaplaceParams lap{0.0, sensitivity / epsilon};
  const AdmissibleNoiseParams g2{2.0, 8.0 * sensitivity / epsilon};
  const AdmissibleNoiseParams g3{3.0, 12.0 * sensitivity / epsilon};
  std::vector<NoiseProfileRow> rows;
  rows.reserve(grid.size());
  for (const double x : grid) {
    rows.push_back({x, laplace_density(lap, x), admissible_scaled_density(g2, x),
                    admissible_scaled_density(g3, x)});
  }
  return rows;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  if (points < 2 || !(lo < hi)) throw Error(ErrorCode::kInvalidArgument, "bad grid");
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

void write_error_table_csv(std::ostream& out, const ErrorTable& table) {
  out << "distribution,n,epsilon,regime,mae,trials\n";
  for (const auto& r : table) {
    out << distribution_name(r.distribution) << ',' << r.n << ',' << fmt(r.epsilon) << ','
        << regime_name(r.regime) << ',' << fmt(r.mae) << ',' << r.trials << '\n';
  }
}

void write_ci_table_csv(std::ostream& out, const CiTable& table) {
  out << "model,lower,upper,half_width,trials\n";
  const auto row = [&](const char* name, const Interval& i) {
    out << name << ',' << fmt(i.lower) << ',' << fmt(i.upper) << ',' << fmt(i.half_width()) << ','
        << table.trials << '\n';
  };
  row("idp_laplace", table.laplace);
  row("dp_smooth_gamma2", table.gamma2);
  row("dp_smooth_gamma3", table.gamma3);
}

void write_noise_profile_csv(std::ostream& out, const std::vector<NoiseProfileRow>& rows) {
  out << "x,idp_laplace,dp_smooth_gamma2,dp_smooth_gamma3\n";
  for (const auto& r : rows) {
    out << fmt(r.x) << ',' << fmt(r.laplace) << ',' << fmt(r.gamma2) << ',' << fmt(r.gamma3) << '\n';
  }
}

std::vector<VerificationLine> run_verification(std::uint64_t seed) {
  std::vector<VerificationLine> lines;
  const std::vector<QuerySpec> queries{QuerySpec::median(), QuerySpec::maximum(),
                                       QuerySpec::second_maximum(), QuerySpec::range_count(0.5, 1.0)};
  const std::vector<double> betas{0.25, 1.0};

  std::size_t checked = 0;
  double worst = 0.0;
  const auto compare = [&](const Dataset& d, const oracle::GridDomain& grid) {
    for (const auto& q : queries) {
      worst = std::max(worst, std::abs(local_sensitivity(d, q) -
                                       oracle::brute_local_sensitivity(d, q, grid)));
      for (const double beta : betas) {
        worst = std::max(worst, std::abs(smooth_sensitivity(d, q, beta) -
                                         oracle::brute_smooth_sensitivity(d, q, beta, grid)));
      }
      ++checked;
    }
  };
  for (const std::size_t n : {3U, 5U}) {
    for (const auto& points : {std::vector<double>{0, 1}, std::vector<double>{0, 0.5, 1}}) {
      const oracle::GridDomain grid{points, n};
      for (const auto& d : oracle::enumerate_datasets(grid)) compare(d, grid);
    }
  }
  const oracle::GridDomain grid7{{0, 0.25, 0.5, 1}, 7};
  RandomSource rng(seed);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> values(7);
    for (auto& v : values) {
      v = grid7.points[static_cast<std::size_t>(rng.uniform_open() * 4.0)];
    }
    compare(Dataset(values, grid7.bounds()), grid7);
  }
  lines.push_back({"sensitivity closed form == brute force", worst <= 1e-12,
                   std::to_string(checked) + " cases, max |diff| " + fmt(worst)});

  const oracle::GridDomain binary5{{0, 1}, 5};
  const auto all5 = oracle::enumerate_datasets(binary5);
  const auto sweep = [&](const std::string& name, const QuerySpec& q, const MechanismConfig& cfg,
                         std::size_t distance, bool expect_all_pass) {
    std::size_t failing = 0;
    for (const auto& d : all5) {
      if (!oracle::verify_ratio_bound(d, q, cfg, binary5, distance).pass) ++failing;
    }
    const bool ok = expect_all_pass ? failing == 0 : failing > 0;
    lines.push_back({name, ok, std::to_string(failing) + " of " + std::to_string(all5.size()) +
                                   " datasets fail"});
  };
  const QuerySpec count = QuerySpec::range_count(0.5, 1.0);
  sweep("idp_local dlaplace count, distance 1", count,
        MechanismConfig::idp_local(1.0, NoiseFamily::kDiscreteLaplace), 1, true);
  sweep("idp_local laplace median, distance 1", QuerySpec::median(), MechanismConfig::idp_local(1.0),
        1, true);
  sweep("dp_global laplace median, distance 1", QuerySpec::median(), MechanismConfig::dp_global(1.0),
        1, true);
  sweep("gdp g=2 laplace median, distances 1-2", QuerySpec::median(), MechanismConfig::gdp(0.5, 2),
        2, true);
  sweep("gdp g=2 dlaplace count, distances 1-2", count,
        MechanismConfig::gdp(0.5, 2, NoiseFamily::kDiscreteLaplace), 2, true);
  sweep("idp_local laplace median fails distance 2 (negative control)", QuerySpec::median(),
        MechanismConfig::idp_local(0.5), 2, false);
  return lines;
}

}  // namespace idp::bench
