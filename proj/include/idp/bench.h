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

#ifndef IDP_BENCH_H_
#define IDP_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "idp/curator.h"
#include "idp/dataset.h"

namespace idp::bench {

// Serial runs produce bit-identical results to parallel ones: every trial and
// every sampling chunk owns a RandomSource derived from the plan seed.
enum class Execution { kParallel, kSerial };

struct ExperimentPlan {
  std::vector<Distribution> distributions{Distribution::kUniform01, Distribution::kStandardNormal,
                                          Distribution::kExponential1};
  std::vector<std::size_t> sizes{10, 100, 1000};
  std::vector<double> epsilons{0.5, 0.75, 1.0};
  std::size_t trials = 1000;
  double gamma = 3.0;
  std::uint64_t seed = 1;

  void validate() const;
};

// The median needs an odd record count, so a cell of nominal size n draws
// n | 1 records (11, 101, 1001 for the default sizes).
std::size_t records_for_size(std::size_t size);

struct ErrorRow {
  Distribution distribution;
  std::size_t n;  // nominal plan size
  double epsilon;
  Regime regime;  // kIdpLocal or kDpSmooth
  double mae;
  std::size_t trials;
};

using ErrorTable = std::vector<ErrorRow>;

// Per cell and trial: draw a dataset (normal/exponential domains bounded to
// the sample range), answer the median under idp_local (Laplace, LS) and under
// dp_smooth (admissible noise, gamma from the plan), record |noisy - median|.
ErrorTable run_error_grid(const ExperimentPlan& plan, Execution exec = Execution::kParallel);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  double half_width() const { return 0.5 * (upper - lower); }
};

struct CiTable {
  Interval laplace;  // scale = sensitivity / eps
  Interval gamma2;   // admissible, scale = 8 sensitivity / eps
  Interval gamma3;   // admissible, scale = 12 sensitivity / eps
  std::size_t trials = 0;
};

// Empirical central 95% intervals; requires trials >= 1e5.
CiTable run_ci_table(double epsilon, double sensitivity, std::size_t trials, std::uint64_t seed,
                     Execution exec = Execution::kParallel);

struct NoiseProfileRow {
  double x;
  double laplace;
  double gamma2;
  double gamma3;
};

std::vector<NoiseProfileRow> run_noise_profile(double epsilon, double sensitivity,
                                               const std::vector<double>& grid);
std::vector<double> linear_grid(double lo, double hi, std::size_t points);

void write_error_table_csv(std::ostream& out, const ErrorTable& table);
void write_ci_table_csv(std::ostream& out, const CiTable& table);
void write_noise_profile_csv(std::ostream& out, const std::vector<NoiseProfileRow>& rows);

struct VerificationLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Exhaustive oracle sweep: closed-form vs brute-force sensitivities on small
// grids, and indistinguishability checks for the idp/dp/gdp mechanisms.
std::vector<VerificationLine> run_verification(std::uint64_t seed);

}  // namespace idp::bench

#endif  // IDP_BENCH_H_
