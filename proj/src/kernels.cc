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

#include "idp/kernels.h"

#include <cmath>

namespace idp::kernels {
namespace {

inline double clamped(std::span<const double> x, double lower, double upper, std::ptrdiff_t i) {
  if (i < 1) return lower;
  if (i > static_cast<std::ptrdiff_t>(x.size())) return upper;
  return x[static_cast<std::size_t>(i - 1)];
}

constexpr std::ptrdiff_t kBlock = 64;

}  // namespace

double order_stat_window(std::span<const double> sorted, double lower, double upper,
                         std::ptrdiff_t j, std::ptrdiff_t k) {
  double best = 0.0;
  for (std::ptrdiff_t t = 0; t <= k + 1; ++t) {
    best = std::max(best, clamped(sorted, lower, upper, j + t) -
                              clamped(sorted, lower, upper, j + t - k - 1));
  }
  return best;
}

double order_stat_smooth_sensitivity_reference(std::span<const double> sorted, double lower,
                                               double upper, std::ptrdiff_t j, double beta) {
  const auto n = static_cast<std::ptrdiff_t>(sorted.size());
  double best = 0.0;
  for (std::ptrdiff_t k = 0; k <= n; ++k) {
    best = std::max(best, std::exp(-static_cast<double>(k) * beta) *
                              order_stat_window(sorted, lower, upper, j, k));
  }
  return best;
}

double order_stat_smooth_sensitivity(std::span<const double> sorted, double lower, double upper,
                                     std::ptrdiff_t j, double beta) {
  const auto n = static_cast<std::ptrdiff_t>(sorted.size());
  const double width = upper - lower;
  double best = 0.0;
  for (std::ptrdiff_t start = 0; start <= n; start += kBlock) {
    // Every window term is at most the domain width.
    if (std::exp(-static_cast<double>(start) * beta) * width <= best) break;
    const std::ptrdiff_t stop = std::min(n + 1, start + kBlock);
    double block_best = best;
#pragma omp parallel for reduction(max : block_best) schedule(static)
    for (std::ptrdiff_t k = start; k < stop; ++k) {
      block_best = std::max(block_best, std::exp(-static_cast<double>(k) * beta) *
                                            order_stat_window(sorted, lower, upper, j, k));
    }
    best = block_best;
  }
  return best;
}

double compensated_mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  double carry = 0.0;
  for (const double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return (sum + carry) / static_cast<double>(values.size());
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace idp::kernels
