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

#ifndef IDP_KERNELS_H_
#define IDP_KERNELS_H_

// Data-parallel inner loops. Each OpenMP kernel has a serial reference that
// the tests compare against and the benchmark target times side by side.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace idp::kernels {

// Smooth sensitivity of the order statistic at 1-based position j of a sorted
// column with domain [lower, upper]:
//
//   max_{k=0..n} exp(-k*beta) * max_{0<=t<=k+1} (x~_{j+t} - x~_{j+t-k-1})
//
// where x~ clamps out-of-range indices to the domain edges. Requires finite
// bounds and beta > 0; the callers validate both.
double order_stat_smooth_sensitivity_reference(std::span<const double> sorted, double lower,
                                               double upper, std::ptrdiff_t j, double beta);

// Same quantity. Splits k into blocks reduced in parallel and stops once
// exp(-k*beta) * (upper - lower) can no longer beat the running maximum.
double order_stat_smooth_sensitivity(std::span<const double> sorted, double lower, double upper,
                                     std::ptrdiff_t j, double beta);

// Largest window term at distance k: max_{0<=t<=k+1} (x~_{j+t} - x~_{j+t-k-1}).
double order_stat_window(std::span<const double> sorted, double lower, double upper,
                         std::ptrdiff_t j, std::ptrdiff_t k);

// Neumaier-compensated mean; summation order is the index order.
double compensated_mean(std::span<const double> values);

int max_threads();

// out[i] = fn(i) for i in [0, count). fn must be safe to call concurrently.
template <typename Fn>
std::vector<double> map_indices_serial(std::size_t count, Fn&& fn) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
  return out;
}

template <typename Fn>
std::vector<double> map_indices(std::size_t count, Fn&& fn) {
  std::vector<double> out(count);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
  return out;
}

// Calls fn(i) for i in [0, count); iterations must touch disjoint state.
template <typename Fn>
void for_each_index_serial(std::size_t count, Fn&& fn) {
  for (std::size_t i = 0; i < count; ++i) fn(i);
}

template <typename Fn>
void for_each_index(std::size_t count, Fn&& fn) {
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) fn(static_cast<std::size_t>(i));
}

// max_i fn(i), or `init` when count == 0.
template <typename Fn>
double max_over_indices_serial(std::size_t count, double init, Fn&& fn) {
  double best = init;
  for (std::size_t i = 0; i < count; ++i) best = std::max(best, fn(i));
  return best;
}

template <typename Fn>
double max_over_indices(std::size_t count, double init, Fn&& fn) {
  double best = init;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for reduction(max : best) schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) best = std::max(best, fn(static_cast<std::size_t>(i)));
  return best;
}

}  // namespace idp::kernels

#endif  // IDP_KERNELS_H_
