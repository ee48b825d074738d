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

#include "idp/sensitivity.h"

#include <algorithm>
#include <string>

#include "idp/error.h"
#include "idp/kernels.h"

namespace idp {
namespace {

constexpr double kHistogramL1 = 2.0;

// Minimum record counts for which the order-statistic formulas are defined.
void require_order_stat_size(const QuerySpec& q, std::size_t n) {
  const std::size_t needed = q.kind() == QueryKind::kMaximum ? 2 : 3;
  if (n < needed) {
    throw Error(ErrorCode::kPrecondition, q.to_string() + " sensitivity needs at least " +
                                              std::to_string(needed) + " records, got " +
                                              std::to_string(n));
  }
  // Also rejects an even n for the median.
  (void)order_stat_position(q, n);
}

void require_positive_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::kInvalidArgument, "beta must be a positive number");
  }
}

double range_count_inside(const Dataset& d, const QuerySpec& q) {
  return evaluate(d, q).scalar;
}

double smooth_impl(const Dataset& d, const QuerySpec& q, double beta, bool reference) {
  require_positive_beta(beta);
  switch (q.kind()) {
    case QueryKind::kRangeCount: return 1.0;
    case QueryKind::kHistogram: return kHistogramL1;
    default: break;
  }
  require_order_stat_size(q, d.size());
  if (!d.bounds().finite()) return DomainBounds::kUnbounded;
  const auto j = order_stat_position(q, d.size());
  const auto& b = d.bounds();
  return reference
             ? kernels::order_stat_smooth_sensitivity_reference(d.values(), b.lower(), b.upper(), j,
                                                                beta)
             : kernels::order_stat_smooth_sensitivity(d.values(), b.lower(), b.upper(), j, beta);
}

}  // namespace

double global_sensitivity(const QuerySpec& q, const DomainBounds& bounds, std::size_t /*n*/) {
  switch (q.kind()) {
    case QueryKind::kRangeCount: return 1.0;
    case QueryKind::kHistogram: return kHistogramL1;
    default: return bounds.finite() ? bounds.width() : DomainBounds::kUnbounded;
  }
}

double local_sensitivity(const Dataset& d, const QuerySpec& q) {
  switch (q.kind()) {
    case QueryKind::kRangeCount: return 1.0;
    case QueryKind::kHistogram: return kHistogramL1;
    default: break;
  }
  require_order_stat_size(q, d.size());
  const auto j = order_stat_position(q, d.size());
  if (q.kind() == QueryKind::kMaximum && !d.bounds().upper_finite()) {
    return DomainBounds::kUnbounded;
  }
  // For the maximum, clamped(n + 1) is max(Dom).
  return std::max(d.clamped(j + 1) - d.order_stat(j), d.order_stat(j) - d.order_stat(j - 1));
}

double smooth_sensitivity(const Dataset& d, const QuerySpec& q, double beta) {
  return smooth_impl(d, q, beta, /*reference=*/false);
}

double smooth_sensitivity_reference(const Dataset& d, const QuerySpec& q, double beta) {
  return smooth_impl(d, q, beta, /*reference=*/true);
}

GroupSensitivity group_local_sensitivity(const Dataset& d, const QuerySpec& q, std::size_t g) {
  if (g < 1) throw Error(ErrorCode::kInvalidArgument, "group size must be at least 1");
  GroupSensitivity out;
  out.per_distance.reserve(g);
  const double n = static_cast<double>(d.size());
  switch (q.kind()) {
    case QueryKind::kRangeCount: {
      const double inside = range_count_inside(d, q);
      for (std::size_t i = 1; i <= g; ++i) {
        const double moves = static_cast<double>(i);
        out.per_distance.push_back(std::max(std::min(moves, n - inside), std::min(moves, inside)));
      }
      return out;
    }
    case QueryKind::kHistogram:
      for (std::size_t i = 1; i <= g; ++i) {
        out.per_distance.push_back(kHistogramL1 * std::min(static_cast<double>(i), n));
      }
      return out;
    default:
      break;
  }
  // Distance 1 is the local sensitivity, including its domain rules.
  out.per_distance.push_back(local_sensitivity(d, q));
  const auto j = order_stat_position(q, d.size());
  const double xj = d.order_stat(j);
  // Modifying i records moves the order statistic by at most i sorted positions.
  for (std::size_t i = 2; i <= g; ++i) {
    const auto shift = static_cast<std::ptrdiff_t>(i);
    const double entry = std::max(d.clamped(j + shift) - xj, xj - d.clamped(j - shift));
    out.per_distance.push_back(std::max(entry, out.per_distance.back()));
  }
  return out;
}

SensitivityReport sensitivity_report(const Dataset& d, const QuerySpec& q, double beta) {
  SensitivityReport r;
  r.beta = beta;
  r.global = global_sensitivity(q, d.bounds(), d.size());
  r.local = local_sensitivity(d, q);
  r.smooth = smooth_sensitivity(d, q, beta);
  return r;
}

}  // namespace idp
