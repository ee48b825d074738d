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

#ifndef IDP_SENSITIVITY_H_
#define IDP_SENSITIVITY_H_

#include <cmath>
#include <cstddef>
#include <vector>

#include "idp/dataset.h"
#include "idp/queries.h"

namespace idp {

// Sensitivities are plain doubles; +infinity stands for "unbounded domain".
inline bool is_unbounded(double sensitivity) { return std::isinf(sensitivity); }

struct SensitivityReport {
  double global = 0.0;
  double local = 0.0;
  double smooth = 0.0;
  double beta = 0.0;
};

// per_distance[i-1] = max over y with d(y, D) <= i of |f(y) - f(D)|.
struct GroupSensitivity {
  std::vector<double> per_distance;
};

// Worst case over all neighbour pairs in the domain. Order statistics give
// the domain width; range counts give 1; histograms give 2 (L1 over bins:
// one modified record leaves one bin and enters another).
double global_sensitivity(const QuerySpec& q, const DomainBounds& bounds, std::size_t n);

// Worst case over one-record modifications of `d`. Closed forms:
//   median (j = m+1)  max{x_{j+1} - x_j, x_j - x_{j-1}}          (odd n >= 3)
//   maximum           max{max(Dom) - x_n, x_n - x_{n-1}}         (n >= 2)
//   second maximum    max{x_n - x_{n-1}, x_{n-1} - x_{n-2}}      (n >= 3)
// The second maximum never looks at the domain, which is what makes it usable
// when the upper bound is unbounded.
double local_sensitivity(const Dataset& d, const QuerySpec& q);

// beta-smooth sensitivity max_y LS(y) exp(-beta d(D, y)), in closed form for
// the order statistics (O(n^2) worst case). Unbounded on an unbounded domain.
double smooth_sensitivity(const Dataset& d, const QuerySpec& q, double beta);

// Serial O(n^2) evaluation of the same closed form, kept for cross-checks.
double smooth_sensitivity_reference(const Dataset& d, const QuerySpec& q, double beta);

GroupSensitivity group_local_sensitivity(const Dataset& d, const QuerySpec& q, std::size_t g);

SensitivityReport sensitivity_report(const Dataset& d, const QuerySpec& q, double beta);

}  // namespace idp

#endif  // IDP_SENSITIVITY_H_
