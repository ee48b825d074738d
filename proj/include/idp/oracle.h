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

#ifndef IDP_ORACLE_H_
#define IDP_ORACLE_H_

// Exhaustive ground truth on small discrete domains. Datasets are multisets
// (sorted order carries no information), so the distance between two of them
// is n minus the size of their multiset intersection: the number of records
// that must be modified to turn one into the other.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "idp/curator.h"
#include "idp/dataset.h"
#include "idp/queries.h"

namespace idp::oracle {

struct GridDomain {
  std::vector<double> points;  // ascending, at most 6
  std::size_t n = 0;           // dataset size, at most 7

  void validate() const;
  DomainBounds bounds() const { return {points.front(), points.back()}; }
};

// Every size-n multiset over the grid, as ascending datasets with the grid's
// bounds. Order is lexicographic in grid indices.
std::vector<Dataset> enumerate_datasets(const GridDomain& grid);

std::size_t dataset_distance(const Dataset& a, const Dataset& b);

// max |f(y) - f(D)| over y obtained by replacing one record with a grid point.
double brute_local_sensitivity(const Dataset& d, const QuerySpec& q, const GridDomain& grid);

// max over all grid datasets y of brute_local_sensitivity(y) exp(-beta d(D, y)).
double brute_smooth_sensitivity(const Dataset& d, const QuerySpec& q, double beta,
                                const GridDomain& grid);

// entry i-1 = max |f(y) - f(D)| over grid datasets with d(y, D) <= i.
std::vector<double> brute_group_sensitivity(const Dataset& d, const QuerySpec& q,
                                            const GridDomain& grid, std::size_t g);

struct RatioReport {
  bool pass = true;
  std::size_t neighbors_checked = 0;
  // Largest log of sup_s max(Pr(k(D)=s)/Pr(k(D')=s), its inverse) minus the
  // allowed log bound eps_i; pass iff worst_excess <= tolerance.
  double worst_excess = -std::numeric_limits<double>::infinity();
  double worst_log_ratio = 0.0;
  std::size_t worst_distance = 0;
  std::optional<Dataset> worst_neighbor;
};

// Checks the indistinguishability bound of the mechanism calibrated at D
// against every grid dataset D' with 1 <= d(D, D') <= distance. The bound is
// exp(i * eps) at distance i for gdp and exp(eps) for every other regime.
// Laplace uses the closed-form shift ratio; discrete Laplace uses pointwise pmf
// ratios over a truncated support plus the analytic geometric tail ratio.
RatioReport verify_ratio_bound(const Dataset& d, const QuerySpec& q, const MechanismConfig& cfg,
                               const GridDomain& grid, std::size_t distance,
                               double tolerance = 1e-9);

// log sup_s max(ratio, 1/ratio) between DL(alpha) centred at z and at z'.
// alpha == 0 is the point mass.
double discrete_log_ratio(double alpha, std::int64_t z, std::int64_t z_prime);

using Pmf = std::map<std::int64_t, double>;

// Output pmf of an integer-valued scalar mechanism with DL(alpha) noise,
// restricted to [lo, hi].
Pmf discrete_output_pmf(std::int64_t exact, double alpha, std::int64_t lo, std::int64_t hi);
Pmf pushforward(const Pmf& pmf, const std::function<std::int64_t(std::int64_t)>& map);
Pmf mixture(double p, const Pmf& first, const Pmf& second);
// log sup_s max(a(s)/b(s), b(s)/a(s)) over the union of supports; infinite
// when one side has mass where the other has none.
double max_log_ratio(const Pmf& a, const Pmf& b);

// Log density ratio between LS-calibrated Laplace releases where each dataset
// uses its own local sensitivity. Infinite whenever the two scales differ.
double per_dataset_calibration_log_ratio(const Dataset& x, const Dataset& x_prime,
                                         const QuerySpec& q, double epsilon);

}  // namespace idp::oracle

#endif  // IDP_ORACLE_H_
