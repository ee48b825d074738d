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

#ifndef IDP_DATASET_H_
#define IDP_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace idp {

// Attribute domain [lower, upper]. An infinite endpoint means "unbounded".
class DomainBounds {
 public:
  static constexpr double kUnbounded = std::numeric_limits<double>::infinity();

  DomainBounds() : DomainBounds(-kUnbounded, kUnbounded) {}
  DomainBounds(double lower, double upper);

  static DomainBounds unbounded() { return {}; }

  double lower() const { return lower_; }
  double upper() const { return upper_; }
  bool lower_finite() const { return lower_ != -kUnbounded; }
  bool upper_finite() const { return upper_ != kUnbounded; }
  bool finite() const { return lower_finite() && upper_finite(); }
  bool contains(double x) const { return lower_ <= x && x <= upper_; }
  // upper - lower; infinite when either end is unbounded.
  double width() const { return upper_ - lower_; }

  friend bool operator==(const DomainBounds&, const DomainBounds&) = default;

 private:
  double lower_;
  double upper_;
};

// Immutable numeric column, sorted ascending, with its declared domain.
class Dataset {
 public:
  // Sorts `values`; throws if empty, non-finite, or outside `bounds`.
  Dataset(std::vector<double> values, DomainBounds bounds, std::string name = {});

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  const DomainBounds& bounds() const { return bounds_; }
  const std::string& name() const { return name_; }

  // 1-based order statistic x_i; i must lie in [1, n].
  double order_stat(std::ptrdiff_t i) const { return values_[static_cast<std::size_t>(i - 1)]; }

  // 1-based order statistic with domain-edge clamping: min(Dom) for i < 1 and
  // max(Dom) for i > n. May return an infinite value on unbounded domains.
  double clamped(std::ptrdiff_t i) const {
    if (i < 1) return bounds_.lower();
    if (i > static_cast<std::ptrdiff_t>(values_.size())) return bounds_.upper();
    return values_[static_cast<std::size_t>(i - 1)];
  }

  // Copy with the record at sorted position `index` (0-based) replaced.
  Dataset with_replaced(std::size_t index, double value) const;

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.values_ == b.values_ && a.bounds_ == b.bounds_;
  }

 private:
  std::vector<double> values_;
  DomainBounds bounds_;
  std::string name_;
};

enum class Distribution { kUniform01, kStandardNormal, kExponential1 };

Distribution parse_distribution(std::string_view text);
const char* distribution_name(Distribution dist);

// Parses "<number>" or "unbounded" as used by the --lower/--upper flags.
double parse_bound(std::string_view text, bool is_upper);

// One value per line; an optional header is recognised by a non-numeric first
// token on the first line. Errors name the offending 1-based line.
Dataset parse_csv(std::istream& in, DomainBounds bounds, std::string name = {});
Dataset load_csv(const std::string& path, DomainBounds bounds);

// n i.i.d. draws, sorted. uniform01 gets bounds [0, 1]; the other two get
// [min(values), max(values)].
Dataset synthesize(Distribution dist, std::size_t n, std::uint64_t seed);

}  // namespace idp

#endif  // IDP_DATASET_H_
