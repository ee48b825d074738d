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

#ifndef IDP_QUERIES_H_
#define IDP_QUERIES_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "idp/dataset.h"

namespace idp {

enum class QueryKind { kMedian, kMaximum, kSecondMaximum, kRangeCount, kHistogram };

class QuerySpec {
 public:
  static QuerySpec median() { return QuerySpec(QueryKind::kMedian); }
  static QuerySpec maximum() { return QuerySpec(QueryKind::kMaximum); }
  static QuerySpec second_maximum() { return QuerySpec(QueryKind::kSecondMaximum); }
  // Closed interval [lo, hi]; requires lo <= hi.
  static QuerySpec range_count(double lo, double hi);
  // Bins [e_i, e_{i+1}) with the last bin closed; edges strictly increasing.
  static QuerySpec histogram(std::vector<double> edges);

  // CLI form: median | max | max2 | count:LO:HI | hist:E1,E2,...,Ek
  static QuerySpec parse(std::string_view text);
  std::string to_string() const;

  QueryKind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::vector<double>& edges() const { return edges_; }
  std::size_t bins() const { return edges_.empty() ? 0 : edges_.size() - 1; }

  bool is_order_statistic() const {
    return kind_ == QueryKind::kMedian || kind_ == QueryKind::kMaximum ||
           kind_ == QueryKind::kSecondMaximum;
  }
  bool is_integer_valued() const {
    return kind_ == QueryKind::kRangeCount || kind_ == QueryKind::kHistogram;
  }

  friend bool operator==(const QuerySpec&, const QuerySpec&) = default;

 private:
  explicit QuerySpec(QueryKind kind) : kind_(kind) {}

  QueryKind kind_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::vector<double> edges_;
};

// Scalar for every query except histogram, which yields one count per bin.
struct QueryValue {
  double scalar = 0.0;
  std::vector<double> bins;

  bool is_vector() const { return !bins.empty(); }
};

// 1-based sorted position j of the order statistic a query returns
// (median m+1 for n = 2m+1, maximum n, second maximum n-1). Validates n.
std::ptrdiff_t order_stat_position(const QuerySpec& q, std::size_t n);

QueryValue evaluate(const Dataset& d, const QuerySpec& q);

// L1 distance between two values of the same query.
double value_distance(const QueryValue& a, const QueryValue& b);

}  // namespace idp

#endif  // IDP_QUERIES_H_
