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

#include "idp/queries.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "idp/error.h"

namespace idp {
namespace {

double parse_number(std::string_view text, std::string_view query) {
  double value = 0.0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() ||
      !std::isfinite(value)) {
    throw Error(ErrorCode::kParse, "bad number '" + std::string(text) + "' in query '" +
                                       std::string(query) + "'");
  }
  return value;
}

std::string number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

QuerySpec QuerySpec::range_count(double lo, double hi) {
  if (!(lo <= hi)) throw Error(ErrorCode::kInvalidArgument, "range_count requires lo <= hi");
  QuerySpec q(QueryKind::kRangeCount);
  q.lo_ = lo;
  q.hi_ = hi;
  return q;
}

QuerySpec QuerySpec::histogram(std::vector<double> edges) {
  if (edges.size() < 2) throw Error(ErrorCode::kInvalidArgument, "histogram needs at least 2 edges");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i - 1] < edges[i])) {
      throw Error(ErrorCode::kInvalidArgument, "histogram edges must be strictly increasing");
    }
  }
  QuerySpec q(QueryKind::kHistogram);
  q.edges_ = std::move(edges);
  return q;
}

QuerySpec QuerySpec::parse(std::string_view text) {
  if (text == "median") return median();
  if (text == "max") return maximum();
  if (text == "max2") return second_maximum();
  if (text.starts_with("count:")) {
    const std::string_view rest = text.substr(6);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) {
      throw Error(ErrorCode::kParse, "range query must look like count:LO:HI");
    }
    return range_count(parse_number(rest.substr(0, colon), text),
                       parse_number(rest.substr(colon + 1), text));
  }
  if (text.starts_with("hist:")) {
    std::vector<double> edges;
    std::string_view rest = text.substr(5);
    while (true) {
      const auto comma = rest.find(',');
      edges.push_back(parse_number(rest.substr(0, comma), text));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return histogram(std::move(edges));
  }
  throw Error(ErrorCode::kParse, "unknown query '" + std::string(text) + "'");
}

std::string QuerySpec::to_string() const {
  switch (kind_) {
    case QueryKind::kMedian: return "median";
    case QueryKind::kMaximum: return "max";
    case QueryKind::kSecondMaximum: return "max2";
    case QueryKind::kRangeCount: return "count:" + number(lo_) + ":" + number(hi_);
    case QueryKind::kHistogram: {
      std::string out = "hist:";
      for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (i) out += ',';
        out += number(edges_[i]);
      }
      return out;
    }
  }
  return {};
}

std::ptrdiff_t order_stat_position(const QuerySpec& q, std::size_t n) {
  const auto size = static_cast<std::ptrdiff_t>(n);
  switch (q.kind()) {
    case QueryKind::kMedian:
      if (n % 2 == 0) {
        throw Error(ErrorCode::kPrecondition,
                    "median is defined for an odd number of records, got " + std::to_string(n));
      }
      return (size + 1) / 2;
    case QueryKind::kMaximum:
      return size;
    case QueryKind::kSecondMaximum:
      if (n < 2) throw Error(ErrorCode::kPrecondition, "second maximum needs at least 2 records");
      return size - 1;
    default:
      throw Error(ErrorCode::kInvalidArgument, q.to_string() + " is not an order statistic");
  }
}

QueryValue evaluate(const Dataset& d, const QuerySpec& q) {
  QueryValue out;
  const auto values = d.values();
  switch (q.kind()) {
    case QueryKind::kMedian:
    case QueryKind::kMaximum:
    case QueryKind::kSecondMaximum:
      out.scalar = d.order_stat(order_stat_position(q, d.size()));
      break;
    case QueryKind::kRangeCount: {
      const auto first = std::lower_bound(values.begin(), values.end(), q.lo());
      const auto last = std::upper_bound(values.begin(), values.end(), q.hi());
      out.scalar = static_cast<double>(last - first);
      break;
    }
    case QueryKind::kHistogram: {
      const auto& e = q.edges();
      out.bins.resize(q.bins());
      for (std::size_t b = 0; b < q.bins(); ++b) {
        const bool last_bin = b + 1 == q.bins();
        const auto first = std::lower_bound(values.begin(), values.end(), e[b]);
        const auto last = last_bin ? std::upper_bound(values.begin(), values.end(), e[b + 1])
                                   : std::lower_bound(values.begin(), values.end(), e[b + 1]);
        out.bins[b] = static_cast<double>(last - first);
      }
      break;
    }
  }
  return out;
}

double value_distance(const QueryValue& a, const QueryValue& b) {
  if (!a.is_vector()) return std::abs(a.scalar - b.scalar);
  double total = 0.0;
  for (std::size_t i = 0; i < a.bins.size(); ++i) total += std::abs(a.bins[i] - b.bins[i]);
  return total;
}

}  // namespace idp
