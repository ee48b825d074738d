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

#include "idp/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "idp/error.h"
#include "idp/random.h"

namespace idp {
namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto begin = s.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(ws);
  return s.substr(begin, end - begin + 1);
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !text.empty();
}

std::string format_number(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

DomainBounds::DomainBounds(double lower, double upper) : lower_(lower), upper_(upper) {
  if (std::isnan(lower) || std::isnan(upper) || lower == kUnbounded || upper == -kUnbounded) {
    throw Error(ErrorCode::kInvalidArgument, "domain bounds must be numbers or unbounded");
  }
  if (lower > upper) {
    throw Error(ErrorCode::kInvalidArgument,
                "domain lower bound " + format_number(lower) + " exceeds upper bound " +
                    format_number(upper));
  }
}

Dataset::Dataset(std::vector<double> values, DomainBounds bounds, std::string name)
    : values_(std::move(values)), bounds_(bounds), name_(std::move(name)) {
  if (values_.empty()) throw Error(ErrorCode::kEmpty, "dataset must contain at least one value");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "value at position " + std::to_string(i + 1) + " is not finite");
    }
    if (!bounds_.contains(values_[i])) {
      throw Error(ErrorCode::kOutOfBounds, "value " + format_number(values_[i]) + " at position " +
                                               std::to_string(i + 1) + " lies outside the domain");
    }
  }
  std::sort(values_.begin(), values_.end());
}

Dataset Dataset::with_replaced(std::size_t index, double value) const {
  std::vector<double> copy = values_;
  copy.at(index) = value;
  return Dataset(std::move(copy), bounds_, name_);
}

Distribution parse_distribution(std::string_view text) {
  if (text == "uniform01") return Distribution::kUniform01;
  if (text == "standard_normal") return Distribution::kStandardNormal;
  if (text == "exponential1") return Distribution::kExponential1;
  throw Error(ErrorCode::kInvalidArgument, "unknown distribution '" + std::string(text) + "'");
}

const char* distribution_name(Distribution dist) {
  switch (dist) {
    case Distribution::kUniform01: return "uniform01";
    case Distribution::kStandardNormal: return "standard_normal";
    case Distribution::kExponential1: return "exponential1";
  }
  return "unknown";
}

double parse_bound(std::string_view text, bool is_upper) {
  if (trim(text) == "unbounded") return is_upper ? DomainBounds::kUnbounded : -DomainBounds::kUnbounded;
  double value = 0.0;
  if (!parse_double(text, value) || !std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidArgument, "bad domain bound '" + std::string(text) + "'");
  }
  return value;
}

Dataset parse_csv(std::istream& in, DomainBounds bounds, std::string name) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    // A trailing comma-separated remainder is not a second column we accept.
    const std::string_view token = trim(row.substr(0, row.find(',')));
    double value = 0.0;
    const bool numeric = parse_double(token, value);
    if (first_content && !numeric) {
      first_content = false;
      continue;
    }
    first_content = false;
    if (!numeric || token.size() != row.size()) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": cannot parse '" +
                                         std::string(row) + "' as a single number");
    }
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": value is not finite");
    }
    if (!bounds.contains(value)) {
      throw Error(ErrorCode::kOutOfBounds, "line " + std::to_string(line_no) + ": value " +
                                               format_number(value) + " lies outside the domain");
    }
    values.push_back(value);
  }
  if (values.empty()) throw Error(ErrorCode::kEmpty, "no data rows in input");
  return Dataset(std::move(values), bounds, std::move(name));
}

Dataset load_csv(const std::string& path, DomainBounds bounds) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return parse_csv(in, bounds, path);
}

Dataset synthesize(Distribution dist, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "synthesize requires n >= 1");
  RandomSource rng(seed);
  std::vector<double> values(n);
  switch (dist) {
    case Distribution::kUniform01:
      for (auto& v : values) v = rng.uniform_open();
      break;
    case Distribution::kStandardNormal: {
      std::normal_distribution<double> normal(0.0, 1.0);
      for (auto& v : values) v = normal(rng.engine());
      break;
    }
    case Distribution::kExponential1:
      for (auto& v : values) v = -std::log(rng.uniform_open());
      break;
  }
  std::sort(values.begin(), values.end());
  const DomainBounds bounds = dist == Distribution::kUniform01
                                  ? DomainBounds(0.0, 1.0)
                                  : DomainBounds(values.front(), values.back());
  return Dataset(std::move(values), bounds, distribution_name(dist));
}

}  // namespace idp
