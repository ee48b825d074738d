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
#include <cmath>

#include "gtest/gtest.h"
#include "idp/error.h"
#include "idp/kernels.h"
#include "idp/random.h"

namespace idp {
namespace {

const DomainBounds kUnit{0, 1};

double kernels_k0(const Dataset& d) {
  return kernels::order_stat_window(d.values(), d.bounds().lower(), d.bounds().upper(),
                                    order_stat_position(QuerySpec::median(), d.size()), 0);
}

// Values frozen from an independent Python brute force over the grid
// {0, 0.25, 0.5, 1} (all multisets, Hamming distance on multisets).
TEST(SensitivityTest, FrozenBruteForceValues) {
  const Dataset d({0, 0.25, 0.25, 0.5, 1}, kUnit);
  EXPECT_DOUBLE_EQ(local_sensitivity(d, QuerySpec::median()), 0.25);
  EXPECT_DOUBLE_EQ(local_sensitivity(d, QuerySpec::maximum()), 0.5);
  EXPECT_DOUBLE_EQ(local_sensitivity(d, QuerySpec::second_maximum()), 0.5);
  EXPECT_NEAR(smooth_sensitivity(d, QuerySpec::median(), 0.5), 0.45489799478447507, 1e-15);
  EXPECT_DOUBLE_EQ(smooth_sensitivity(d, QuerySpec::maximum(), 0.5), 0.5);
  EXPECT_DOUBLE_EQ(smooth_sensitivity(d, QuerySpec::second_maximum(), 0.5), 0.5);
  EXPECT_EQ(group_local_sensitivity(d, QuerySpec::median(), 3).per_distance,
            (std::vector<double>{0.25, 0.75, 0.75}));
  EXPECT_EQ(group_local_sensitivity(d, QuerySpec::maximum(), 3).per_distance,
            (std::vector<double>{0.5, 0.75, 0.75}));
  EXPECT_EQ(group_local_sensitivity(d, QuerySpec::second_maximum(), 3).per_distance,
            (std::vector<double>{0.5, 0.5, 0.5}));
}

TEST(SensitivityTest, GlobalSensitivity) {
  EXPECT_EQ(global_sensitivity(QuerySpec::median(), kUnit, 5), 1.0);
  EXPECT_EQ(global_sensitivity(QuerySpec::maximum(), {2, 7}, 5), 5.0);
  EXPECT_EQ(global_sensitivity(QuerySpec::range_count(0, 0.5), {-3, 3}, 9), 1.0);
  EXPECT_EQ(global_sensitivity(QuerySpec::range_count(0, 0.5), DomainBounds::unbounded(), 9), 1.0);
  EXPECT_TRUE(is_unbounded(global_sensitivity(QuerySpec::maximum(),
                                              {0, DomainBounds::kUnbounded}, 5)));
  EXPECT_EQ(global_sensitivity(QuerySpec::histogram({0, 0.5, 1}), kUnit, 5), 2.0);
}

TEST(SensitivityTest, WorkedLocalSensitivityExamples) {
  EXPECT_EQ(local_sensitivity(Dataset({0, 0, 0, 0, 1}, kUnit), QuerySpec::median()), 0.0);
  EXPECT_EQ(local_sensitivity(Dataset({0, 0, 0, 1, 1}, kUnit), QuerySpec::median()), 1.0);
  // Brute force over {0, 0.5, 1}: lowering the 0 at position 2 is impossible,
  // raising it to 1 moves the second maximum from 0 to 1.
  EXPECT_EQ(local_sensitivity(Dataset({0, 0, 1}, kUnit), QuerySpec::second_maximum()), 1.0);
}

TEST(SensitivityTest, SecondMaximumIgnoresDomain) {
  const std::vector<double> values{1.0, 4.0, 4.5, 9.0};
  const double reference = local_sensitivity(Dataset(values, {0, 10}), QuerySpec::second_maximum());
  for (const double upper : {12.0, 1e6, DomainBounds::kUnbounded}) {
    EXPECT_EQ(local_sensitivity(Dataset(values, {0, upper}), QuerySpec::second_maximum()),
              reference);
  }
  EXPECT_EQ(reference, 4.5);
}

TEST(SensitivityTest, MaximumOnUnboundedDomain) {
  const Dataset d({1, 2, 3}, {0, DomainBounds::kUnbounded});
  EXPECT_TRUE(is_unbounded(local_sensitivity(d, QuerySpec::maximum())));
  EXPECT_TRUE(is_unbounded(smooth_sensitivity(d, QuerySpec::maximum(), 1.0)));
  EXPECT_TRUE(is_unbounded(smooth_sensitivity(d, QuerySpec::median(), 1.0)));
}

TEST(SensitivityTest, TypedPreconditionErrors) {
  const auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  EXPECT_EQ(code([] { local_sensitivity(Dataset({0.5}, kUnit), QuerySpec::median()); }),
            ErrorCode::kPrecondition);
  EXPECT_EQ(code([] { local_sensitivity(Dataset({0.5, 0.6}, kUnit), QuerySpec::median()); }),
            ErrorCode::kPrecondition);
  EXPECT_EQ(code([] { local_sensitivity(Dataset({0.5}, kUnit), QuerySpec::maximum()); }),
            ErrorCode::kPrecondition);
  EXPECT_EQ(code([] { local_sensitivity(Dataset({0.5, 0.7}, kUnit), QuerySpec::second_maximum()); }),
            ErrorCode::kPrecondition);
  EXPECT_EQ(code([] { smooth_sensitivity(Dataset({0, 0, 1}, kUnit), QuerySpec::median(), 0.0); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code([] { group_local_sensitivity(Dataset({0, 0, 1}, kUnit), QuerySpec::median(), 0); }),
            ErrorCode::kInvalidArgument);
}

TEST(SensitivityTest, DegenerateDomainHasZeroSmoothSensitivity) {
  const Dataset d({0.3, 0.3, 0.3, 0.3, 0.3}, {0.3, 0.3});
  for (const double beta : {0.01, 1.0, 10.0}) {
    EXPECT_EQ(smooth_sensitivity(d, QuerySpec::median(), beta), 0.0);
  }
}

TEST(SensitivityTest, CountsHaveUnitSensitivity) {
  const Dataset d({0.1, 0.4, 0.8}, kUnit);
  const auto q = QuerySpec::range_count(0, 0.5);
  EXPECT_EQ(local_sensitivity(d, q), 1.0);
  EXPECT_EQ(smooth_sensitivity(d, q, 1.0), 1.0);
  EXPECT_EQ(group_local_sensitivity(d, q, 4).per_distance, (std::vector<double>{1, 2, 2, 2}));
}

TEST(SensitivityTest, WorkedSmoothSensitivityExample) {
  // Brute force over {0, 1}: LS(D) = 0, and {0,0,0,1,1} at distance 1 has LS 1.
  EXPECT_NEAR(smooth_sensitivity(Dataset({0, 0, 0, 0, 1}, kUnit), QuerySpec::median(), 1.0),
              0.36787944117144233, 1e-15);
  EXPECT_EQ(smooth_sensitivity(Dataset({0, 0, 1}, kUnit), QuerySpec::median(), 1.0), 1.0);
  EXPECT_EQ(group_local_sensitivity(Dataset({0, 0, 0, 0, 1}, kUnit), QuerySpec::median(), 2)
                .per_distance,
            (std::vector<double>{0.0, 1.0}));
}

class SensitivityPropertyTest : public ::testing::TestWithParam<QueryKind> {
 protected:
  QuerySpec query() const {
    switch (GetParam()) {
      case QueryKind::kMedian: return QuerySpec::median();
      case QueryKind::kMaximum: return QuerySpec::maximum();
      case QueryKind::kSecondMaximum: return QuerySpec::second_maximum();
      default: return QuerySpec::range_count(0.2, 0.7);
    }
  }

  Dataset random_dataset(RandomSource& rng) const {
    const std::size_t n = 3 + 2 * static_cast<std::size_t>(rng.uniform_open() * 20);
    std::vector<double> v(n);
    const double lo = -1.0 + rng.uniform_open();
    const double hi = lo + 0.5 + 3.0 * rng.uniform_open();
    for (auto& x : v) x = lo + (hi - lo) * rng.uniform_open();
    return Dataset(v, {lo, hi});
  }
};

TEST_P(SensitivityPropertyTest, LocalAtMostSmoothAtMostGlobal) {
  RandomSource rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    const Dataset d = random_dataset(rng);
    const double beta = 0.05 + 2.0 * rng.uniform_open();
    const double ls = local_sensitivity(d, query());
    const double ss = smooth_sensitivity(d, query(), beta);
    const double gs = global_sensitivity(query(), d.bounds(), d.size());
    EXPECT_GE(ls, 0.0);
    EXPECT_LE(ls, ss);
    EXPECT_LE(ss, gs);
  }
}

TEST_P(SensitivityPropertyTest, SmoothIsNonIncreasingInBeta) {
  RandomSource rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset d = random_dataset(rng);
    double previous = smooth_sensitivity(d, query(), 0.01);
    for (double beta = 0.05; beta < 8.0; beta *= 1.7) {
      const double current = smooth_sensitivity(d, query(), beta);
      EXPECT_LE(current, previous);
      previous = current;
    }
  }
}

TEST_P(SensitivityPropertyTest, GroupLadderStartsAtLocalAndIsMonotone) {
  RandomSource rng(303);
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset d = random_dataset(rng);
    const auto ladder = group_local_sensitivity(d, query(), 6).per_distance;
    ASSERT_EQ(ladder.size(), 6u);
    EXPECT_EQ(ladder.front(), local_sensitivity(d, query()));
    EXPECT_TRUE(std::is_sorted(ladder.begin(), ladder.end()));
  }
}

TEST_P(SensitivityPropertyTest, FastKernelMatchesReference) {
  RandomSource rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset d = random_dataset(rng);
    const double beta = 0.01 + rng.uniform_open();
    EXPECT_EQ(smooth_sensitivity(d, query(), beta), smooth_sensitivity_reference(d, query(), beta));
  }
}

INSTANTIATE_TEST_SUITE_P(AllScalarQueries, SensitivityPropertyTest,
                         ::testing::Values(QueryKind::kMedian, QueryKind::kMaximum,
                                           QueryKind::kSecondMaximum, QueryKind::kRangeCount));

TEST(SensitivityTest, SmoothMedianIncludesLocalTerm) {
  RandomSource rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(7);
    for (auto& x : v) x = rng.uniform_open();
    const Dataset d(v, kUnit);
    const double beta = 0.1 + rng.uniform_open();
    // The k = 0 window of the smooth formula is exactly LS.
    EXPECT_EQ(kernels_k0(d), local_sensitivity(d, QuerySpec::median()));
    EXPECT_GE(smooth_sensitivity(d, QuerySpec::median(), beta), kernels_k0(d));
  }
}

}  // namespace
}  // namespace idp
