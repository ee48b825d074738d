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

#include "idp/noise.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"
#include "idp/error.h"

namespace idp {
namespace {

constexpr std::size_t kDraws = 1000000;

// Composite Simpson rule; test-only and independent of the library's
// incomplete-beta route.
template <typename Fn>
double simpson(Fn f, double a, double b, int intervals) {
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// Integral of 1 / (1 + |t|^gamma) over [0, z], by quadrature.
double unnormalised_mass(double gamma, double z) {
  return simpson([gamma](double t) { return 1.0 / (1.0 + std::pow(t, gamma)); }, 0.0, z, 20000);
}

double quantile_of(std::vector<double> xs, double q) {
  const auto k = static_cast<std::size_t>(q * static_cast<double>(xs.size() - 1));
  std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(k), xs.end());
  return xs[k];
}

TEST(LaplaceTest, CentralMassWithinThree) {
  RandomSource rng(1);
  std::size_t inside = 0;
  for (std::size_t i = 0; i < kDraws; ++i) inside += std::abs(sample_laplace({0, 1}, rng)) <= 3.0;
  EXPECT_NEAR(static_cast<double>(inside) / kDraws, 1.0 - std::exp(-3.0), 0.001);
}

TEST(LaplaceTest, MedianAndMeanAbsoluteDeviation) {
  RandomSource rng(2);
  std::vector<double> draws(kDraws);
  for (auto& x : draws) x = sample_laplace({0, 1}, rng);
  EXPECT_NEAR(quantile_of(draws, 0.5), 0.0, 0.01);

  double total = 0.0;
  for (std::size_t i = 0; i < kDraws; ++i) total += std::abs(sample_laplace({0, 2}, rng));
  EXPECT_NEAR(total / kDraws, 2.0, 0.01);
}

TEST(LaplaceTest, QuantileInvertsCdf) {
  const LaplaceParams p{0.5, 1.7};
  for (double u = 0.001; u < 1.0; u += 0.0137) {
    EXPECT_NEAR(laplace_cdf(p, laplace_quantile(p, u)), u, 1e-12);
  }
  EXPECT_DOUBLE_EQ(laplace_density({0, 1}, 0.0), 0.5);
}

TEST(LaplaceTest, DeterministicUnderSeed) {
  RandomSource a(77), b(77);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(sample_laplace({0, 3}, a), sample_laplace({0, 3}, b));
    EXPECT_EQ(sample_discrete_laplace({0.4}, a), sample_discrete_laplace({0.4}, b));
    EXPECT_EQ(sample_admissible({3, 2}, a), sample_admissible({3, 2}, b));
  }
}

TEST(DiscreteLaplaceTest, PmfValues) {
  EXPECT_DOUBLE_EQ(discrete_laplace_pmf({0.5}, 0), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(discrete_laplace_pmf({0.5}, 1), 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(discrete_laplace_pmf({0.5}, -1), 1.0 / 6.0);
  const DiscreteLaplaceParams p{std::exp(-1.0)};
  for (int i = 0; i < 10; ++i) {
    EXPECT_NEAR(discrete_laplace_pmf(p, i) / discrete_laplace_pmf(p, i + 1), std::numbers::e, 1e-12);
  }
}

TEST(DiscreteLaplaceTest, TruncatedMassBound) {
  const DiscreteLaplaceParams p{0.9};
  double mass = 0.0;
  for (int i = -200; i <= 200; ++i) mass += discrete_laplace_pmf(p, i);
  EXPECT_GE(mass, 1.0 - 2.0 * std::pow(0.9, 201) / 1.9);
  EXPECT_LE(mass, 1.0 + 1e-12);
}

TEST(DiscreteLaplaceTest, CdfMatchesPmfSums) {
  const DiscreteLaplaceParams p{0.3};
  double running = 0.0;
  for (int i = -60; i <= 10; ++i) {
    running += discrete_laplace_pmf(p, i);
    EXPECT_NEAR(discrete_laplace_cdf(p, i), running, 1e-12);
  }
}

TEST(DiscreteLaplaceTest, EmpiricalFrequenciesMatchPmf) {
  RandomSource rng(3);
  std::vector<std::size_t> counts(11, 0);
  for (std::size_t i = 0; i < kDraws; ++i) {
    const auto x = sample_discrete_laplace({0.5}, rng);
    if (x >= -5 && x <= 5) ++counts[static_cast<std::size_t>(x + 5)];
  }
  for (int i = -5; i <= 5; ++i) {
    EXPECT_NEAR(static_cast<double>(counts[static_cast<std::size_t>(i + 5)]) / kDraws,
                discrete_laplace_pmf({0.5}, i), 0.002)
        << "support point " << i;
  }
}

TEST(AdmissibleTest, NormalizerMatchesQuadrature) {
  for (const double gamma : {2.0, 2.5, 3.0, 4.0, 6.0}) {
    // [0, 1] directly, (1, inf) through t = 1 / r^2.
    const double head = unnormalised_mass(gamma, 1.0);
    const double tail = simpson(
        [gamma](double r) { return 2.0 * std::pow(r, 2.0 * gamma - 3.0) / (1.0 + std::pow(r, 2.0 * gamma)); },
        0.0, 1.0, 20000);
    EXPECT_NEAR(admissible_normalizer(gamma), 1.0 / (2.0 * (head + tail)), 1e-9) << gamma;
  }
}

TEST(AdmissibleTest, CdfMatchesQuadrature) {
  for (const double gamma : {1.5, 2.0, 3.0, 5.0}) {
    const double c = admissible_normalizer(gamma);
    for (const double z : {0.1, 0.5, 1.0, 2.0, 4.0}) {
      const double expected = 0.5 + c * unnormalised_mass(gamma, z);
      EXPECT_NEAR(admissible_cdf(gamma, z), expected, 1e-9) << gamma << " " << z;
      EXPECT_NEAR(admissible_cdf(gamma, -z), 1.0 - expected, 1e-9);
    }
  }
}

TEST(AdmissibleTest, QuantileInvertsCdf) {
  for (const double gamma : {1.2, 2.0, 2.7, 3.0, 8.0}) {
    for (double u = 0.0005; u < 1.0; u += 0.0113) {
      const double z = admissible_quantile(gamma, u);
      EXPECT_NEAR(admissible_cdf(gamma, z), u, 1e-12) << gamma << " " << u;
    }
    for (const double z : {-30.0, -2.0, -0.3, 0.0, 0.7, 5.0, 40.0}) {
      const double u = admissible_cdf(gamma, z);
      // Past this the double u no longer pins down z.
      if (std::min(u, 1.0 - u) < 1e-8) continue;
      EXPECT_NEAR(admissible_quantile(gamma, admissible_cdf(gamma, z)), z, 1e-6 * std::max(1.0, std::abs(z)));
    }
  }
}

TEST(AdmissibleTest, CauchyQuantile) {
  EXPECT_NEAR(admissible_quantile(2.0, 0.975), 12.706, 0.01);
  EXPECT_NEAR(admissible_quantile(2.0, 0.975), std::tan(0.475 * std::numbers::pi), 1e-9);
}

TEST(AdmissibleTest, CalibratedIntervalHalfWidths) {
  EXPECT_NEAR(8.0 * admissible_quantile(2.0, 0.975), 101.7, 1.0);
  EXPECT_NEAR(12.0 * admissible_quantile(3.0, 0.975), 34.2, 0.5);

  RandomSource rng(4);
  std::vector<double> g2(kDraws), g3(kDraws);
  for (auto& x : g2) x = sample_admissible({2.0, 8.0}, rng);
  for (auto& x : g3) x = sample_admissible({3.0, 12.0}, rng);
  EXPECT_NEAR(0.5 * (quantile_of(g2, 0.975) - quantile_of(g2, 0.025)), 101.7, 1.0);
  EXPECT_NEAR(0.5 * (quantile_of(g3, 0.975) - quantile_of(g3, 0.025)), 34.2, 0.5);
}

TEST(AdmissibleTest, RejectsIntegrabilityViolation) {
  RandomSource rng(5);
  EXPECT_THROW(sample_admissible({1.0, 1.0}, rng), Error);
  EXPECT_THROW(sample_admissible({0.5, 1.0}, rng), Error);
  EXPECT_THROW(sample_admissible({2.0, 0.0}, rng), Error);
}

// Interquartile range of batch means at two batch sizes.
template <typename Sampler>
double iqr_ratio(Sampler sample, RandomSource& rng) {
  const auto spread = [&](std::size_t batch) {
    std::vector<double> means(400);
    for (auto& m : means) {
      double total = 0.0;
      for (std::size_t i = 0; i < batch; ++i) total += sample(rng);
      m = total / static_cast<double>(batch);
    }
    return quantile_of(means, 0.75) - quantile_of(means, 0.25);
  };
  return spread(25) / spread(2500);
}

TEST(AdmissibleTest, HeavyTailsDefeatAveraging) {
  RandomSource rng(6);
  const double laplace = iqr_ratio([](RandomSource& r) { return sample_laplace({0, 1}, r); }, rng);
  const double cauchy = iqr_ratio([](RandomSource& r) { return sample_admissible({2, 1}, r); }, rng);
  // sqrt(2500 / 25) = 10 for finite variance; a Cauchy batch mean is Cauchy again.
  EXPECT_GT(laplace, 6.0);
  EXPECT_LT(cauchy, 2.0);
}

TEST(DensityRatioTest, Bounds) {
  EXPECT_DOUBLE_EQ(density_ratio_bound(LaplaceParams{0, 1}, 1.0), std::numbers::e);
  const double eps = 0.7, ls = 2.5;
  EXPECT_NEAR(density_ratio_bound(LaplaceParams{0, ls / eps}, ls), std::exp(eps), 1e-12);
  EXPECT_NEAR(density_ratio_bound(DiscreteLaplaceParams{std::exp(-eps / ls)}, ls), std::exp(eps),
              1e-12);
  EXPECT_THROW(density_ratio_bound(LaplaceParams{0, 1}, -1.0), Error);
}

TEST(DensityRatioTest, LaplaceBoundIsTightPointwise) {
  const LaplaceParams p{0, 0.8};
  const double shift = 1.3;
  double worst = 0.0;
  for (double s = -10; s <= 10; s += 0.01) {
    worst = std::max(worst, laplace_density(p, s) / laplace_density({shift, 0.8}, s));
  }
  EXPECT_NEAR(worst, density_ratio_bound(p, shift), 1e-9);
}

}  // namespace
}  // namespace idp
