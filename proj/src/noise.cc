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

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>

#include "idp/error.h"

namespace idp {
namespace {

void require_shift(double shift) {
  if (!(shift >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "shift must be non-negative");
}

// Pr(|Z| <= z) and Pr(Z > z) for z >= 0. With w = z^g / (1 + z^g), |Z|^g / (1 + |Z|^g)
// is Beta(a, 1 - a), a = 1/g; near zero the central mass is taken from I_w and
// beyond z = 1 the tail from the complementary form in v = 1 - w.
double admissible_central_mass(double gamma, double z) {
  if (gamma == 2.0) return 2.0 * std::atan(z) / std::numbers::pi;
  const double a = 1.0 / gamma;
  const double t = std::pow(z, gamma);
  return boost::math::ibeta(a, 1.0 - a, t / (1.0 + t));
}

double admissible_upper_tail(double gamma, double z) {
  if (gamma == 2.0) return 0.5 - std::atan(z) / std::numbers::pi;
  const double a = 1.0 / gamma;
  return 0.5 * boost::math::ibeta(1.0 - a, a, 1.0 / (1.0 + std::pow(z, gamma)));
}

// |z| at central mass q = 1 - 2p; p = min(u, 1 - u) <= 1/2 is the tail mass.
double admissible_abs_quantile(double gamma, double q, double p) {
  const double a = 1.0 / gamma;
  if (q <= 0.5) {
    if (gamma == 2.0) return std::tan(0.5 * std::numbers::pi * q);
    double one_minus_w = 0.0;
    const double w = boost::math::ibeta_inv(a, 1.0 - a, q, &one_minus_w);
    return std::pow(w / one_minus_w, a);
  }
  if (gamma == 2.0) return std::tan(std::numbers::pi * (0.5 - p));
  double one_minus_v = 0.0;
  const double v = boost::math::ibeta_inv(1.0 - a, a, 2.0 * p, &one_minus_v);
  if (v <= 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(one_minus_v / v, a);
}

}  // namespace

void LaplaceParams::validate() const {
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(location)) {
    throw Error(ErrorCode::kInvalidArgument, "Laplace scale must be a positive finite number");
  }
}

void DiscreteLaplaceParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "discrete Laplace alpha must lie in (0, 1)");
  }
}

void AdmissibleNoiseParams::validate() const {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::kInvalidArgument, "admissible noise needs gamma > 1");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::kInvalidArgument, "admissible noise scale must be positive");
  }
}

double laplace_density(const LaplaceParams& p, double x) {
  return std::exp(-std::abs(x - p.location) / p.scale) / (2.0 * p.scale);
}

double laplace_cdf(const LaplaceParams& p, double x) {
  const double z = (x - p.location) / p.scale;
  return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
}

double laplace_quantile(const LaplaceParams& p, double u) {
  if (u < 0.5) return p.location + p.scale * std::log(2.0 * u);
  return p.location - p.scale * std::log(2.0 * (1.0 - u));
}

double sample_laplace(const LaplaceParams& p, RandomSource& rng) {
  p.validate();
  return laplace_quantile(p, rng.uniform_open());
}

double discrete_laplace_pmf(const DiscreteLaplaceParams& p, std::int64_t i) {
  const auto k = static_cast<double>(i < 0 ? -i : i);
  return (1.0 - p.alpha) / (1.0 + p.alpha) * std::pow(p.alpha, k);
}

double discrete_laplace_cdf(const DiscreteLaplaceParams& p, std::int64_t i) {
  // Pr(N <= i) = alpha^{-i} / (1 + alpha) for i < 0; 1 - alpha^{i+1} / (1 + alpha) otherwise.
  if (i < 0) return std::pow(p.alpha, static_cast<double>(-i)) / (1.0 + p.alpha);
  return 1.0 - std::pow(p.alpha, static_cast<double>(i + 1)) / (1.0 + p.alpha);
}

std::int64_t sample_discrete_laplace(const DiscreteLaplaceParams& p, RandomSource& rng) {
  p.validate();
  // The difference of two i.i.d. Geometric(1 - alpha) counts on {0, 1, ...}
  // is DL(alpha); each geometric is floor(log U / log alpha).
  const double log_alpha = std::log(p.alpha);
  const auto geometric = [&] {
    return static_cast<std::int64_t>(std::floor(std::log(rng.uniform_open()) / log_alpha));
  };
  const std::int64_t a = geometric();
  const std::int64_t b = geometric();
  return a - b;
}

double admissible_normalizer(double gamma) {
  return gamma * std::sin(std::numbers::pi / gamma) / (2.0 * std::numbers::pi);
}

double admissible_density(double gamma, double z) {
  return admissible_normalizer(gamma) / (1.0 + std::pow(std::abs(z), gamma));
}

double admissible_cdf(double gamma, double z) {
  const double r = std::abs(z);
  if (r <= 1.0) {
    const double half = 0.5 * admissible_central_mass(gamma, r);
    return z < 0.0 ? 0.5 - half : 0.5 + half;
  }
  const double tail = admissible_upper_tail(gamma, r);
  return z < 0.0 ? tail : 1.0 - tail;
}

double admissible_quantile(double gamma, double u) {
  if (!(u > 0.0 && u < 1.0)) throw Error(ErrorCode::kInvalidArgument, "quantile needs u in (0, 1)");
  const double p = std::min(u, 1.0 - u);
  const double r = admissible_abs_quantile(gamma, std::abs(2.0 * u - 1.0), p);
  return u < 0.5 ? -r : r;
}

double admissible_scaled_density(const AdmissibleNoiseParams& p, double x) {
  return admissible_density(p.gamma, x / p.scale) / p.scale;
}

double sample_admissible(const AdmissibleNoiseParams& p, RandomSource& rng) {
  p.validate();
  return p.scale * admissible_quantile(p.gamma, rng.uniform_open());
}

double density_ratio_bound(const LaplaceParams& p, double shift) {
  require_shift(shift);
  p.validate();
  return std::exp(shift / p.scale);
}

double density_ratio_bound(const DiscreteLaplaceParams& p, double shift) {
  require_shift(shift);
  p.validate();
  return std::exp(-shift * std::log(p.alpha));
}

}  // namespace idp
