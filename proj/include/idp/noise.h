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

#ifndef IDP_NOISE_H_
#define IDP_NOISE_H_

#include <cstdint>

#include "idp/random.h"

namespace idp {

// Laplace(location, scale): density (1/2b) exp(-|x - mu| / b).
struct LaplaceParams {
  double location = 0.0;
  double scale = 1.0;

  void validate() const;
};

// DL(alpha): Pr(N = i) = (1 - alpha) / (1 + alpha) * alpha^|i|, 0 < alpha < 1.
struct DiscreteLaplaceParams {
  double alpha = 0.5;

  void validate() const;
};

// X = scale * Z with Z having density c_gamma / (1 + |z|^gamma), gamma > 1.
struct AdmissibleNoiseParams {
  double gamma = 3.0;
  double scale = 1.0;

  void validate() const;
};

// All samplers are inverse-CDF transforms of rng.uniform_open(), so the draw
// sequence is a pure function of (params, seed).
double sample_laplace(const LaplaceParams& p, RandomSource& rng);
std::int64_t sample_discrete_laplace(const DiscreteLaplaceParams& p, RandomSource& rng);
double sample_admissible(const AdmissibleNoiseParams& p, RandomSource& rng);

double laplace_density(const LaplaceParams& p, double x);
double laplace_cdf(const LaplaceParams& p, double x);
double laplace_quantile(const LaplaceParams& p, double u);

double discrete_laplace_pmf(const DiscreteLaplaceParams& p, std::int64_t i);
double discrete_laplace_cdf(const DiscreteLaplaceParams& p, std::int64_t i);

// Unit-scale admissible family. The normaliser has the closed form
// c_gamma = gamma * sin(pi / gamma) / (2 pi). |Z|^gamma / (1 + |Z|^gamma)
// is Beta(1/gamma, 1 - 1/gamma) distributed, which gives the CDF and its
// inverse through the regularised incomplete beta function. gamma == 2 is the
// standard Cauchy and uses tan() directly.
double admissible_normalizer(double gamma);
double admissible_density(double gamma, double z);
double admissible_cdf(double gamma, double z);
double admissible_quantile(double gamma, double u);

// Density of scale * Z.
double admissible_scaled_density(const AdmissibleNoiseParams& p, double x);

// Tight worst case of density(s - z) / density(s - z') over s when
// |z - z'| = shift: exp(shift / b) for Laplace, alpha^-shift for DL.
double density_ratio_bound(const LaplaceParams& p, double shift);
double density_ratio_bound(const DiscreteLaplaceParams& p, double shift);

}  // namespace idp

#endif  // IDP_NOISE_H_
