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

#ifndef IDP_CURATOR_H_
#define IDP_CURATOR_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "idp/dataset.h"
#include "idp/ledger.h"
#include "idp/queries.h"
#include "idp/random.h"

namespace idp {

enum class Regime {
  kDpGlobal,  // Laplace / DL calibrated to the global sensitivity.
  kDpSmooth,  // admissible heavy-tailed noise calibrated to smooth sensitivity.
  kIdpLocal,  // Laplace / DL calibrated to the local sensitivity at D.
  kGdp,       // Laplace / DL meeting exp(i*eps) at every distance i <= g.
};

enum class NoiseFamily { kLaplace, kDiscreteLaplace };

Regime parse_regime(std::string_view text);
const char* regime_name(Regime regime);
NoiseFamily parse_noise_family(std::string_view text);
const char* noise_family_name(NoiseFamily family);

struct MechanismConfig {
  Regime regime = Regime::kIdpLocal;
  double epsilon = 1.0;
  NoiseFamily noise = NoiseFamily::kLaplace;
  // dp_smooth only.
  std::optional<double> gamma;
  // gdp only; the schedule is eps_i = i * epsilon for i = 1..group_size.
  std::optional<std::size_t> group_size;

  static MechanismConfig dp_global(double eps, NoiseFamily noise = NoiseFamily::kLaplace) {
    return {Regime::kDpGlobal, eps, noise, std::nullopt, std::nullopt};
  }
  static MechanismConfig dp_smooth(double eps, double gamma) {
    return {Regime::kDpSmooth, eps, NoiseFamily::kLaplace, gamma, std::nullopt};
  }
  static MechanismConfig idp_local(double eps, NoiseFamily noise = NoiseFamily::kLaplace) {
    return {Regime::kIdpLocal, eps, noise, std::nullopt, std::nullopt};
  }
  static MechanismConfig gdp(double eps, std::size_t group, NoiseFamily noise = NoiseFamily::kLaplace) {
    return {Regime::kGdp, eps, noise, std::nullopt, group};
  }

  // Checks the regime-specific fields and the query/noise pairing.
  void validate(const QuerySpec& q) const;
};

// Noise calibration chosen for one (dataset, query, config).
struct Calibration {
  double sensitivity_used = 0.0;
  // Laplace or admissible scale; 0 means the value is released exactly.
  double noise_scale = 0.0;
  // DL parameter exp(-1 / noise_scale); 0 for an exact release. Only set
  // for the discrete family.
  std::optional<double> alpha;
  // Smoothing parameter (dp_smooth only).
  std::optional<double> beta;
};

// Throws Error(kUnboundedSensitivity) when the regime's sensitivity is infinite.
Calibration calibrate(const Dataset& d, const QuerySpec& q, const MechanismConfig& cfg);

struct NoisyAnswer {
  QueryValue value;
  MechanismConfig mechanism;
  QuerySpec query;
  double sensitivity_used = 0.0;
  double noise_scale = 0.0;
  std::optional<double> alpha;
};

// Ledger entries an answer of `q` at `epsilon` consumes: one "whole" entry, or
// one entry per histogram bin under a family named after the query.
std::vector<LedgerEntry> ledger_entries_for(const QuerySpec& q, double epsilon);

// Releases f(D) + noise and charges the ledger. Validation and calibration run
// before the charge; nothing is drawn and the ledger is untouched on failure.
NoisyAnswer answer(const Dataset& d, const QuerySpec& q, const MechanismConfig& cfg,
                   RandomSource& rng, BudgetLedger& ledger);

// Adds calibrated noise to an exact value without touching any ledger. Used
// by answer() and by the benchmark loops.
QueryValue add_noise(const QueryValue& exact, const MechanismConfig& cfg, const Calibration& cal,
                     RandomSource& rng);

std::string to_json(const NoisyAnswer& a);

}  // namespace idp

#endif  // IDP_CURATOR_H_
