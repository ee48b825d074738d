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

#include "idp/curator.h"

#include <cmath>
#include <cstdint>
#include <string>

#include "idp/error.h"
#include "idp/noise.h"
#include "idp/sensitivity.h"
#include "json.hpp"

namespace idp {
namespace {

double require_finite(double sensitivity, const char* what, const QuerySpec& q) {
  if (is_unbounded(sensitivity)) {
    throw Error(ErrorCode::kUnboundedSensitivity,
                std::string(what) + " of " + q.to_string() + " is unbounded on this domain");
  }
  return sensitivity;
}

double draw(const MechanismConfig& cfg, const Calibration& cal, RandomSource& rng) {
  if (cal.noise_scale == 0.0) return 0.0;
  if (cfg.regime == Regime::kDpSmooth) {
    return sample_admissible({*cfg.gamma, cal.noise_scale}, rng);
  }
  if (cfg.noise == NoiseFamily::kDiscreteLaplace) {
    return static_cast<double>(sample_discrete_laplace({*cal.alpha}, rng));
  }
  return sample_laplace({0.0, cal.noise_scale}, rng);
}

nlohmann::json number_or_unbounded(double x) {
  if (is_unbounded(x)) return "unbounded";
  return x;
}

}  // namespace

Regime parse_regime(std::string_view text) {
  if (text == "dp-global" || text == "dp_global") return Regime::kDpGlobal;
  if (text == "dp-smooth" || text == "dp_smooth") return Regime::kDpSmooth;
  if (text == "idp" || text == "idp-local" || text == "idp_local") return Regime::kIdpLocal;
  if (text == "gdp") return Regime::kGdp;
  throw Error(ErrorCode::kInvalidArgument, "unknown regime '" + std::string(text) + "'");
}

const char* regime_name(Regime regime) {
  switch (regime) {
    case Regime::kDpGlobal: return "dp_global";
    case Regime::kDpSmooth: return "dp_smooth";
    case Regime::kIdpLocal: return "idp_local";
    case Regime::kGdp: return "gdp";
  }
  return "unknown";
}

NoiseFamily parse_noise_family(std::string_view text) {
  if (text == "laplace") return NoiseFamily::kLaplace;
  if (text == "dlaplace" || text == "discrete_laplace") return NoiseFamily::kDiscreteLaplace;
  throw Error(ErrorCode::kInvalidArgument, "unknown noise family '" + std::string(text) + "'");
}

const char* noise_family_name(NoiseFamily family) {
  return family == NoiseFamily::kLaplace ? "laplace" : "dlaplace";
}

void MechanismConfig::validate(const QuerySpec& q) const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be a positive number");
  }
  if (regime == Regime::kDpSmooth) {
    if (!gamma) throw Error(ErrorCode::kInvalidArgument, "dp_smooth requires gamma");
    if (!(*gamma > 1.0) || !std::isfinite(*gamma)) {
      throw Error(ErrorCode::kInvalidArgument, "gamma must be greater than 1");
    }
    if (noise != NoiseFamily::kLaplace) {
      throw Error(ErrorCode::kInvalidArgument, "dp_smooth uses admissible noise, not dlaplace");
    }
  } else if (gamma) {
    throw Error(ErrorCode::kInvalidArgument, "gamma only applies to dp_smooth");
  }
  if (regime == Regime::kGdp) {
    if (!group_size || *group_size < 1) {
      throw Error(ErrorCode::kInvalidArgument, "gdp requires a group size of at least 1");
    }
  } else if (group_size) {
    throw Error(ErrorCode::kInvalidArgument, "group size only applies to gdp");
  }
  if (noise == NoiseFamily::kDiscreteLaplace && !q.is_integer_valued()) {
    throw Error(ErrorCode::kInvalidArgument,
                "discrete Laplace noise needs an integer-valued query, got " + q.to_string());
  }
}

Calibration calibrate(const Dataset& d, const QuerySpec& q, const MechanismConfig& cfg) {
  cfg.validate(q);
  Calibration cal;
  switch (cfg.regime) {
    case Regime::kDpGlobal:
      cal.sensitivity_used =
          require_finite(global_sensitivity(q, d.bounds(), d.size()), "global sensitivity", q);
      cal.noise_scale = cal.sensitivity_used / cfg.epsilon;
      break;
    case Regime::kDpSmooth: {
      // (eps / 4 gamma, eps / gamma)-admissible calibration.
      const double gamma = *cfg.gamma;
      cal.beta = cfg.epsilon / gamma;
      cal.sensitivity_used =
          require_finite(smooth_sensitivity(d, q, *cal.beta), "smooth sensitivity", q);
      cal.noise_scale = 4.0 * gamma * cal.sensitivity_used / cfg.epsilon;
      break;
    }
    case Regime::kIdpLocal:
      cal.sensitivity_used = require_finite(local_sensitivity(d, q), "local sensitivity", q);
      cal.noise_scale = cal.sensitivity_used / cfg.epsilon;
      break;
    case Regime::kGdp: {
      // Smallest scale b with GLS_i / b <= i * eps for every i <= g.
      const auto group = group_local_sensitivity(d, q, *cfg.group_size);
      double scale = 0.0;
      for (std::size_t i = 0; i < group.per_distance.size(); ++i) {
        const double gls = require_finite(group.per_distance[i], "group sensitivity", q);
        scale = std::max(scale, gls / (static_cast<double>(i + 1) * cfg.epsilon));
      }
      cal.noise_scale = scale;
      cal.sensitivity_used = scale * cfg.epsilon;
      break;
    }
  }
  if (cfg.noise == NoiseFamily::kDiscreteLaplace) {
    cal.alpha = cal.noise_scale > 0.0 ? std::exp(-1.0 / cal.noise_scale) : 0.0;
  }
  return cal;
}

std::vector<LedgerEntry> ledger_entries_for(const QuerySpec& q, double epsilon) {
  const std::string name = q.to_string();
  if (q.kind() != QueryKind::kHistogram) {
    return {LedgerEntry{name, epsilon, std::string(kWholePartition)}};
  }
  std::vector<LedgerEntry> entries;
  for (std::size_t b = 0; b < q.bins(); ++b) {
    entries.push_back(LedgerEntry{name, epsilon, name + "/bin" + std::to_string(b)});
  }
  return entries;
}

QueryValue add_noise(const QueryValue& exact, const MechanismConfig& cfg, const Calibration& cal,
                     RandomSource& rng) {
  QueryValue out = exact;
  if (out.is_vector()) {
    for (auto& bin : out.bins) bin += draw(cfg, cal, rng);
  } else {
    out.scalar += draw(cfg, cal, rng);
  }
  return out;
}

NoisyAnswer answer(const Dataset& d, const QuerySpec& q, const MechanismConfig& cfg,
                   RandomSource& rng, BudgetLedger& ledger) {
  const QueryValue exact = evaluate(d, q);
  const Calibration cal = calibrate(d, q, cfg);
  ledger.charge(ledger_entries_for(q, cfg.epsilon));

  NoisyAnswer out{add_noise(exact, cfg, cal, rng), cfg, q, cal.sensitivity_used, cal.noise_scale,
                  cal.alpha};
  return out;
}

std::string to_json(const NoisyAnswer& a) {
  const bool integral = a.mechanism.noise == NoiseFamily::kDiscreteLaplace;
  const auto encode = [&](double v) -> nlohmann::json {
    if (integral) return static_cast<std::int64_t>(std::llround(v));
    return v;
  };
  nlohmann::json doc;
  doc["query"] = a.query.to_string();
  if (a.value.is_vector()) {
    doc["value"] = nlohmann::json::array();
    for (const double b : a.value.bins) doc["value"].push_back(encode(b));
  } else {
    doc["value"] = encode(a.value.scalar);
  }
  nlohmann::json mech;
  mech["regime"] = regime_name(a.mechanism.regime);
  mech["epsilon"] = a.mechanism.epsilon;
  mech["noise"] = a.mechanism.regime == Regime::kDpSmooth ? "admissible"
                                                          : noise_family_name(a.mechanism.noise);
  if (a.mechanism.gamma) mech["gamma"] = *a.mechanism.gamma;
  if (a.mechanism.group_size) mech["group"] = *a.mechanism.group_size;
  doc["mechanism"] = mech;
  doc["sensitivity_used"] = number_or_unbounded(a.sensitivity_used);
  doc["noise_scale"] = number_or_unbounded(a.noise_scale);
  if (a.alpha) doc["alpha"] = *a.alpha;
  return doc.dump(2);
}

}  // namespace idp
