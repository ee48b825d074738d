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

// idpcurator: sensitivity reports, noisy answers under a session budget, and
// the accuracy benchmarks.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "idp/bench.h"
#include "idp/curator.h"
#include "idp/dataset.h"
#include "idp/error.h"
#include "idp/ledger.h"
#include "idp/queries.h"
#include "idp/sensitivity.h"
#include "json.hpp"

namespace {

struct DataOptions {
  std::string path;
  std::string lower = "unbounded";
  std::string upper = "unbounded";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--data", path, "CSV file, one value per line")->required();
    cmd->add_option("--lower", lower, "domain lower bound or 'unbounded'");
    cmd->add_option("--upper", upper, "domain upper bound or 'unbounded'");
  }

  idp::Dataset load() const {
    const idp::DomainBounds bounds(idp::parse_bound(lower, false), idp::parse_bound(upper, true));
    return idp::load_csv(path, bounds);
  }
};

nlohmann::json sensitivity_value(double x) {
  if (idp::is_unbounded(x)) return "unbounded";
  return x;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw idp::Error(idp::ErrorCode::kIo, "cannot write '" + path + "'");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private and individually differentially private query answering"};
  app.require_subcommand(1);

  // sensitivity
  auto* sens = app.add_subcommand("sensitivity", "print global/local/smooth sensitivity as JSON");
  DataOptions sens_data;
  sens_data.add_to(sens);
  std::string sens_query;
  double sens_beta = 1.0 / 3.0;
  std::size_t sens_group = 0;
  sens->add_option("--query", sens_query, "median | max | max2 | count:LO:HI | hist:E1,...,Ek")
      ->required();
  sens->add_option("--beta", sens_beta, "smoothing parameter (default 1/3, i.e. eps=1, gamma=3)");
  sens->add_option("--group", sens_group, "also report group sensitivities for distances 1..G");

  // answer
  auto* ans = app.add_subcommand("answer", "release a noisy answer and charge the session budget");
  DataOptions ans_data;
  ans_data.add_to(ans);
  std::string ans_query, regime, noise = "laplace", session;
  double epsilon = 0.0;
  double budget = 1.0;
  std::optional<double> gamma;
  std::optional<std::size_t> group;
  std::uint64_t ans_seed = 0;
  ans->add_option("--query", ans_query, "query")->required();
  ans->add_option("--regime", regime, "dp-global | dp-smooth | idp | gdp")->required();
  ans->add_option("--epsilon", epsilon, "privacy parameter")->required();
  ans->add_option("--gamma", gamma, "admissible noise exponent (dp-smooth)");
  ans->add_option("--group", group, "group size g (gdp)");
  ans->add_option("--noise", noise, "laplace | dlaplace");
  ans->add_option("--session", session, "session ledger JSON (created if missing)")->required();
  ans->add_option("--budget", budget, "total budget for a newly created session");
  ans->add_option("--seed", ans_seed, "random seed")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "reproduce the accuracy comparisons as CSV");
  std::string experiment;
  std::size_t trials = 0;
  std::uint64_t bench_seed = 1;
  double bench_gamma = 3.0;
  double bench_epsilon = 1.0;
  double bench_sensitivity = 1.0;
  std::string out_path;
  bool verify = false;
  bench->add_option("experiment", experiment, "ci-table | error-grid | noise-profile")
      ->check(CLI::IsMember({"ci-table", "error-grid", "noise-profile"}));
  bench->add_option("--trials", trials, "Monte Carlo trials (default 1e6 / 1000 per cell)");
  bench->add_option("--seed", bench_seed, "random seed");
  bench->add_option("--gamma", bench_gamma, "admissible exponent for error-grid (default 3)");
  bench->add_option("--epsilon", bench_epsilon, "epsilon for ci-table / noise-profile");
  bench->add_option("--sensitivity", bench_sensitivity, "sensitivity for ci-table / noise-profile");
  bench->add_option("--out", out_path, "output CSV");
  bench->add_flag("--verify", verify, "run the brute-force oracle verification sweep");

  // synthesize
  auto* synth = app.add_subcommand("synthesize", "write a synthetic dataset as CSV");
  std::string dist;
  std::size_t synth_n = 0;
  std::uint64_t synth_seed = 1;
  std::string synth_out;
  synth->add_option("--dist", dist, "uniform01 | standard_normal | exponential1")->required();
  synth->add_option("--n", synth_n, "number of records")->required();
  synth->add_option("--seed", synth_seed, "random seed");
  synth->add_option("--out", synth_out, "output CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sens) {
      const idp::Dataset d = sens_data.load();
      const idp::QuerySpec q = idp::QuerySpec::parse(sens_query);
      const auto report = idp::sensitivity_report(d, q, sens_beta);
      nlohmann::json doc;
      doc["global"] = sensitivity_value(report.global);
      doc["local"] = sensitivity_value(report.local);
      doc["smooth"] = sensitivity_value(report.smooth);
      doc["beta"] = report.beta;
      if (sens_group > 0) {
        doc["group"] = nlohmann::json::array();
        for (const double g : idp::group_local_sensitivity(d, q, sens_group).per_distance) {
          doc["group"].push_back(sensitivity_value(g));
        }
      }
      std::cout << doc.dump(2) << '\n';
    } else if (*ans) {
      const idp::Dataset d = ans_data.load();
      const idp::QuerySpec q = idp::QuerySpec::parse(ans_query);
      idp::MechanismConfig cfg;
      cfg.regime = idp::parse_regime(regime);
      cfg.epsilon = epsilon;
      cfg.noise = idp::parse_noise_family(noise);
      cfg.gamma = gamma;
      cfg.group_size = group;
      idp::BudgetLedger ledger = std::filesystem::exists(session) ? idp::load_session(session)
                                                                  : idp::BudgetLedger(budget);
      idp::RandomSource rng(ans_seed);
      const auto result = idp::answer(d, q, cfg, rng, ledger);
      idp::save_session(ledger, session);
      std::cout << idp::to_json(result) << '\n';
    } else if (*bench) {
      if (verify) {
        bool all = true;
        for (const auto& line : idp::bench::run_verification(bench_seed)) {
          std::cout << (line.pass ? "PASS " : "FAIL ") << line.name << " (" << line.detail << ")\n";
          all = all && line.pass;
        }
        if (experiment.empty()) return all ? 0 : 1;
        if (!all) return 1;
      }
      if (experiment.empty()) {
        std::cerr << "bench: name an experiment or pass --verify\n";
        return 1;
      }
      if (out_path.empty()) {
        std::cerr << "bench: --out is required\n";
        return 1;
      }
      auto out = open_output(out_path);
      if (experiment == "ci-table") {
        const auto table = idp::bench::run_ci_table(bench_epsilon, bench_sensitivity,
                                                    trials ? trials : 1000000, bench_seed);
        idp::bench::write_ci_table_csv(out, table);
        idp::bench::write_ci_table_csv(std::cout, table);
      } else if (experiment == "error-grid") {
        idp::bench::ExperimentPlan plan;
        plan.trials = trials ? trials : 1000;
        plan.seed = bench_seed;
        plan.gamma = bench_gamma;
        idp::bench::write_error_table_csv(out, idp::bench::run_error_grid(plan));
      } else {
        const double width = 150.0 * bench_sensitivity / bench_epsilon;
        idp::bench::write_noise_profile_csv(
            out, idp::bench::run_noise_profile(bench_epsilon, bench_sensitivity,
                                               idp::bench::linear_grid(-width, width, 3001)));
      }
    } else if (*synth) {
      const auto d = idp::synthesize(idp::parse_distribution(dist), synth_n, synth_seed);
      auto out = open_output(synth_out);
      out << std::setprecision(17);
      for (const double v : d.values()) out << v << '\n';
    }
  } catch (const idp::Error& e) {
    std::cerr << "error (" << idp::error_code_name(e.code()) << "): " << e.what() << '\n';
    return 1;
  }
  return 0;
}
