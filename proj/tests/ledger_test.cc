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

#include "idp/ledger.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "gtest/gtest.h"
#include "idp/error.h"
#include "idp/random.h"

namespace idp {
namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected idp::Error";
  return ErrorCode::kIo;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("idp_ledger_" + name)).string();
}

TEST(LedgerTest, SequentialCompositionRejectsOverspend) {
  BudgetLedger ledger(1.0);
  ledger.charge(0.6, "whole");
  EXPECT_EQ(code_of([&] { ledger.charge(0.6, "whole"); }), ErrorCode::kBudgetExhausted);
  EXPECT_EQ(ledger.entries().size(), 1u);
  EXPECT_DOUBLE_EQ(ledger.spent(), 0.6);
}

TEST(LedgerTest, ParallelCompositionOverDisjointParts) {
  BudgetLedger ledger(1.0);
  ledger.charge(0.6, "binA");
  ledger.charge(0.6, "binB");
  EXPECT_DOUBLE_EQ(ledger.spent(), 0.6);
}

TEST(LedgerTest, BoundaryChargeUsesWholeBudget) {
  BudgetLedger ledger(1.0);
  ledger.charge(1.0, "whole");
  EXPECT_DOUBLE_EQ(ledger.spent(), 1.0);
  EXPECT_DOUBLE_EQ(ledger.remaining(), 0.0);
  EXPECT_THROW(ledger.charge(1e-6, "whole"), Error);
}

TEST(LedgerTest, FamiliesAndWholeEntriesAdd) {
  const std::vector<LedgerEntry> entries{
      {"q1", 0.2, "whole"},      {"h1", 0.3, "hist/bin0"}, {"h1", 0.3, "hist/bin1"},
      {"h2", 0.1, "hist/bin1"},  {"h3", 0.25, "other/a"},
  };
  // whole 0.2 + hist max(0.3, 0.4) + other 0.25
  EXPECT_NEAR(spent_budget(entries), 0.85, 1e-15);
}

TEST(LedgerTest, FunctionalChargeLeavesInputUntouched) {
  const BudgetLedger base(1.0);
  const BudgetLedger next = charge(base, 0.4, "whole", "median");
  EXPECT_TRUE(base.entries().empty());
  ASSERT_EQ(next.entries().size(), 1u);
  EXPECT_EQ(next.entries()[0].query, "median");
  EXPECT_THROW(charge(next, 0.7, "whole"), Error);
}

TEST(LedgerTest, BatchIsAllOrNothing) {
  BudgetLedger ledger(1.0);
  ledger.charge(0.5, "whole");
  EXPECT_THROW(ledger.charge({{"a", 0.3, "whole"}, {"b", 0.3, "whole"}}), Error);
  EXPECT_EQ(ledger.entries().size(), 1u);
}

TEST(LedgerTest, RejectsInvalidCharges) {
  BudgetLedger ledger(1.0);
  EXPECT_EQ(code_of([&] { ledger.charge(0.0, "whole"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { ledger.charge(-0.1, "whole"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { ledger.charge(0.1, ""); }), ErrorCode::kInvalidArgument);
}

TEST(LedgerTest, RandomChargeSequencesNeverOverspend) {
  RandomSource rng(2024);
  const std::vector<std::string> tags{"whole", "a", "b", "h/0", "h/1", "h/2", "g/x"};
  for (int sequence = 0; sequence < 2000; ++sequence) {
    BudgetLedger ledger(0.5 + 2.0 * rng.uniform_open());
    for (int step = 0; step < 12; ++step) {
      const double eps = 0.05 + 0.6 * rng.uniform_open();
      const auto& tag = tags[static_cast<std::size_t>(rng.uniform_open() * tags.size())];
      const auto before = ledger.entries();
      try {
        ledger.charge(eps, tag);
      } catch (const Error&) {
        EXPECT_EQ(ledger.entries(), before);
      }
      EXPECT_LE(ledger.spent(), ledger.total_budget() + BudgetLedger::kTolerance);
    }
  }
}

TEST(LedgerTest, ConcurrentChargesAreLinearizable) {
  BudgetLedger ledger(10.0);
  std::vector<std::thread> workers;
  for (int t = 0; t < 8; ++t) {
    workers.emplace_back([&ledger] {
      for (int i = 0; i < 100; ++i) {
        try {
          ledger.charge(0.05, "whole");
        } catch (const Error&) {
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  // 800 attempts at 0.05 against 10.0: exactly 200 fit.
  EXPECT_EQ(ledger.entries().size(), 200u);
  EXPECT_LE(ledger.spent(), 10.0 + BudgetLedger::kTolerance);
}

TEST(SessionTest, RoundTrip) {
  BudgetLedger ledger(2.0);
  ledger.charge(0.5, "whole", "median");
  ledger.charge(0.25, "hist:0,1/bin0", "hist:0,1");
  const std::string path = temp_path("roundtrip.json");
  save_session(ledger, path);
  EXPECT_EQ(load_session(path), ledger);
  std::remove(path.c_str());
}

TEST(SessionTest, JsonLayout) {
  BudgetLedger ledger(1.0);
  ledger.charge(0.5, "whole", "median");
  const auto doc = session_from_json(R"({"version":1,"total_budget":1.0,
      "entries":[{"query":"median","epsilon":0.5,"partition":"whole"}]})");
  EXPECT_EQ(doc, ledger);
}

TEST(SessionTest, OverspentFileIsAnIntegrityError) {
  EXPECT_EQ(code_of([] {
              session_from_json(R"({"version":1,"total_budget":1.0,"entries":[
                {"query":"a","epsilon":0.8,"partition":"whole"},
                {"query":"b","epsilon":0.8,"partition":"whole"}]})");
            }),
            ErrorCode::kIntegrity);
}

TEST(SessionTest, EmptyEntriesGiveFullBudget) {
  const auto ledger = session_from_json(R"({"version":1,"total_budget":3.0,"entries":[]})");
  EXPECT_DOUBLE_EQ(ledger.remaining(), 3.0);
}

TEST(SessionTest, CorruptAndMismatchedFiles) {
  EXPECT_EQ(code_of([] { session_from_json("{not json"); }), ErrorCode::kIntegrity);
  EXPECT_EQ(code_of([] { session_from_json(R"({"version":2,"total_budget":1,"entries":[]})"); }),
            ErrorCode::kIntegrity);
  EXPECT_EQ(code_of([] { session_from_json(R"({"total_budget":1,"entries":[]})"); }),
            ErrorCode::kIntegrity);
  EXPECT_EQ(code_of([] {
              session_from_json(R"({"version":1,"total_budget":1,"entries":[{"query":"a"}]})");
            }),
            ErrorCode::kIntegrity);
  EXPECT_EQ(code_of([] { load_session("/nonexistent/session.json"); }), ErrorCode::kIo);
}

}  // namespace
}  // namespace idp
