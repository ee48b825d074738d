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

#ifndef IDP_LEDGER_H_
#define IDP_LEDGER_H_

#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace idp {

inline constexpr std::string_view kWholePartition = "whole";

struct LedgerEntry {
  std::string query;
  double epsilon = 0.0;
  // "whole", or a partition tag. Tags "family/part" group disjoint parts of
  // one family; a tag without '/' belongs to the default family.
  std::string partition{kWholePartition};

  friend bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

// Per-session privacy budget.
//
// Accounting: entries on the whole dataset compose sequentially (their
// epsilons add up). Within one family, parts are disjoint subsets of records
// and compose in parallel: the family costs the largest per-part total.
// Families overlap one another and therefore add up.
//
// Charges are linearizable: the budget check and the append happen under one
// lock, so concurrent writers cannot jointly overspend.
class BudgetLedger {
 public:
  // Slack for floating-point accumulation when comparing against the budget.
  static constexpr double kTolerance = 1e-9;

  explicit BudgetLedger(double total_budget);
  BudgetLedger(double total_budget, std::vector<LedgerEntry> entries);
  BudgetLedger(const BudgetLedger& other);
  BudgetLedger& operator=(const BudgetLedger& other);

  double total_budget() const { return total_budget_; }
  std::vector<LedgerEntry> entries() const;
  double spent() const;
  double remaining() const;

  // Would appending `batch` keep spent() within the budget?
  bool can_charge(const std::vector<LedgerEntry>& batch) const;

  // Appends the whole batch, or nothing. Throws Error(kBudgetExhausted) when
  // the budget would be exceeded, leaving the ledger unchanged.
  void charge(const std::vector<LedgerEntry>& batch);
  void charge(double epsilon, std::string partition, std::string query = {});

  friend bool operator==(const BudgetLedger& a, const BudgetLedger& b);

 private:
  double total_budget_;
  std::vector<LedgerEntry> entries_;
  mutable std::mutex mu_;
};

// Functional form: a new ledger with the entry appended (or Error).
BudgetLedger charge(const BudgetLedger& ledger, double epsilon, std::string partition,
                    std::string query = {});

// Spent budget of an arbitrary entry list under the rules above.
double spent_budget(const std::vector<LedgerEntry>& entries);

// {"version":1,"total_budget":<real>,"entries":[{"query":..,"epsilon":..,"partition":..}]}
std::string session_to_json(const BudgetLedger& ledger);
BudgetLedger session_from_json(std::string_view text);
void save_session(const BudgetLedger& ledger, const std::string& path);
BudgetLedger load_session(const std::string& path);

}  // namespace idp

#endif  // IDP_LEDGER_H_
