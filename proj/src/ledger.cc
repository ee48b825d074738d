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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "idp/error.h"
#include "json.hpp"

namespace idp {
namespace {

constexpr int kSessionVersion = 1;

void validate_entry(const LedgerEntry& e) {
  if (!(e.epsilon > 0.0) || !std::isfinite(e.epsilon)) {
    throw Error(ErrorCode::kInvalidArgument, "charged epsilon must be a positive number");
  }
  if (e.partition.empty()) throw Error(ErrorCode::kInvalidArgument, "partition tag is empty");
}

std::string family_of(const std::string& tag) {
  const auto slash = tag.rfind('/');
  return slash == std::string::npos ? std::string() : tag.substr(0, slash);
}

}  // namespace

double spent_budget(const std::vector<LedgerEntry>& entries) {
  double whole = 0.0;
  // family -> part -> sequential total within the part
  std::map<std::string, std::map<std::string, double>> families;
  for (const auto& e : entries) {
    if (e.partition == kWholePartition) {
      whole += e.epsilon;
    } else {
      families[family_of(e.partition)][e.partition] += e.epsilon;
    }
  }
  double total = whole;
  for (const auto& [family, parts] : families) {
    double widest = 0.0;
    for (const auto& [part, eps] : parts) widest = std::max(widest, eps);
    total += widest;
  }
  return total;
}

BudgetLedger::BudgetLedger(double total_budget) : BudgetLedger(total_budget, {}) {}

BudgetLedger::BudgetLedger(double total_budget, std::vector<LedgerEntry> entries)
    : total_budget_(total_budget), entries_(std::move(entries)) {
  if (!(total_budget_ >= 0.0) || !std::isfinite(total_budget_)) {
    throw Error(ErrorCode::kInvalidArgument, "total budget must be a non-negative number");
  }
  for (const auto& e : entries_) validate_entry(e);
  if (spent_budget(entries_) > total_budget_ + kTolerance) {
    throw Error(ErrorCode::kIntegrity, "ledger entries spend more than the total budget");
  }
}

BudgetLedger::BudgetLedger(const BudgetLedger& other) {
  std::lock_guard lock(other.mu_);
  total_budget_ = other.total_budget_;
  entries_ = other.entries_;
}

BudgetLedger& BudgetLedger::operator=(const BudgetLedger& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mu_, other.mu_);
  total_budget_ = other.total_budget_;
  entries_ = other.entries_;
  return *this;
}

std::vector<LedgerEntry> BudgetLedger::entries() const {
  std::lock_guard lock(mu_);
  return entries_;
}

double BudgetLedger::spent() const {
  std::lock_guard lock(mu_);
  return spent_budget(entries_);
}

double BudgetLedger::remaining() const {
  std::lock_guard lock(mu_);
  return std::max(0.0, total_budget_ - spent_budget(entries_));
}

bool BudgetLedger::can_charge(const std::vector<LedgerEntry>& batch) const {
  std::lock_guard lock(mu_);
  std::vector<LedgerEntry> next = entries_;
  next.insert(next.end(), batch.begin(), batch.end());
  return spent_budget(next) <= total_budget_ + kTolerance;
}

void BudgetLedger::charge(const std::vector<LedgerEntry>& batch) {
  for (const auto& e : batch) validate_entry(e);
  std::lock_guard lock(mu_);
  std::vector<LedgerEntry> next = entries_;
  next.insert(next.end(), batch.begin(), batch.end());
  const double after = spent_budget(next);
  if (after > total_budget_ + kTolerance) {
    std::ostringstream msg;
    msg << "privacy budget exhausted: charge would spend " << after << " of " << total_budget_;
    throw Error(ErrorCode::kBudgetExhausted, msg.str());
  }
  entries_ = std::move(next);
}

void BudgetLedger::charge(double epsilon, std::string partition, std::string query) {
  charge({LedgerEntry{std::move(query), epsilon, std::move(partition)}});
}

bool operator==(const BudgetLedger& a, const BudgetLedger& b) {
  if (&a == &b) return true;
  std::scoped_lock lock(a.mu_, b.mu_);
  return a.total_budget_ == b.total_budget_ && a.entries_ == b.entries_;
}

BudgetLedger charge(const BudgetLedger& ledger, double epsilon, std::string partition,
                    std::string query) {
  BudgetLedger next(ledger);
  next.charge(epsilon, std::move(partition), std::move(query));
  return next;
}

std::string session_to_json(const BudgetLedger& ledger) {
  nlohmann::json doc;
  doc["version"] = kSessionVersion;
  doc["total_budget"] = ledger.total_budget();
  doc["entries"] = nlohmann::json::array();
  for (const auto& e : ledger.entries()) {
    doc["entries"].push_back({{"query", e.query}, {"epsilon", e.epsilon}, {"partition", e.partition}});
  }
  return doc.dump(2);
}

BudgetLedger session_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kIntegrity, std::string("corrupt session file: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("version")) {
      throw Error(ErrorCode::kIntegrity, "session file has no version");
    }
    if (doc.at("version").get<int>() != kSessionVersion) {
      throw Error(ErrorCode::kIntegrity,
                  "unsupported session version " + doc.at("version").dump());
    }
    std::vector<LedgerEntry> entries;
    for (const auto& item : doc.at("entries")) {
      entries.push_back(LedgerEntry{item.at("query").get<std::string>(),
                                    item.at("epsilon").get<double>(),
                                    item.at("partition").get<std::string>()});
    }
    return BudgetLedger(doc.at("total_budget").get<double>(), std::move(entries));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kIntegrity, std::string("corrupt session file: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIntegrity) throw;
    throw Error(ErrorCode::kIntegrity, std::string("invalid session file: ") + e.what());
  }
}

void save_session(const BudgetLedger& ledger, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write '" + tmp + "'");
    out << session_to_json(ledger) << '\n';
    if (!out) throw Error(ErrorCode::kIo, "failed writing '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw Error(ErrorCode::kIo, "cannot replace '" + path + "'");
  }
}

BudgetLedger load_session(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open session '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return session_from_json(buffer.str());
}

}  // namespace idp
