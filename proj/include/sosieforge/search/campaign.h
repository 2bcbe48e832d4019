// Copyright 2026 The Sosieforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SOSIEFORGE_SEARCH_CAMPAIGN_H_
#define SOSIEFORGE_SEARCH_CAMPAIGN_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "sosieforge/minilang/ast.h"
#include "sosieforge/minilang/corpus.h"
#include "sosieforge/runtime/interpreter.h"
#include "sosieforge/search/report.h"
#include "sosieforge/transforms/transformation.h"

namespace sosieforge::search {

using transforms::TransformationKind;
using transforms::TransformationRecord;

struct CampaignConfig {
  std::filesystem::path corpus;
  std::uint64_t seed = 0;
  // Transformation attempts, one per (point, kind) pair.
  std::uint64_t budget = 1000;
  // Optional wall-clock cap. Makes the campaign machine dependent.
  std::optional<double> budget_seconds;
  std::vector<TransformationKind> kinds = transforms::AllKinds();
  std::uint64_t fuel = runtime::kDefaultFuel;
  bool keep_all = false;
  // Empty: nothing is written.
  std::filesystem::path out;
  int workers = 1;

  // Canonical form of the fields that influence results.
  nlohmann::json ToJson() const;
};

class CampaignError : public std::runtime_error {
 public:
  enum class Category { kConfig, kCorpus, kIo };

  CampaignError(Category category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  Category category() const { return category_; }

 private:
  Category category_;
};

enum class VariantClass { kSosie, kDegenerated, kIllFormed };

const char* VariantClassName(VariantClass cls);

struct Classification {
  VariantClass cls = VariantClass::kSosie;
  std::vector<std::string> diagnostics;
  // Tests run before the first failure; later tests are skipped.
  std::vector<std::string> failing_tests;
  std::uint64_t test_steps = 0;

  nlohmann::json ToJson() const;
};

// Type checks the variant and, if it is well formed, runs its suite up to
// the first failing test.
Classification ClassifyVariant(const minilang::SyntaxTree& variant,
                               std::uint64_t fuel,
                               const runtime::UuidSource& uuid = {});

struct Attempt {
  std::uint64_t index = 0;
  TransformationKind kind = TransformationKind::kDelete;
  minilang::StatementId point;
  // Absent on NoCandidate.
  std::optional<TransformationRecord> record;
  bool duplicate = false;
};

struct VariantOutcome {
  Attempt attempt;
  Classification classification;
  double seconds = 0;
};

struct CampaignResult {
  CampaignReport report;
  Timing timing;
  std::vector<Attempt> attempts;
  // Evaluated variants in attempt order.
  std::vector<VariantOutcome> outcomes;
  std::vector<minilang::StatementId> eligible;
};

// Loads, validates and sosiefies the corpus; writes results when
// `config.out` is set. Throws CampaignError.
CampaignResult RunCampaign(const CampaignConfig& config);

// Same, over an already loaded corpus.
CampaignResult RunCampaign(const CampaignConfig& config,
                           const minilang::Corpus& corpus);

// Aggregates outcomes into the per-kind table.
CampaignReport ComputeMetrics(const std::vector<Attempt>& attempts,
                              const std::vector<VariantOutcome>& outcomes,
                              const std::vector<minilang::StatementId>& eligible,
                              const reactions::ReactionIndex& index,
                              const std::vector<TransformationKind>& kinds);

Timing ComputeTiming(const std::vector<VariantOutcome>& outcomes,
                     const std::vector<TransformationKind>& kinds,
                     double wall_seconds);

// Re-applies and re-classifies a logged campaign.
std::vector<VariantOutcome> ReplayAttempts(const minilang::SyntaxTree& original,
                                           const std::vector<Attempt>& attempts,
                                           std::uint64_t fuel,
                                           std::uint64_t seed, int workers = 1);

// Deterministic uuid() stand-in for evaluating one variant.
runtime::UuidSource SeededUuid(std::uint64_t seed, std::uint64_t attempt);

nlohmann::json AttemptToJson(const Attempt& attempt);
Attempt AttemptFromJson(const nlohmann::json& json);

}  // namespace sosieforge::search

#endif  // SOSIEFORGE_SEARCH_CAMPAIGN_H_
