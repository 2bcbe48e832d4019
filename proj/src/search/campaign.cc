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

#include "sosieforge/search/campaign.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <set>
#include <thread>

#include "sosieforge/minilang/type_checker.h"
#include "sosieforge/reactions/index.h"
#include "sosieforge/search/store.h"

namespace sosieforge::search {
namespace {

using Clock = std::chrono::steady_clock;
using minilang::StatementId;
using minilang::SyntaxTree;
using reactions::ReactionIndex;

constexpr std::uint64_t kBatchSize = 256;

std::string Hex(std::uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(value));
  return buffer;
}

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void ParallelFor(std::size_t count, int workers,
                 const std::function<void(std::size_t)>& body) {
  std::size_t threads =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)),
                            count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      body(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        body(i);
      }
    });
  }
}

VariantOutcome Evaluate(const SyntaxTree& original, const ReactionIndex& index,
                        const Attempt& attempt, std::uint64_t fuel,
                        std::uint64_t seed) {
  VariantOutcome outcome;
  outcome.attempt = attempt;
  Clock::time_point start = Clock::now();
  try {
    SyntaxTree variant = transforms::Apply(original, index, *attempt.record);
    outcome.classification =
        ClassifyVariant(variant, fuel, SeededUuid(seed, attempt.index));
  } catch (const transforms::InvalidRecord& e) {
    outcome.classification.cls = VariantClass::kIllFormed;
    outcome.classification.diagnostics = {std::string("invalid record: ") +
                                           e.what()};
  }
  outcome.seconds = SecondsSince(start);
  return outcome;
}

std::vector<VariantOutcome> EvaluateAll(const SyntaxTree& original,
                                        const ReactionIndex& index,
                                        const std::vector<Attempt>& attempts,
                                        std::uint64_t fuel, std::uint64_t seed,
                                        int workers) {
  std::vector<const Attempt*> work;
  for (const Attempt& attempt : attempts) {
    if (attempt.record.has_value() && !attempt.duplicate) {
      work.push_back(&attempt);
    }
  }
  std::vector<VariantOutcome> outcomes(work.size());
  ParallelFor(work.size(), workers, [&](std::size_t i) {
    outcomes[i] = Evaluate(original, index, *work[i], fuel, seed);
  });
  return outcomes;
}

void CheckConfig(const CampaignConfig& config) {
  using Category = CampaignError::Category;
  if (config.kinds.empty()) {
    throw CampaignError(Category::kConfig, "no transformation kinds enabled");
  }
  if (config.fuel == 0) {
    throw CampaignError(Category::kConfig, "fuel must be positive");
  }
  if (config.workers < 1) {
    throw CampaignError(Category::kConfig, "workers must be at least 1");
  }
  if (config.budget_seconds.has_value() && *config.budget_seconds <= 0) {
    throw CampaignError(Category::kConfig, "budget seconds must be positive");
  }
}

void WriteOutputs(const CampaignConfig& config, const minilang::Corpus& corpus,
                  const CampaignResult& result) {
  std::filesystem::path root = config.out / corpus.name;
  std::error_code error;
  for (TransformationKind kind : transforms::AllKinds()) {
    std::filesystem::remove_all(root / transforms::KindName(kind), error);
    if (error) {
      throw CampaignError(CampaignError::Category::kIo,
                          "cannot clear " + (root / transforms::KindName(kind))
                                                .string() +
                              ": " + error.message());
    }
  }
  std::map<TransformationKind, int> stored;
  ReactionIndex index = ReactionIndex::Build(corpus.tree);
  for (const VariantOutcome& outcome : result.outcomes) {
    if (outcome.classification.cls != VariantClass::kSosie && !config.keep_all) {
      continue;
    }
    TransformationKind kind = outcome.attempt.kind;
    std::filesystem::path dir = root / transforms::KindName(kind) /
                                std::to_string(stored[kind]++);
    PersistVariant(dir, transforms::Apply(corpus.tree, index,
                                          *outcome.attempt.record),
                   outcome);
  }
  std::string log;
  for (const Attempt& attempt : result.attempts) {
    log += AttemptToJson(attempt).dump() + "\n";
  }
  WriteTextFile(root / "attempts.jsonl", log);
  WriteTextFile(root / "report.json", ToJson(result.report).dump(2) + "\n");
  WriteTextFile(root / "timing.json", ToJson(result.timing).dump(2) + "\n");
  WriteTextFile(root / "report.csv", RenderCsv(result.report, &result.timing));
}

}  // namespace

nlohmann::json CampaignConfig::ToJson() const {
  std::vector<std::string> names;
  for (TransformationKind kind : kinds) {
    names.push_back(transforms::KindName(kind));
  }
  nlohmann::json json = {{"seed", seed},
                         {"budget", budget},
                         {"kinds", names},
                         {"fuel", fuel},
                         {"keep_all", keep_all}};
  json["budget_seconds"] =
      budget_seconds.has_value() ? nlohmann::json(*budget_seconds) : nullptr;
  return json;
}

const char* VariantClassName(VariantClass cls) {
  switch (cls) {
    case VariantClass::kSosie:
      return "sosie";
    case VariantClass::kDegenerated:
      return "degenerated";
    case VariantClass::kIllFormed:
      return "ill_formed";
  }
  return "?";
}

nlohmann::json Classification::ToJson() const {
  return {{"class", VariantClassName(cls)},
          {"diagnostics", diagnostics},
          {"failing_tests", failing_tests},
          {"test_steps", test_steps}};
}

Classification ClassifyVariant(const SyntaxTree& variant, std::uint64_t fuel,
                               const runtime::UuidSource& uuid) {
  Classification result;
  minilang::Diagnostics diagnostics = minilang::TypeCheck(variant);
  if (!diagnostics.empty()) {
    result.cls = VariantClass::kIllFormed;
    for (const auto& diagnostic : diagnostics) {
      result.diagnostics.push_back(diagnostic.ToString());
    }
    return result;
  }
  runtime::SuiteResult suite = runtime::RunSuite(variant, fuel, true, uuid);
  for (const runtime::TestOutcome& outcome : suite.outcomes) {
    result.test_steps += outcome.steps;
    if (!outcome.passed()) {
      result.failing_tests.push_back(outcome.test);
      result.diagnostics.push_back(
          outcome.test + ": " + runtime::TestStatusName(outcome.status) +
          (outcome.message.empty() ? "" : " (" + outcome.message + ")"));
    }
  }
  result.cls =
      suite.passed() ? VariantClass::kSosie : VariantClass::kDegenerated;
  return result;
}

runtime::UuidSource SeededUuid(std::uint64_t seed, std::uint64_t attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(attempt),
                    static_cast<std::uint32_t>(attempt >> 32)};
  auto engine = std::make_shared<std::mt19937_64>(seq);
  return [engine] { return Hex((*engine)()) + Hex((*engine)()); };
}

nlohmann::json AttemptToJson(const Attempt& attempt) {
  nlohmann::json json = {{"attempt", attempt.index},
                         {"kind", transforms::KindName(attempt.kind)},
                         {"point", attempt.point.value},
                         {"duplicate", attempt.duplicate}};
  json["record"] = attempt.record.has_value()
                       ? attempt.record->ToJson()
                       : nlohmann::json(nullptr);
  return json;
}

Attempt AttemptFromJson(const nlohmann::json& json) {
  try {
    Attempt attempt;
    attempt.index = json.at("attempt").get<std::uint64_t>();
    auto kind = transforms::ParseKind(json.at("kind").get<std::string>());
    if (!kind.has_value()) {
      throw std::invalid_argument("unknown kind");
    }
    attempt.kind = *kind;
    attempt.point = StatementId{json.at("point").get<std::int32_t>()};
    attempt.duplicate = json.at("duplicate").get<bool>();
    if (!json.at("record").is_null()) {
      attempt.record = TransformationRecord::FromJson(json.at("record"));
    }
    return attempt;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed attempt: ") + e.what());
  }
}

CampaignReport ComputeMetrics(const std::vector<Attempt>& attempts,
                              const std::vector<VariantOutcome>& outcomes,
                              const std::vector<StatementId>& eligible,
                              const ReactionIndex& index,
                              const std::vector<TransformationKind>& kinds) {
  std::map<TransformationKind, KindMetrics> rows;
  std::map<TransformationKind, std::set<StatementId>> tested;
  for (TransformationKind kind : kinds) {
    rows[kind].kind = transforms::KindName(kind);
  }
  for (const Attempt& attempt : attempts) {
    KindMetrics& row = rows[attempt.kind];
    ++row.attempts;
    if (!attempt.record.has_value()) {
      ++row.no_candidate;
    } else if (attempt.duplicate) {
      ++row.duplicates;
    } else {
      tested[attempt.kind].insert(attempt.point);
    }
  }
  for (const VariantOutcome& outcome : outcomes) {
    KindMetrics& row = rows[outcome.attempt.kind];
    ++row.variants;
    row.test_steps += outcome.classification.test_steps;
    switch (outcome.classification.cls) {
      case VariantClass::kSosie:
        ++row.sosies;
        break;
      case VariantClass::kDegenerated:
        ++row.degenerated;
        break;
      case VariantClass::kIllFormed:
        ++row.ill_formed;
        break;
    }
  }
  auto ratio = [](std::uint64_t a, std::uint64_t b) {
    return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
  };
  auto finish = [&](KindMetrics& row) {
    row.compilable = row.sosies + row.degenerated;
    row.tested_ratio = ratio(row.tested_statements, eligible.size());
    row.compilable_ratio = ratio(row.compilable, row.variants);
    row.sosie_density = ratio(row.sosies, row.variants);
  };
  CampaignReport report;
  report.total.kind = "total";
  std::set<StatementId> all_tested;
  for (TransformationKind kind : kinds) {
    KindMetrics& row = rows[kind];
    const std::set<StatementId>& points = tested[kind];
    row.tested_statements = points.size();
    row.candidates = reactions::CountCandidates(
        transforms::StrategyOf(kind),
        std::vector<StatementId>(points.begin(), points.end()), index);
    finish(row);
    all_tested.insert(points.begin(), points.end());
    KindMetrics& total = report.total;
    total.attempts += row.attempts;
    total.no_candidate += row.no_candidate;
    total.duplicates += row.duplicates;
    total.candidates = row.candidates > UINT64_MAX - total.candidates
                           ? UINT64_MAX
                           : total.candidates + row.candidates;
    total.variants += row.variants;
    total.sosies += row.sosies;
    total.degenerated += row.degenerated;
    total.ill_formed += row.ill_formed;
    total.test_steps += row.test_steps;
    report.per_kind.push_back(row);
  }
  report.total.tested_statements = all_tested.size();
  finish(report.total);
  report.eligible_points = eligible.size();
  report.attempts = attempts.size();
  for (TransformationKind kind : kinds) {
    report.kinds.push_back(transforms::KindName(kind));
  }
  return report;
}

Timing ComputeTiming(const std::vector<VariantOutcome>& outcomes,
                     const std::vector<TransformationKind>& kinds,
                     double wall_seconds) {
  Timing timing;
  std::map<std::string, std::uint64_t> sosies;
  for (TransformationKind kind : kinds) {
    timing.per_kind[transforms::KindName(kind)];
  }
  std::uint64_t total_sosies = 0;
  for (const VariantOutcome& outcome : outcomes) {
    std::string kind = transforms::KindName(outcome.attempt.kind);
    timing.per_kind[kind].seconds += outcome.seconds;
    timing.total.seconds += outcome.seconds;
    if (outcome.classification.cls == VariantClass::kSosie) {
      ++sosies[kind];
      ++total_sosies;
    }
  }
  auto per_hour = [](std::uint64_t count, double seconds) {
    return seconds > 0 ? static_cast<double>(count) * 3600.0 / seconds : 0.0;
  };
  for (auto& [kind, value] : timing.per_kind) {
    value.sosies_per_hour = per_hour(sosies[kind], value.seconds);
  }
  timing.total.sosies_per_hour = per_hour(total_sosies, timing.total.seconds);
  timing.wall_seconds = wall_seconds;
  return timing;
}

std::vector<VariantOutcome> ReplayAttempts(const SyntaxTree& original,
                                           const std::vector<Attempt>& attempts,
                                           std::uint64_t fuel,
                                           std::uint64_t seed, int workers) {
  ReactionIndex index = ReactionIndex::Build(original);
  return EvaluateAll(original, index, attempts, fuel, seed, workers);
}

CampaignResult RunCampaign(const CampaignConfig& config) {
  using Category = CampaignError::Category;
  CheckConfig(config);
  minilang::Corpus corpus;
  try {
    corpus = minilang::LoadCorpus(config.corpus);
  } catch (const minilang::CorpusIoError& e) {
    throw CampaignError(Category::kIo, e.what());
  }
  if (!corpus.parsed()) {
    throw CampaignError(Category::kCorpus,
                        corpus.diagnostics.front().ToString());
  }
  minilang::Diagnostics diagnostics = minilang::TypeCheck(corpus.tree);
  if (!diagnostics.empty()) {
    minilang::AttributeToFiles(corpus, diagnostics);
    throw CampaignError(Category::kCorpus, diagnostics.front().ToString());
  }
  runtime::SuiteResult suite = runtime::RunSuite(corpus.tree, config.fuel);
  if (!suite.passed()) {
    throw CampaignError(Category::kCorpus,
                        "test suite fails on the original program: " +
                            suite.first_failure()->test);
  }
  return RunCampaign(config, corpus);
}

CampaignResult RunCampaign(const CampaignConfig& config,
                           const minilang::Corpus& corpus) {
  CheckConfig(config);
  Clock::time_point start = Clock::now();
  const SyntaxTree& tree = corpus.tree;
  ReactionIndex index = ReactionIndex::Build(tree);
  CampaignResult result;
  result.eligible =
      transforms::EligiblePoints(runtime::CoverageOfSuite(tree, config.fuel),
                                 index);
  std::vector<std::string> warnings;
  if (runtime::TestNames(tree).empty()) {
    warnings.push_back("program has no tests; every variant is a sosie");
  }
  if (result.eligible.empty()) {
    warnings.push_back("no eligible transplantation points");
  }

  transforms::Rng rng(config.seed);
  std::set<decltype(std::declval<TransformationRecord>().Key())> seen;
  std::size_t next_kind = config.kinds.size();
  StatementId point;
  bool out_of_time = false;
  while (!result.eligible.empty() && !out_of_time &&
         result.attempts.size() < config.budget) {
    std::size_t batch_start = result.attempts.size();
    while (result.attempts.size() < config.budget &&
           result.attempts.size() - batch_start < kBatchSize) {
      if (next_kind == config.kinds.size()) {
        point = result.eligible[rng.Below(result.eligible.size())];
        next_kind = 0;
      }
      Attempt attempt;
      attempt.index = result.attempts.size();
      attempt.kind = config.kinds[next_kind++];
      attempt.point = point;
      transforms::Selection selection =
          transforms::SelectTransplant(attempt.kind, point, tree, index, rng);
      if (auto* record = std::get_if<TransformationRecord>(&selection)) {
        attempt.duplicate = !seen.insert(record->Key()).second;
        attempt.record = std::move(*record);
      }
      result.attempts.push_back(std::move(attempt));
    }
    std::vector<Attempt> batch(result.attempts.begin() + batch_start,
                               result.attempts.end());
    for (VariantOutcome& outcome :
         EvaluateAll(tree, index, batch, config.fuel, config.seed,
                     config.workers)) {
      result.outcomes.push_back(std::move(outcome));
    }
    out_of_time = config.budget_seconds.has_value() &&
                  SecondsSince(start) >= *config.budget_seconds;
  }

  result.report = ComputeMetrics(result.attempts, result.outcomes,
                                 result.eligible, index, config.kinds);
  result.report.program = corpus.name;
  result.report.corpus_hash = Hex(corpus.Hash());
  result.report.config_hash = Hex(minilang::Fnv1a(config.ToJson().dump()));
  result.report.seed = config.seed;
  result.report.budget = config.budget;
  result.report.fuel = config.fuel;
  result.report.warnings = warnings;
  result.timing =
      ComputeTiming(result.outcomes, config.kinds, SecondsSince(start));
  if (!config.out.empty()) {
    WriteOutputs(config, corpus, result);
  }
  return result;
}

}  // namespace sosieforge::search
