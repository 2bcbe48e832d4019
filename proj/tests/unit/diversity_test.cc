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

#include <map>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "sosieforge/diversity/diversity.h"
#include "sosieforge/minilang/printer.h"
#include "sosieforge/minilang/statements.h"
#include "sosieforge/runtime/trace_dump.h"
#include "sosieforge/search/campaign.h"
#include "sosieforge/transforms/rng.h"
#include "test_util.h"

namespace sosieforge::diversity {
namespace {

using runtime::DataEvent;
using testing::CorpusPath;
using testing::CorpusPrograms;
using testing::LoadBundled;
using testing::ParseOrDie;

// The demo program with `from` replaced by `to` in its printed source.
std::string EditDemo(const std::string& from, const std::string& to) {
  std::string source = minilang::PrettyPrint(LoadBundled("demo").tree);
  std::size_t at = source.find(from);
  EXPECT_NE(std::string::npos, at) << from;
  return source.replace(at, from.size(), to);
}

StatementId ControlPointOf(const SyntaxTree& tree, const std::string& header) {
  for (const auto& info : minilang::EnumerateStatements(tree)) {
    auto ref = minilang::FindStatement(tree, info.id);
    if (minilang::PrettyPrint(*ref->stmt).starts_with(header)) {
      return info.id;
    }
  }
  ADD_FAILURE() << header;
  return {};
}

TEST(NoiseMaskTest, DeterministicProgramsHaveEmptyMasks) {
  for (const std::string program : {"textkit", "listalgo"}) {
    EXPECT_TRUE(BuildNoiseMask(LoadBundled(program).tree, runtime::kDefaultFuel)
                    .empty())
        << program;
  }
}

TEST(NoiseMaskTest, UuidValueAtControlPointIsMasked) {
  SyntaxTree tree = LoadBundled("demo").tree;
  NoiseMask mask = BuildNoiseMask(tree, runtime::kDefaultFuel);
  StatementId point = ControlPointOf(tree, "if len(token) > 0");
  TestMask expected;
  expected.variables.emplace(point, "token");
  EXPECT_EQ(expected, mask.per_test.at("test_session"));
  for (const auto& [test, test_mask] : mask.per_test) {
    if (test != "test_session") {
      EXPECT_EQ(TestMask{}, test_mask) << test;
    }
  }
}

TEST(NoiseMaskTest, FixedUuidSourceGivesEmptyMask) {
  SyntaxTree tree = LoadBundled("demo").tree;
  EXPECT_TRUE(BuildNoiseMask(tree, runtime::kDefaultFuel, 3, [] {
                return std::string("fixed");
              }).empty());
}

// Brute force: a (point, variable) is noisy iff its values differ in some
// pair among ten independent runs.
TEST(NoiseMaskTest, TwoRunsFindEverythingTenRunsFind) {
  for (const std::string& program : CorpusPrograms()) {
    SyntaxTree tree = LoadBundled(program).tree;
    std::vector<std::map<std::string, runtime::ExecutionTrace>> runs;
    for (int i = 0; i < 10; ++i) {
      runs.push_back(runtime::CaptureTraces(tree));
    }
    std::map<std::string, TestMask> brute;
    for (const auto& [test, first] : runs[0]) {
      TestMask& mask = brute[test];
      for (const auto& run : runs) {
        const auto& trace = run.at(test);
        ASSERT_EQ(first.data.size(), trace.data.size());
        for (std::size_t j = 0; j < trace.data.size(); ++j) {
          for (std::size_t v = 0; v < trace.data[j].snapshot.size(); ++v) {
            if (trace.data[j].snapshot[v] != first.data[j].snapshot[v]) {
              mask.variables.emplace(trace.data[j].point,
                                     trace.data[j].snapshot[v].first);
            }
          }
        }
        for (std::size_t c = 0; c < trace.calls.size(); ++c) {
          if (trace.calls[c] != first.calls[c]) {
            mask.call_positions.insert(c);
          }
        }
      }
    }
    NoiseMask two = BuildNoiseMask(tree, runtime::kDefaultFuel, 2);
    EXPECT_EQ(brute, two.per_test) << program;
  }
}

runtime::ExecutionTrace Trace(std::vector<std::string> calls,
                              std::vector<DataEvent> data) {
  return {std::move(calls), std::move(data)};
}

TEST(CompareTracesTest, Examples) {
  auto a = Trace({"test_a()->void", "f()->int"},
                 {{StatementId{3}, {{"x", "1"}}}});
  EXPECT_EQ((TraceDifference{false, false}), CompareTraces(a, a, {}));
  auto extra_call = a;
  extra_call.calls.push_back("g()->int");
  EXPECT_TRUE(CompareTraces(a, extra_call, {}).calls);
  EXPECT_FALSE(CompareTraces(a, extra_call, {}).data);
  auto other_value = a;
  other_value.data[0].snapshot[0].second = "2";
  EXPECT_EQ((TraceDifference{false, true}), CompareTraces(a, other_value, {}));
  TestMask mask;
  mask.variables.emplace(StatementId{3}, "x");
  EXPECT_EQ((TraceDifference{false, false}),
            CompareTraces(a, other_value, mask));
  auto other_point = a;
  other_point.data[0].point = StatementId{4};
  EXPECT_TRUE(CompareTraces(a, other_point, {}).data);
  auto fewer = a;
  fewer.data.clear();
  EXPECT_TRUE(CompareTraces(a, fewer, {}).data);
}

TEST(CompareTracesTest, Symmetric) {
  transforms::Rng rng(11);
  auto random_trace = [&] {
    runtime::ExecutionTrace trace;
    for (std::uint64_t i = 0, n = rng.Below(4); i < n; ++i) {
      trace.calls.push_back("f" + std::to_string(rng.Below(3)));
    }
    for (std::uint64_t i = 0, n = rng.Below(3); i < n; ++i) {
      trace.data.push_back(
          {StatementId{static_cast<std::int32_t>(rng.Below(2))},
           {{"x", std::to_string(rng.Below(2))}}});
    }
    return trace;
  };
  for (int i = 0; i < 500; ++i) {
    auto a = random_trace();
    auto b = random_trace();
    TestMask mask;
    if (rng.Below(2) == 0) {
      mask.call_positions.insert(rng.Below(3));
      mask.variables.emplace(StatementId{0}, "x");
    }
    EXPECT_EQ(CompareTraces(a, b, mask), CompareTraces(b, a, mask));
  }
}

TEST(AlignStatementsTest, InsertionKeepsLaterPointsAligned) {
  SyntaxTree before = ParseOrDie(
      "fn f(x: int) -> int { x = x + 1; if x > 2 { x = 0; } return x; }");
  SyntaxTree after = ParseOrDie(
      "fn f(x: int) -> int { x = x + 1; x = x * 2; if x > 2 { x = 0; }"
      " return x; }");
  auto align = AlignStatements(before, after);
  EXPECT_EQ((std::map<StatementId, StatementId>{
                {StatementId{0}, StatementId{0}},
                {StatementId{2}, StatementId{1}},
                {StatementId{3}, StatementId{2}},
                {StatementId{4}, StatementId{3}}}),
            align);
}

TEST(MeasureDiversityTest, OriginalAgainstItselfShowsNothing) {
  for (const std::string& program : CorpusPrograms()) {
    minilang::Corpus corpus = LoadBundled(program);
    DiversityReport report = MeasureDiversity(
        corpus.tree, {{"self", minilang::PrettyPrint(corpus.tree)}});
    ASSERT_EQ(1u, report.pool_size) << program;
    EXPECT_EQ(0u, report.any_diversity) << program;
    EXPECT_EQ(0u, report.verdicts[0].diverse_tests_by_call);
    EXPECT_EQ(0u, report.verdicts[0].diverse_tests_by_data);
  }
}

TEST(MeasureDiversityTest, RedundantRecomputationShowsVariableDiversity) {
  SyntaxTree original = LoadBundled("demo").tree;
  std::string source = EditDemo("  let i: int = 0;\n  while i < len(xs) {\n",
                                "  let i: int = 0;\n  let again: int = i;\n"
                                "  while i < len(xs) {\n");
  SyntaxTree variant = ParseOrDie(source);
  ASSERT_TRUE(runtime::RunSuite(variant).passed());
  // The dumps disagree on the sum loop's snapshots.
  auto a = runtime::DumpTrace(runtime::CaptureTraces(original).at("test_sum"));
  auto b = runtime::DumpTrace(runtime::CaptureTraces(variant).at("test_sum"));
  EXPECT_NE(std::string::npos, b.find("again=0"));
  EXPECT_EQ(std::string::npos, a.find("again="));
  DiversityReport report = MeasureDiversity(original, {{"again", source}});
  ASSERT_EQ(1u, report.pool_size);
  EXPECT_TRUE(report.verdicts[0].variable_diversity);
  EXPECT_FALSE(report.verdicts[0].call_diversity);
  EXPECT_EQ(std::vector<std::string>{"test_sum"},
            report.verdicts[0].data_diverse_tests);
}

TEST(MeasureDiversityTest, ExtraCallShowsCallDiversity) {
  SyntaxTree original = LoadBundled("demo").tree;
  std::string source = EditDemo("  let result: int = a;\n",
                                "  let result: int = a;\n"
                                "  let probe: int = abs(b);\n");
  DiversityReport report = MeasureDiversity(original, {{"probe", source}});
  ASSERT_EQ(1u, report.pool_size);
  EXPECT_TRUE(report.verdicts[0].call_diversity);
  EXPECT_EQ(std::vector<std::string>{"test_max"},
            report.verdicts[0].call_diverse_tests);
  EXPECT_DOUBLE_EQ(100.0, report.call_percent);
  EXPECT_DOUBLE_EQ(1.0, report.mean_call_diverse_tests);
}

TEST(MeasureDiversityTest, UuidNoiseIsNotDiversity) {
  SyntaxTree original = LoadBundled("demo").tree;
  // Same behaviour, different text; only uuid values vary between runs.
  std::string source = EditDemo("  let result: int = a;\n",
                                "  let result: int = a;\n  result = a;\n");
  DiversityReport report = MeasureDiversity(original, {{"same", source}});
  ASSERT_EQ(1u, report.pool_size);
  EXPECT_EQ(0u, report.any_diversity);
  EXPECT_GT(report.masked_variables, 0u);
  // Without the mask the uuid value would count.
  DiversityReport unmasked =
      MeasureDiversity(original, {{"same", source}}, {.runs = 1});
  EXPECT_EQ(std::vector<std::string>{"test_session"},
            unmasked.verdicts[0].data_diverse_tests);
}

TEST(MeasureDiversityTest, NonSosiesAreExcluded) {
  SyntaxTree original = LoadBundled("demo").tree;
  std::string broken = EditDemo("return x;\n}", "return x + 1;\n}");
  DiversityReport report = MeasureDiversity(
      original, {{"broken", broken}, {"garbage", "fn ("}});
  EXPECT_EQ(0u, report.pool_size);
  EXPECT_EQ(2u, report.excluded.size());
  EXPECT_DOUBLE_EQ(0.0, report.any_percent);
}

TEST(MeasureDiversityTest, CampaignPoolStableUnderMoreRuns) {
  std::filesystem::path out = testing::ScratchDir("diversity_pool");
  search::CampaignConfig config;
  config.corpus = CorpusPath("demo");
  config.seed = 5;
  config.budget = 300;
  config.out = out;
  search::RunCampaign(config);
  std::vector<PoolEntry> pool = LoadPool(out);
  ASSERT_FALSE(pool.empty());
  SyntaxTree original = LoadBundled("demo").tree;
  DiversityReport two = MeasureDiversity(original, pool, {.runs = 2});
  DiversityReport ten = MeasureDiversity(original, pool, {.runs = 10,
                                                          .workers = 2});
  EXPECT_EQ(pool.size(), two.pool_size);
  ASSERT_EQ(two.verdicts.size(), ten.verdicts.size());
  for (std::size_t i = 0; i < two.verdicts.size(); ++i) {
    EXPECT_EQ(two.verdicts[i].call_diverse_tests,
              ten.verdicts[i].call_diverse_tests);
    EXPECT_EQ(two.verdicts[i].data_diverse_tests,
              ten.verdicts[i].data_diverse_tests);
  }
  EXPECT_GE(two.any_diversity,
            std::max(two.call_diversity, two.variable_diversity));
  nlohmann::json json = two.ToJson();
  EXPECT_EQ(pool.size(), json.at("sosies").size());
}

}  // namespace
}  // namespace sosieforge::diversity
