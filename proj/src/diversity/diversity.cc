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

#include "sosieforge/diversity/diversity.h"

#include <algorithm>
#include <atomic>
#include <thread>

#include "sosieforge/minilang/parser.h"
#include "sosieforge/minilang/printer.h"
#include "sosieforge/minilang/statements.h"
#include "sosieforge/minilang/type_checker.h"
#include "sosieforge/search/store.h"

namespace sosieforge::diversity {
namespace {

using minilang::Stmt;
using runtime::DataEvent;
using runtime::Snapshot;

// A statement printed without its nested blocks.
std::string Header(const Stmt& stmt) {
  Stmt shallow;
  shallow.kind = stmt.kind;
  shallow.name = stmt.name;
  shallow.declared_type = stmt.declared_type;
  shallow.expr = stmt.expr;
  if (stmt.else_body.has_value()) {
    shallow.else_body.emplace();
  }
  return minilang::PrettyPrint(shallow);
}

std::vector<const Stmt*> PreOrder(const minilang::Function& function) {
  std::vector<const Stmt*> order;
  for (const Stmt& top : function.body) {
    minilang::ForEachStatementIn(top,
                                 [&](const Stmt& stmt) { order.push_back(&stmt); });
  }
  return order;
}

void AlignFunction(const minilang::Function& a, const minilang::Function& b,
                   std::map<StatementId, StatementId>& align) {
  std::vector<const Stmt*> xs = PreOrder(a);
  std::vector<const Stmt*> ys = PreOrder(b);
  std::vector<std::string> hx;
  std::vector<std::string> hy;
  for (const Stmt* s : xs) {
    hx.push_back(Header(*s));
  }
  for (const Stmt* s : ys) {
    hy.push_back(Header(*s));
  }
  std::size_t n = xs.size();
  std::size_t m = ys.size();
  // lcs[i][j]: LCS length of the suffixes starting at i and j.
  std::vector<std::vector<std::uint32_t>> lcs(
      n + 1, std::vector<std::uint32_t>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      lcs[i][j] = hx[i] == hy[j] ? lcs[i + 1][j + 1] + 1
                                 : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n && j < m) {
    if (hx[i] == hy[j]) {
      align[ys[j]->id] = xs[i]->id;
      ++i;
      ++j;
    } else if (lcs[i + 1][j] >= lcs[i][j + 1]) {
      ++i;
    } else {
      ++j;
    }
  }
}

void MaskWholeEvent(const DataEvent& event, TestMask& mask) {
  for (const auto& [name, value] : event.snapshot) {
    mask.variables.emplace(event.point, name);
  }
}

TestMask MaskTest(const std::vector<const ExecutionTrace*>& traces) {
  TestMask mask;
  std::size_t min_calls = SIZE_MAX;
  std::size_t max_calls = 0;
  std::size_t min_data = SIZE_MAX;
  for (const ExecutionTrace* trace : traces) {
    min_calls = std::min(min_calls, trace->calls.size());
    max_calls = std::max(max_calls, trace->calls.size());
    min_data = std::min(min_data, trace->data.size());
  }
  for (std::size_t i = 0; i < max_calls; ++i) {
    bool noisy = i >= min_calls;
    for (const ExecutionTrace* trace : traces) {
      noisy = noisy || trace->calls[i] != traces[0]->calls[i];
    }
    if (noisy) {
      mask.call_positions.insert(i);
    }
  }
  for (const ExecutionTrace* trace : traces) {
    for (std::size_t j = 0; j < trace->data.size(); ++j) {
      const DataEvent& event = trace->data[j];
      if (j >= min_data) {
        MaskWholeEvent(event, mask);
        continue;
      }
      const DataEvent& reference = traces[0]->data[j];
      if (event.point != reference.point) {
        MaskWholeEvent(event, mask);
        MaskWholeEvent(reference, mask);
        continue;
      }
      std::map<std::string, std::string> mine(event.snapshot.begin(),
                                              event.snapshot.end());
      std::map<std::string, std::string> theirs(reference.snapshot.begin(),
                                                reference.snapshot.end());
      for (const auto& [name, value] : mine) {
        auto it = theirs.find(name);
        if (it == theirs.end() || it->second != value) {
          mask.variables.emplace(event.point, name);
        }
      }
      for (const auto& [name, value] : theirs) {
        if (!mine.contains(name)) {
          mask.variables.emplace(event.point, name);
        }
      }
    }
  }
  return mask;
}

std::vector<std::string> MaskedCalls(const ExecutionTrace& trace,
                                     const TestMask& mask) {
  std::vector<std::string> calls;
  for (std::size_t i = 0; i < trace.calls.size(); ++i) {
    if (!mask.call_positions.contains(i)) {
      calls.push_back(trace.calls[i]);
    }
  }
  return calls;
}

std::vector<DataEvent> MaskedData(const ExecutionTrace& trace,
                                  const TestMask& mask) {
  std::vector<DataEvent> data;
  for (const DataEvent& event : trace.data) {
    DataEvent kept{event.point, {}};
    for (const auto& entry : event.snapshot) {
      if (!mask.variables.contains({event.point, entry.first})) {
        kept.snapshot.push_back(entry);
      }
    }
    data.push_back(std::move(kept));
  }
  return data;
}

struct Evaluated {
  bool verified = false;
  std::string problem;
  DiversityVerdict verdict;
};

Evaluated Evaluate(const SyntaxTree& original,
                   const std::map<std::string, ExecutionTrace>& reference,
                   const NoiseMask& mask, const PoolEntry& entry,
                   const DiversityOptions& options) {
  Evaluated result;
  minilang::ParseResult parsed = minilang::Parse(entry.source);
  if (!parsed.ok()) {
    result.problem = parsed.diagnostics.front().ToString();
    return result;
  }
  const SyntaxTree& variant = *parsed.tree;
  minilang::Diagnostics diagnostics = minilang::TypeCheck(variant);
  if (!diagnostics.empty()) {
    result.problem = diagnostics.front().ToString();
    return result;
  }
  runtime::SuiteResult suite =
      runtime::RunSuite(variant, options.fuel, true, options.uuid);
  if (!suite.passed()) {
    result.problem = "test fails: " + suite.first_failure()->test;
    return result;
  }
  result.verified = true;
  std::map<StatementId, StatementId> align = AlignStatements(original, variant);
  std::map<std::string, ExecutionTrace> traces =
      runtime::CaptureTraces(variant, options.fuel, options.uuid);
  DiversityVerdict& verdict = result.verdict;
  verdict.sosie = entry.id;
  static const TestMask kNoMask;
  for (const auto& [test, expected] : reference) {
    auto it = traces.find(test);
    TraceDifference difference{true, true};
    if (it != traces.end()) {
      auto mask_it = mask.per_test.find(test);
      difference = CompareTraces(
          expected, Canonicalize(it->second, align),
          mask_it == mask.per_test.end() ? kNoMask : mask_it->second);
    }
    if (difference.calls) {
      verdict.call_diverse_tests.push_back(test);
    }
    if (difference.data) {
      verdict.data_diverse_tests.push_back(test);
    }
  }
  verdict.diverse_tests_by_call = verdict.call_diverse_tests.size();
  verdict.diverse_tests_by_data = verdict.data_diverse_tests.size();
  verdict.call_diversity = verdict.diverse_tests_by_call > 0;
  verdict.variable_diversity = verdict.diverse_tests_by_data > 0;
  return result;
}

}  // namespace

bool NoiseMask::empty() const {
  return std::all_of(per_test.begin(), per_test.end(), [](const auto& entry) {
    return entry.second.call_positions.empty() &&
           entry.second.variables.empty();
  });
}

NoiseMask MaskFromRuns(
    const std::vector<std::map<std::string, ExecutionTrace>>& runs) {
  NoiseMask mask;
  if (runs.empty()) {
    return mask;
  }
  for (const auto& [test, first] : runs[0]) {
    std::vector<const ExecutionTrace*> traces;
    for (const auto& run : runs) {
      auto it = run.find(test);
      if (it != run.end()) {
        traces.push_back(&it->second);
      }
    }
    mask.per_test[test] = MaskTest(traces);
  }
  return mask;
}

NoiseMask BuildNoiseMask(const SyntaxTree& original, std::uint64_t fuel,
                         int runs, const runtime::UuidSource& uuid) {
  std::vector<std::map<std::string, ExecutionTrace>> traces;
  for (int i = 0; i < std::max(runs, 1); ++i) {
    traces.push_back(runtime::CaptureTraces(original, fuel, uuid));
  }
  return MaskFromRuns(traces);
}

std::map<StatementId, StatementId> AlignStatements(const SyntaxTree& original,
                                                   const SyntaxTree& variant) {
  std::map<StatementId, StatementId> align;
  for (const minilang::Function& function : variant.functions) {
    if (const minilang::Function* before =
            original.FindFunction(function.name)) {
      AlignFunction(*before, function, align);
    }
  }
  return align;
}

ExecutionTrace Canonicalize(const ExecutionTrace& trace,
                            const std::map<StatementId, StatementId>& align) {
  ExecutionTrace result = trace;
  for (DataEvent& event : result.data) {
    auto it = align.find(event.point);
    event.point = it != align.end() ? it->second
                                    : StatementId{-1 - event.point.value};
  }
  return result;
}

TraceDifference CompareTraces(const ExecutionTrace& a, const ExecutionTrace& b,
                              const TestMask& mask) {
  return {MaskedCalls(a, mask) != MaskedCalls(b, mask),
          MaskedData(a, mask) != MaskedData(b, mask)};
}

DiversityReport MeasureDiversity(const SyntaxTree& original,
                                 const std::vector<PoolEntry>& pool,
                                 const DiversityOptions& options) {
  std::vector<std::map<std::string, ExecutionTrace>> runs;
  for (int i = 0; i < std::max(options.runs, 1); ++i) {
    runs.push_back(runtime::CaptureTraces(original, options.fuel, options.uuid));
  }
  NoiseMask mask = MaskFromRuns(runs);
  std::vector<Evaluated> evaluated(pool.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < pool.size(); i = next++) {
      evaluated[i] = Evaluate(original, runs[0], mask, pool[i], options);
    }
  };
  {
    std::vector<std::jthread> threads;
    for (int t = 1; t < options.workers; ++t) {
      threads.emplace_back(work);
    }
    work();
  }

  DiversityReport report;
  report.runs = runs.size();
  for (const auto& [test, test_mask] : mask.per_test) {
    report.masked_call_positions += test_mask.call_positions.size();
    report.masked_variables += test_mask.variables.size();
  }
  std::size_t call_tests = 0;
  std::size_t data_tests = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (!evaluated[i].verified) {
      report.excluded.emplace_back(pool[i].id, evaluated[i].problem);
      continue;
    }
    const DiversityVerdict& verdict = evaluated[i].verdict;
    ++report.pool_size;
    report.call_diversity += verdict.call_diversity ? 1 : 0;
    report.variable_diversity += verdict.variable_diversity ? 1 : 0;
    report.any_diversity +=
        verdict.call_diversity || verdict.variable_diversity ? 1 : 0;
    call_tests += verdict.diverse_tests_by_call;
    data_tests += verdict.diverse_tests_by_data;
    report.verdicts.push_back(verdict);
  }
  auto percent = [&](std::size_t count) {
    return report.pool_size == 0 ? 0.0
                                 : 100.0 * static_cast<double>(count) /
                                       static_cast<double>(report.pool_size);
  };
  auto mean = [](std::size_t total, std::size_t count) {
    return count == 0 ? 0.0
                      : static_cast<double>(total) / static_cast<double>(count);
  };
  report.any_percent = percent(report.any_diversity);
  report.call_percent = percent(report.call_diversity);
  report.variable_percent = percent(report.variable_diversity);
  report.mean_call_diverse_tests = mean(call_tests, report.call_diversity);
  report.mean_data_diverse_tests = mean(data_tests, report.variable_diversity);
  return report;
}

nlohmann::json DiversityReport::ToJson() const {
  nlohmann::json sosies = nlohmann::json::array();
  for (const DiversityVerdict& verdict : verdicts) {
    sosies.push_back({{"sosie", verdict.sosie},
                      {"call_diversity", verdict.call_diversity},
                      {"variable_diversity", verdict.variable_diversity},
                      {"diverse_tests_by_call", verdict.diverse_tests_by_call},
                      {"diverse_tests_by_data", verdict.diverse_tests_by_data},
                      {"call_diverse_tests", verdict.call_diverse_tests},
                      {"data_diverse_tests", verdict.data_diverse_tests}});
  }
  nlohmann::json rejected = nlohmann::json::array();
  for (const auto& [id, problem] : excluded) {
    rejected.push_back({{"sosie", id}, {"problem", problem}});
  }
  return {{"pool_size", pool_size},
          {"runs", runs},
          {"any_diversity", {{"count", any_diversity}, {"percent", any_percent}}},
          {"call_diversity",
           {{"count", call_diversity},
            {"percent", call_percent},
            {"mean_diverse_tests", mean_call_diverse_tests}}},
          {"variable_diversity",
           {{"count", variable_diversity},
            {"percent", variable_percent},
            {"mean_diverse_tests", mean_data_diverse_tests}}},
          {"masked_call_positions", masked_call_positions},
          {"masked_variables", masked_variables},
          {"sosies", sosies},
          {"excluded", rejected}};
}

std::vector<PoolEntry> LoadPool(const std::filesystem::path& dir) {
  std::vector<PoolEntry> pool;
  for (const auto& variant_dir : search::FindStoredVariants(dir)) {
    pool.push_back(
        {std::filesystem::relative(variant_dir, dir).generic_string(),
         search::ReadTextFile(variant_dir / "variant.mini")});
  }
  return pool;
}

}  // namespace sosieforge::diversity
