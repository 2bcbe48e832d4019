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

#ifndef SOSIEFORGE_DIVERSITY_DIVERSITY_H_
#define SOSIEFORGE_DIVERSITY_DIVERSITY_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sosieforge/minilang/ast.h"
#include "sosieforge/runtime/interpreter.h"

namespace sosieforge::diversity {

using minilang::StatementId;
using minilang::SyntaxTree;
using runtime::ExecutionTrace;

inline constexpr int kDefaultRuns = 2;

struct TestMask {
  std::set<std::size_t> call_positions;
  std::set<std::pair<StatementId, std::string>> variables;

  bool operator==(const TestMask&) const = default;
};

// Trace positions that vary between runs of the original program.
struct NoiseMask {
  std::map<std::string, TestMask> per_test;

  bool empty() const;
  bool operator==(const NoiseMask&) const = default;
};

// Runs the original `runs` times and masks every disagreement.
NoiseMask BuildNoiseMask(const SyntaxTree& original, std::uint64_t fuel,
                         int runs = kDefaultRuns,
                         const runtime::UuidSource& uuid = runtime::RandomUuid);

// Masks every disagreement among already captured runs.
NoiseMask MaskFromRuns(
    const std::vector<std::map<std::string, ExecutionTrace>>& runs);

// Maps variant statement ids onto the original statements they correspond
// to. Statements are matched per function by a longest common subsequence
// of their headers; unmatched ids are absent.
std::map<StatementId, StatementId> AlignStatements(const SyntaxTree& original,
                                                   const SyntaxTree& variant);

// Rewrites control points into original ids. Points without a counterpart
// become negative so they never equal an original point.
ExecutionTrace Canonicalize(const ExecutionTrace& trace,
                            const std::map<StatementId, StatementId>& align);

struct TraceDifference {
  bool calls = false;
  bool data = false;

  bool operator==(const TraceDifference&) const = default;
};

// Both traces must be in original ids.
TraceDifference CompareTraces(const ExecutionTrace& a, const ExecutionTrace& b,
                              const TestMask& mask);

struct DiversityVerdict {
  std::string sosie;
  bool call_diversity = false;
  bool variable_diversity = false;
  std::size_t diverse_tests_by_call = 0;
  std::size_t diverse_tests_by_data = 0;
  std::vector<std::string> call_diverse_tests;
  std::vector<std::string> data_diverse_tests;
};

struct PoolEntry {
  std::string id;
  std::string source;
};

struct DiversityReport {
  std::size_t pool_size = 0;
  std::size_t runs = 0;
  std::size_t any_diversity = 0;
  std::size_t call_diversity = 0;
  std::size_t variable_diversity = 0;
  double any_percent = 0;
  double call_percent = 0;
  double variable_percent = 0;
  // Averaged over the sosies showing that kind of diversity.
  double mean_call_diverse_tests = 0;
  double mean_data_diverse_tests = 0;
  std::vector<DiversityVerdict> verdicts;
  // Entries that failed to parse, type check or pass the suite.
  std::vector<std::pair<std::string, std::string>> excluded;
  std::size_t masked_call_positions = 0;
  std::size_t masked_variables = 0;

  nlohmann::json ToJson() const;
};

struct DiversityOptions {
  std::uint64_t fuel = runtime::kDefaultFuel;
  int runs = kDefaultRuns;
  int workers = 1;
  runtime::UuidSource uuid = runtime::RandomUuid;
};

DiversityReport MeasureDiversity(const SyntaxTree& original,
                                 const std::vector<PoolEntry>& pool,
                                 const DiversityOptions& options = {});

// Reads every stored variant below `dir`; ids are paths relative to `dir`.
std::vector<PoolEntry> LoadPool(const std::filesystem::path& dir);

}  // namespace sosieforge::diversity

#endif  // SOSIEFORGE_DIVERSITY_DIVERSITY_H_
