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

#ifndef SOSIEFORGE_RUNTIME_INTERPRETER_H_
#define SOSIEFORGE_RUNTIME_INTERPRETER_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sosieforge/minilang/ast.h"

namespace sosieforge::runtime {

using minilang::StatementId;
using minilang::SyntaxTree;

inline constexpr std::uint64_t kDefaultFuel = 1'000'000;
// Deeper MiniLang recursion is reported as a runtime error.
inline constexpr int kMaxCallDepth = 512;
// Strings and lists longer than this raise a runtime error.
inline constexpr std::size_t kMaxSequenceLength = 1 << 20;

enum class TestStatus { kPass, kAssertFail, kRuntimeError, kTimeout };

const char* TestStatusName(TestStatus status);

struct TestOutcome {
  std::string test;
  TestStatus status = TestStatus::kPass;
  std::uint64_t steps = 0;
  // Failure detail; empty on Pass.
  std::string message;

  bool passed() const { return status == TestStatus::kPass; }
  bool operator==(const TestOutcome&) const = default;
};

// Variables in scope at a control point, sorted by name, values rendered.
using Snapshot = std::vector<std::pair<std::string, std::string>>;

struct DataEvent {
  StatementId point;
  Snapshot snapshot;

  bool operator==(const DataEvent&) const = default;
};

struct ExecutionTrace {
  // Signatures of entered functions, e.g. "sum([int])->int".
  std::vector<std::string> calls;
  // One event per if/while condition evaluation.
  std::vector<DataEvent> data;

  bool operator==(const ExecutionTrace&) const = default;
};

// Produces the result of the uuid() builtin. Must be callable concurrently.
using UuidSource = std::function<std::string()>;

// Fresh 128-bit hex tokens from a per-thread random_device-seeded engine.
std::string RandomUuid();

struct RunOptions {
  std::uint64_t fuel = kDefaultFuel;
  bool trace = false;
  bool coverage = false;
  UuidSource uuid;
};

struct TestRun {
  TestOutcome outcome;
  std::optional<ExecutionTrace> trace;
  // Statements entered, sorted; filled when coverage is requested.
  std::vector<StatementId> hits;
  // Text passed to print().
  std::string output;
};

// Runs one test function. The tree must type check.
TestRun RunTest(const SyntaxTree& tree, const std::string& test_name,
                const RunOptions& options = {});

// Test function names in name order.
std::vector<std::string> TestNames(const SyntaxTree& tree);

struct SuiteResult {
  std::vector<TestOutcome> outcomes;
  // True when the tree has no test functions; the suite then passes.
  bool vacuous = false;

  bool passed() const;
  // First non-passing outcome, if any.
  const TestOutcome* first_failure() const;
};

// Runs every test in name order. With `stop_at_first_failure`, the remaining
// tests are skipped once one fails.
SuiteResult RunSuite(const SyntaxTree& tree, std::uint64_t fuel = kDefaultFuel,
                     bool stop_at_first_failure = false,
                     const UuidSource& uuid = {});

struct CoverageMap {
  std::set<StatementId> covered;
  std::map<std::string, std::vector<StatementId>> per_test;

  bool Covers(StatementId id) const { return covered.contains(id); }
};

CoverageMap CoverageOfSuite(const SyntaxTree& tree,
                            std::uint64_t fuel = kDefaultFuel);

std::map<std::string, ExecutionTrace> CaptureTraces(
    const SyntaxTree& tree, std::uint64_t fuel = kDefaultFuel,
    const UuidSource& uuid = {});

}  // namespace sosieforge::runtime

#endif  // SOSIEFORGE_RUNTIME_INTERPRETER_H_
