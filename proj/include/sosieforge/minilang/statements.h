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

#ifndef SOSIEFORGE_MINILANG_STATEMENTS_H_
#define SOSIEFORGE_MINILANG_STATEMENTS_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sosieforge/minilang/ast.h"

namespace sosieforge::minilang {

struct StatementInfo {
  StatementId id;
  StmtKind kind;
  std::string function;

  bool operator==(const StatementInfo&) const = default;
};

// Renumbers every statement in pre-order over the whole program.
void AssignStatementIds(SyntaxTree& tree);

// Pre-order listing of every statement, nested ones included.
std::vector<StatementInfo> EnumerateStatements(const SyntaxTree& tree);

// Number of statements in non-test functions.
std::size_t CountApplicationStatements(const SyntaxTree& tree);

struct ConstStatementRef {
  const Stmt* stmt = nullptr;
  const Function* function = nullptr;
  // The statement list that directly holds `stmt`, and its position there.
  const std::vector<Stmt>* container = nullptr;
  std::size_t index = 0;
};

struct StatementRef {
  Stmt* stmt = nullptr;
  Function* function = nullptr;
  std::vector<Stmt>* container = nullptr;
  std::size_t index = 0;
};

std::optional<ConstStatementRef> FindStatement(const SyntaxTree& tree,
                                               StatementId id);
std::optional<StatementRef> FindStatement(SyntaxTree& tree, StatementId id);

// Visits every statement in pre-order.
void ForEachStatement(
    const SyntaxTree& tree,
    const std::function<void(const Stmt&, const Function&)>& visit);

// Visits `stmt` and every statement nested in it, in pre-order.
void ForEachStatementIn(const Stmt& stmt,
                        const std::function<void(const Stmt&)>& visit);

}  // namespace sosieforge::minilang

#endif  // SOSIEFORGE_MINILANG_STATEMENTS_H_
