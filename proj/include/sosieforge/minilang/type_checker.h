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

#ifndef SOSIEFORGE_MINILANG_TYPE_CHECKER_H_
#define SOSIEFORGE_MINILANG_TYPE_CHECKER_H_

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sosieforge/minilang/ast.h"
#include "sosieforge/minilang/diagnostic.h"

namespace sosieforge::minilang {

// Variables visible at a program point, outermost declaration first.
using VisibleVariables = std::vector<std::pair<std::string, StaticType>>;

const StaticType* LookupVariable(const VisibleVariables& scope,
                                 const std::string& name);

// MiniLang's notion of compilation. Returns an empty list iff the tree is
// well formed: names resolve lexically (no shadowing of locals or
// parameters), expressions are well typed, every non-void function returns on
// all paths, and no statement follows an unconditional return.
Diagnostics TypeCheck(const SyntaxTree& tree);

// Definite-return analysis: a block returns if any of its statements does;
// an if returns only when both branches do; a while never does.
bool DefinitelyReturns(const Stmt& stmt);
bool DefinitelyReturns(const std::vector<Stmt>& block);

// Type of `expr` under `scope`, or nullopt when it is ill typed. `expected`
// resolves the element type of empty list literals.
std::optional<StaticType> TypeOfExpression(
    const SyntaxTree& tree, const VisibleVariables& scope, const Expr& expr,
    const StaticType* expected = nullptr);

// Visits every statement with the variables visible just before it runs.
// Assumes a well-formed tree; unresolved declarations are skipped silently.
void ForEachStatementInScope(
    const SyntaxTree& tree,
    const std::function<void(const Stmt&, const Function&,
                             const VisibleVariables&)>& visit);

}  // namespace sosieforge::minilang

#endif  // SOSIEFORGE_MINILANG_TYPE_CHECKER_H_
