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

#ifndef SOSIEFORGE_REACTIONS_REACTION_H_
#define SOSIEFORGE_REACTIONS_REACTION_H_

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sosieforge/minilang/ast.h"
#include "sosieforge/minilang/type_checker.h"

namespace sosieforge::reactions {

using minilang::Function;
using minilang::StatementId;
using minilang::StaticType;
using minilang::Stmt;
using minilang::StmtKind;
using minilang::SyntaxTree;
using minilang::VisibleVariables;

struct TypedName {
  std::string name;
  StaticType type;

  bool operator==(const TypedName&) const = default;
};

// Type signature of a snippet: the types of the variables it uses and the
// type it returns.
struct Reaction {
  // Sorted; one entry per distinct free variable.
  std::vector<StaticType> input;
  StaticType output;

  bool operator==(const Reaction&) const = default;
  auto operator<=>(const Reaction&) const = default;

  // e.g. "(int, [str]) -> void"
  std::string ToString() const;
};

// Variables used by `stmt` but declared outside it, in order of first use.
// Types come from `scope`, the variables visible just before `stmt`.
std::vector<TypedName> FreeVariables(const Stmt& stmt,
                                     const VisibleVariables& scope);

// Free variable names plus the name a let statement introduces.
std::set<std::string> StatementNames(const Stmt& stmt,
                                     const VisibleVariables& scope);

Reaction ExtractReaction(const Stmt& stmt, const Function& function,
                         const VisibleVariables& scope);

// Multiset containment of inputs and equal outputs.
bool Compatible(const Reaction& transplant, const Reaction& point);

}  // namespace sosieforge::reactions

#endif  // SOSIEFORGE_REACTIONS_REACTION_H_
