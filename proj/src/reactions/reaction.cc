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

#include "sosieforge/reactions/reaction.h"

#include <algorithm>
#include <map>

namespace sosieforge::reactions {
namespace {

class FreeVariableCollector {
 public:
  explicit FreeVariableCollector(const VisibleVariables& scope)
      : scope_(scope) {}

  std::vector<TypedName> Collect(const Stmt& stmt) {
    scopes_.emplace_back();
    Visit(stmt);
    return std::move(free_);
  }

 private:
  bool DeclaredInside(const std::string& name) const {
    for (const auto& names : scopes_) {
      if (names.contains(name)) {
        return true;
      }
    }
    return false;
  }

  void Use(const std::string& name) {
    if (DeclaredInside(name) || seen_.contains(name)) {
      return;
    }
    const StaticType* type = minilang::LookupVariable(scope_, name);
    if (type == nullptr) {
      return;
    }
    seen_.insert(name);
    free_.push_back({name, *type});
  }

  void Visit(const minilang::Expr& expr) {
    if (expr.kind == minilang::ExprKind::kVarRef) {
      Use(expr.text);
    }
    for (const auto& operand : expr.operands) {
      Visit(operand);
    }
  }

  void VisitBlock(const std::vector<Stmt>& block) {
    scopes_.emplace_back();
    for (const Stmt& stmt : block) {
      Visit(stmt);
    }
    scopes_.pop_back();
  }

  void Visit(const Stmt& stmt) {
    if (stmt.expr.has_value()) {
      Visit(*stmt.expr);
    }
    switch (stmt.kind) {
      case StmtKind::kLet:
        scopes_.back().insert(stmt.name);
        break;
      case StmtKind::kAssign:
        Use(stmt.name);
        break;
      case StmtKind::kIf:
      case StmtKind::kWhile:
      case StmtKind::kBlock:
        VisitBlock(stmt.body);
        if (stmt.else_body.has_value()) {
          VisitBlock(*stmt.else_body);
        }
        break;
      default:
        break;
    }
  }

  const VisibleVariables& scope_;
  std::vector<std::set<std::string>> scopes_;
  std::set<std::string> seen_;
  std::vector<TypedName> free_;
};

}  // namespace

std::string Reaction::ToString() const {
  std::string text = "(";
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (i > 0) {
      text += ", ";
    }
    text += input[i].ToString();
  }
  return text + ") -> " + output.ToString();
}

std::vector<TypedName> FreeVariables(const Stmt& stmt,
                                     const VisibleVariables& scope) {
  return FreeVariableCollector(scope).Collect(stmt);
}

std::set<std::string> StatementNames(const Stmt& stmt,
                                     const VisibleVariables& scope) {
  std::set<std::string> names;
  for (const TypedName& var : FreeVariables(stmt, scope)) {
    names.insert(var.name);
  }
  if (stmt.kind == StmtKind::kLet) {
    names.insert(stmt.name);
  }
  return names;
}

Reaction ExtractReaction(const Stmt& stmt, const Function& function,
                         const VisibleVariables& scope) {
  Reaction reaction;
  for (const TypedName& var : FreeVariables(stmt, scope)) {
    reaction.input.push_back(var.type);
  }
  std::sort(reaction.input.begin(), reaction.input.end());
  if (!function.return_type.IsVoid() && minilang::DefinitelyReturns(stmt)) {
    reaction.output = function.return_type;
  }
  return reaction;
}

bool Compatible(const Reaction& transplant, const Reaction& point) {
  return transplant.output == point.output &&
         std::includes(point.input.begin(), point.input.end(),
                       transplant.input.begin(), transplant.input.end());
}

}  // namespace sosieforge::reactions
