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

#include "sosieforge/minilang/statements.h"

namespace sosieforge::minilang {

namespace {

void Renumber(std::vector<Stmt>& block, std::int32_t& next) {
  for (Stmt& stmt : block) {
    stmt.id = StatementId{next++};
    Renumber(stmt.body, next);
    if (stmt.else_body.has_value()) {
      Renumber(*stmt.else_body, next);
    }
  }
}

void Visit(const std::vector<Stmt>& block,
           const std::function<void(const Stmt&)>& visit) {
  for (const Stmt& stmt : block) {
    ForEachStatementIn(stmt, visit);
  }
}

template <typename BlockT, typename RefT>
bool Search(BlockT& block, StatementId id, RefT& ref) {
  for (std::size_t i = 0; i < block.size(); ++i) {
    auto& stmt = block[i];
    if (stmt.id == id) {
      ref.stmt = &stmt;
      ref.container = &block;
      ref.index = i;
      return true;
    }
    // Ids are pre-order, so a subtree only holds ids in (stmt.id, next.id).
    if (i + 1 < block.size() && block[i + 1].id <= id) {
      continue;
    }
    if (Search(stmt.body, id, ref)) {
      return true;
    }
    if (stmt.else_body.has_value() && Search(*stmt.else_body, id, ref)) {
      return true;
    }
  }
  return false;
}

template <typename TreeT, typename RefT>
std::optional<RefT> FindIn(TreeT& tree, StatementId id) {
  RefT ref;
  for (auto& function : tree.functions) {
    if (Search(function.body, id, ref)) {
      ref.function = &function;
      return ref;
    }
  }
  return std::nullopt;
}

}  // namespace

void AssignStatementIds(SyntaxTree& tree) {
  std::int32_t next = 0;
  for (Function& function : tree.functions) {
    Renumber(function.body, next);
  }
}

std::vector<StatementInfo> EnumerateStatements(const SyntaxTree& tree) {
  std::vector<StatementInfo> result;
  ForEachStatement(tree, [&result](const Stmt& stmt, const Function& fn) {
    result.push_back({stmt.id, stmt.kind, fn.name});
  });
  return result;
}

std::size_t CountApplicationStatements(const SyntaxTree& tree) {
  std::size_t count = 0;
  ForEachStatement(tree, [&count](const Stmt&, const Function& fn) {
    if (!fn.IsTest()) {
      ++count;
    }
  });
  return count;
}

std::optional<ConstStatementRef> FindStatement(const SyntaxTree& tree,
                                               StatementId id) {
  return FindIn<const SyntaxTree, ConstStatementRef>(tree, id);
}

std::optional<StatementRef> FindStatement(SyntaxTree& tree, StatementId id) {
  return FindIn<SyntaxTree, StatementRef>(tree, id);
}

void ForEachStatement(
    const SyntaxTree& tree,
    const std::function<void(const Stmt&, const Function&)>& visit) {
  for (const Function& function : tree.functions) {
    Visit(function.body,
          [&](const Stmt& stmt) { visit(stmt, function); });
  }
}

void ForEachStatementIn(const Stmt& stmt,
                        const std::function<void(const Stmt&)>& visit) {
  visit(stmt);
  Visit(stmt.body, visit);
  if (stmt.else_body.has_value()) {
    Visit(*stmt.else_body, visit);
  }
}

}  // namespace sosieforge::minilang
