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

#include "sosieforge/transforms/transformation.h"

#include <algorithm>
#include <set>

#include "sosieforge/minilang/statements.h"

namespace sosieforge::transforms {
namespace {

using minilang::Stmt;
using minilang::StmtKind;
using reactions::StatementEntry;
using reactions::Strategy;

struct KindInfo {
  TransformationKind kind;
  const char* name;
  Strategy strategy;
};

constexpr KindInfo kKinds[] = {
    {TransformationKind::kDelete, "delete", Strategy::kDelete},
    {TransformationKind::kAddRandom, "add_random", Strategy::kRandom},
    {TransformationKind::kReplaceRandom, "replace_random", Strategy::kRandom},
    {TransformationKind::kAddWittgenstein, "add_wittgenstein",
     Strategy::kWittgenstein},
    {TransformationKind::kReplaceWittgenstein, "replace_wittgenstein",
     Strategy::kWittgenstein},
    {TransformationKind::kAddReaction, "add_reaction", Strategy::kReaction},
    {TransformationKind::kReplaceReaction, "replace_reaction",
     Strategy::kReaction},
    {TransformationKind::kAddSteroid, "add_steroid", Strategy::kSteroid},
    {TransformationKind::kReplaceSteroid, "replace_steroid",
     Strategy::kSteroid},
};

const KindInfo& Info(TransformationKind kind) {
  return kKinds[static_cast<int>(kind)];
}

// The same-kind rules for replacing a declaration or a return.
bool ReplaceAllowed(const StatementEntry& point,
                    const StatementEntry& transplant, const SyntaxTree& tree) {
  if (point.id == transplant.id) {
    return false;
  }
  if (point.kind == StmtKind::kReturn) {
    return transplant.kind == StmtKind::kReturn &&
           transplant.function_return == point.function_return;
  }
  if (point.kind == StmtKind::kLet) {
    if (transplant.kind != StmtKind::kLet) {
      return false;
    }
    auto a = minilang::FindStatement(tree, point.id);
    auto b = minilang::FindStatement(tree, transplant.id);
    return a && b && a->stmt->declared_type == b->stmt->declared_type;
  }
  return true;
}

bool ContainsReturn(const minilang::Stmt& stmt) {
  if (stmt.kind == StmtKind::kReturn) {
    return true;
  }
  auto any = [](const std::vector<minilang::Stmt>& block) {
    return std::any_of(block.begin(), block.end(), ContainsReturn);
  };
  return any(stmt.body) || (stmt.else_body && any(*stmt.else_body));
}

// A nested return only type checks in a function returning the same type,
// which a Void output context does not capture.
bool ReturnsFit(const StatementEntry& point, const StatementEntry& transplant,
                const SyntaxTree& tree) {
  if (transplant.function_return == point.function_return) {
    return true;
  }
  auto ref = minilang::FindStatement(tree, transplant.id);
  return ref && !ContainsReturn(*ref->stmt);
}

bool ValidId(const ReactionIndex& index, StatementId id) {
  return id.valid() &&
         static_cast<std::size_t>(id.value) < index.entries().size() &&
         !index.at(id).in_test;
}

// Point variables a transplant variable may be renamed to.
std::vector<std::string> MappingTargets(const reactions::TypedName& var,
                                        const StatementEntry& point) {
  std::vector<std::string> targets;
  for (const reactions::TypedName& target : point.free) {
    if (target.type == var.type) {
      targets.push_back(target.name);
    }
  }
  return targets;
}

class Renamer {
 public:
  explicit Renamer(const std::map<std::string, std::string>& mapping)
      : mapping_(mapping) {}

  void Rename(Stmt& stmt) {
    scopes_.emplace_back();
    Visit(stmt);
  }

 private:
  const std::string* Target(const std::string& name) const {
    for (const auto& names : scopes_) {
      if (names.contains(name)) {
        return nullptr;
      }
    }
    auto it = mapping_.find(name);
    return it == mapping_.end() ? nullptr : &it->second;
  }

  void Visit(minilang::Expr& expr) {
    if (expr.kind == minilang::ExprKind::kVarRef) {
      if (const std::string* target = Target(expr.text)) {
        expr.text = *target;
      }
    }
    for (auto& operand : expr.operands) {
      Visit(operand);
    }
  }

  void VisitBlock(std::vector<Stmt>& block) {
    scopes_.emplace_back();
    for (Stmt& stmt : block) {
      Visit(stmt);
    }
    scopes_.pop_back();
  }

  void Visit(Stmt& stmt) {
    if (stmt.expr.has_value()) {
      Visit(*stmt.expr);
    }
    switch (stmt.kind) {
      case StmtKind::kLet:
        scopes_.back().insert(stmt.name);
        break;
      case StmtKind::kAssign:
        if (const std::string* target = Target(stmt.name)) {
          stmt.name = *target;
        }
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

  const std::map<std::string, std::string>& mapping_;
  std::vector<std::set<std::string>> scopes_;
};

}  // namespace

const std::vector<TransformationKind>& AllKinds() {
  static const std::vector<TransformationKind> kAll = [] {
    std::vector<TransformationKind> all;
    for (const KindInfo& info : kKinds) {
      all.push_back(info.kind);
    }
    return all;
  }();
  return kAll;
}

const char* KindName(TransformationKind kind) { return Info(kind).name; }

std::optional<TransformationKind> ParseKind(std::string_view name) {
  for (const KindInfo& info : kKinds) {
    if (name == info.name) {
      return info.kind;
    }
  }
  return std::nullopt;
}

bool IsAdd(TransformationKind kind) {
  return std::string_view(KindName(kind)).starts_with("add_");
}

bool IsReplace(TransformationKind kind) {
  return std::string_view(KindName(kind)).starts_with("replace_");
}

reactions::Strategy StrategyOf(TransformationKind kind) {
  return Info(kind).strategy;
}

nlohmann::json TransformationRecord::ToJson() const {
  nlohmann::json json = {{"kind", KindName(kind)},
                         {"point", point.value},
                         {"mapping", mapping},
                         {"rng_draws", rng_draws}};
  json["transplant"] =
      transplant.has_value() ? nlohmann::json(transplant->value) : nullptr;
  return json;
}

TransformationRecord TransformationRecord::FromJson(
    const nlohmann::json& json) {
  try {
    TransformationRecord record;
    auto kind = ParseKind(json.at("kind").get<std::string>());
    if (!kind.has_value()) {
      throw std::invalid_argument("unknown transformation kind");
    }
    record.kind = *kind;
    record.point = StatementId{json.at("point").get<std::int32_t>()};
    if (json.contains("transplant") && !json.at("transplant").is_null()) {
      record.transplant =
          StatementId{json.at("transplant").get<std::int32_t>()};
    }
    if (json.contains("mapping")) {
      record.mapping =
          json.at("mapping").get<std::map<std::string, std::string>>();
    }
    if (json.contains("rng_draws")) {
      record.rng_draws = json.at("rng_draws").get<std::vector<std::uint64_t>>();
    }
    return record;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed record: ") + e.what());
  }
}

std::vector<StatementId> EligiblePoints(const runtime::CoverageMap& coverage,
                                        const ReactionIndex& index) {
  std::vector<StatementId> points;
  for (StatementId id : index.application()) {
    if (coverage.Covers(id) && !index.CompatibleWith(id).empty()) {
      points.push_back(id);
    }
  }
  return points;
}

std::vector<StatementId> Candidates(TransformationKind kind, StatementId point,
                                    const SyntaxTree& tree,
                                    const ReactionIndex& index) {
  std::vector<StatementId> pool;
  switch (StrategyOf(kind)) {
    case Strategy::kDelete:
      return {};
    case Strategy::kRandom:
      for (StatementId id : index.application()) {
        if (id != point) {
          pool.push_back(id);
        }
      }
      break;
    case Strategy::kWittgenstein:
      pool = index.NameCompatibleWith(point);
      break;
    case Strategy::kReaction:
    case Strategy::kSteroid: {
      pool = index.CompatibleWith(point);
      const StatementEntry& target = index.at(point);
      std::erase_if(pool, [&](StatementId id) {
        return !ReturnsFit(target, index.at(id), tree);
      });
      break;
    }
  }
  if (IsReplace(kind)) {
    const StatementEntry& target = index.at(point);
    std::erase_if(pool, [&](StatementId id) {
      return !ReplaceAllowed(target, index.at(id), tree);
    });
  }
  return pool;
}

Selection SelectTransplant(TransformationKind kind, StatementId point,
                           const SyntaxTree& tree, const ReactionIndex& index,
                           Rng& rng) {
  TransformationRecord record;
  record.kind = kind;
  record.point = point;
  if (kind == TransformationKind::kDelete) {
    if (index.at(point).kind == StmtKind::kReturn) {
      return NoCandidate{kind, point};
    }
    return record;
  }
  std::vector<StatementId> pool = Candidates(kind, point, tree, index);
  if (pool.empty()) {
    return NoCandidate{kind, point};
  }
  std::uint64_t pick = rng.Below(pool.size());
  record.rng_draws.push_back(pick);
  record.transplant = pool[pick];
  if (StrategyOf(kind) == Strategy::kSteroid) {
    const StatementEntry& point_entry = index.at(point);
    for (const reactions::TypedName& var : index.at(pool[pick]).free) {
      std::vector<std::string> targets = MappingTargets(var, point_entry);
      std::uint64_t choice = rng.Below(targets.size());
      record.rng_draws.push_back(choice);
      record.mapping[var.name] = targets[choice];
    }
  }
  return record;
}

std::optional<std::string> CheckRecord(const SyntaxTree& tree,
                                       const ReactionIndex& index,
                                       const TransformationRecord& record) {
  if (!ValidId(index, record.point)) {
    return "transplantation point is not an application statement";
  }
  if (record.kind == TransformationKind::kDelete) {
    if (record.transplant.has_value() || !record.mapping.empty()) {
      return "delete takes no transplant";
    }
    if (index.at(record.point).kind == StmtKind::kReturn) {
      return "delete never removes a return";
    }
    return std::nullopt;
  }
  if (!record.transplant.has_value() || !ValidId(index, *record.transplant)) {
    return "transplant is not an application statement";
  }
  if (IsReplace(record.kind) && *record.transplant == record.point) {
    return "a statement cannot replace itself";
  }
  std::vector<StatementId> pool =
      Candidates(record.kind, record.point, tree, index);
  if (!std::binary_search(pool.begin(), pool.end(), *record.transplant)) {
    return std::string("transplant is not a ") + KindName(record.kind) +
           " candidate";
  }
  if (StrategyOf(record.kind) != Strategy::kSteroid) {
    if (!record.mapping.empty()) {
      return "only steroid transformations rename variables";
    }
    return std::nullopt;
  }
  const StatementEntry& transplant = index.at(*record.transplant);
  if (record.mapping.size() != transplant.free.size()) {
    return "mapping must cover every transplant variable";
  }
  for (const reactions::TypedName& var : transplant.free) {
    auto it = record.mapping.find(var.name);
    if (it == record.mapping.end()) {
      return "mapping misses '" + var.name + "'";
    }
    std::vector<std::string> targets =
        MappingTargets(var, index.at(record.point));
    if (std::find(targets.begin(), targets.end(), it->second) ==
        targets.end()) {
      return "'" + it->second + "' is not a same-typed point variable";
    }
  }
  return std::nullopt;
}

minilang::Stmt RenameVariables(
    const minilang::Stmt& stmt,
    const std::map<std::string, std::string>& mapping) {
  Stmt copy = stmt;
  Renamer(mapping).Rename(copy);
  return copy;
}

SyntaxTree Apply(const SyntaxTree& tree, const ReactionIndex& index,
                 const TransformationRecord& record) {
  if (auto problem = CheckRecord(tree, index, record)) {
    throw InvalidRecord(*problem);
  }
  SyntaxTree result = tree;
  auto target = minilang::FindStatement(result, record.point);
  if (!target.has_value()) {
    throw InvalidRecord("transplantation point not found");
  }
  std::vector<Stmt>& block = *target->container;
  if (record.kind == TransformationKind::kDelete) {
    block.erase(block.begin() + static_cast<std::ptrdiff_t>(target->index));
  } else {
    auto source = minilang::FindStatement(tree, *record.transplant);
    Stmt copy = RenameVariables(*source->stmt, record.mapping);
    if (IsReplace(record.kind)) {
      // A replacement declaration keeps the replacee's name so later uses
      // still resolve.
      if (target->stmt->kind == StmtKind::kLet) {
        copy.name = target->stmt->name;
      }
      block[target->index] = std::move(copy);
    } else {
      block.insert(
          block.begin() + static_cast<std::ptrdiff_t>(target->index + 1),
          std::move(copy));
    }
  }
  minilang::AssignStatementIds(result);
  return result;
}

}  // namespace sosieforge::transforms
