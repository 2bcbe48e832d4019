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

#include "sosieforge/reactions/index.h"

#include <algorithm>
#include <limits>

#include "json.hpp"
#include "sosieforge/minilang/statements.h"

namespace sosieforge::reactions {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t SaturatingMul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) {
    return kSaturated;
  }
  return a * b;
}

std::uint64_t SaturatingAdd(std::uint64_t a, std::uint64_t b) {
  return b > kSaturated - a ? kSaturated : a + b;
}

}  // namespace

ReactionIndex ReactionIndex::Build(const SyntaxTree& tree) {
  ReactionIndex index;
  index.entries_.resize(minilang::EnumerateStatements(tree).size());
  minilang::ForEachStatementInScope(
      tree, [&](const Stmt& stmt, const Function& function,
                const VisibleVariables& scope) {
        StatementEntry& entry =
            index.entries_.at(static_cast<std::size_t>(stmt.id.value));
        entry.id = stmt.id;
        entry.kind = stmt.kind;
        entry.function = function.name;
        entry.in_test = function.IsTest();
        entry.function_return = function.return_type;
        entry.reaction = ExtractReaction(stmt, function, scope);
        entry.free = FreeVariables(stmt, scope);
        entry.names = StatementNames(stmt, scope);
      });
  for (const StatementEntry& entry : index.entries_) {
    if (!entry.in_test) {
      index.application_.push_back(entry.id);
      index.shapes_[entry.reaction].push_back(entry.id);
    }
  }
  return index;
}

std::vector<StatementId> ReactionIndex::CompatibleWith(StatementId point) const {
  const Reaction& context = at(point).reaction;
  std::vector<StatementId> result;
  for (const auto& [shape, ids] : shapes_) {
    if (!Compatible(shape, context)) {
      continue;
    }
    for (StatementId id : ids) {
      if (id != point) {
        result.push_back(id);
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<StatementId> ReactionIndex::NameCompatibleWith(
    StatementId point) const {
  const std::set<std::string>& names = at(point).names;
  std::vector<StatementId> result;
  for (StatementId id : application_) {
    if (id == point) {
      continue;
    }
    bool subset = std::all_of(
        at(id).free.begin(), at(id).free.end(),
        [&](const TypedName& var) { return names.contains(var.name); });
    if (subset) {
      result.push_back(id);
    }
  }
  return result;
}

std::uint64_t CountMappings(const StatementEntry& transplant,
                            const StatementEntry& point) {
  std::uint64_t total = 1;
  for (const TypedName& var : transplant.free) {
    auto choices = std::count_if(
        point.free.begin(), point.free.end(),
        [&](const TypedName& target) { return target.type == var.type; });
    total = SaturatingMul(total, static_cast<std::uint64_t>(choices));
  }
  return total;
}

std::uint64_t CountCandidates(Strategy strategy,
                              const std::vector<StatementId>& points,
                              const ReactionIndex& index) {
  std::uint64_t total = 0;
  switch (strategy) {
    case Strategy::kDelete:
      return points.size();
    case Strategy::kRandom:
      return SaturatingMul(points.size(), index.application().size());
    case Strategy::kWittgenstein:
      for (StatementId point : points) {
        total = SaturatingAdd(total, index.NameCompatibleWith(point).size());
      }
      return total;
    case Strategy::kReaction:
      for (StatementId point : points) {
        total = SaturatingAdd(total, index.CompatibleWith(point).size());
      }
      return total;
    case Strategy::kSteroid:
      for (StatementId point : points) {
        for (StatementId transplant : index.CompatibleWith(point)) {
          total = SaturatingAdd(
              total, CountMappings(index.at(transplant), index.at(point)));
        }
      }
      return total;
  }
  return total;
}

void DumpIndex(const ReactionIndex& index, std::ostream& out) {
  for (const StatementEntry& entry : index.entries()) {
    nlohmann::json input = nlohmann::json::array();
    for (const StaticType& type : entry.reaction.input) {
      input.push_back(type.ToString());
    }
    nlohmann::json line = {{"stmt_id", entry.id.value},
                           {"function", entry.function},
                           {"kind", minilang::StmtKindName(entry.kind)},
                           {"input", input},
                           {"output", entry.reaction.output.ToString()}};
    out << line.dump() << '\n';
  }
}

}  // namespace sosieforge::reactions
