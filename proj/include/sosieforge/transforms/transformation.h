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

#ifndef SOSIEFORGE_TRANSFORMS_TRANSFORMATION_H_
#define SOSIEFORGE_TRANSFORMS_TRANSFORMATION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "json.hpp"
#include "sosieforge/minilang/ast.h"
#include "sosieforge/reactions/index.h"
#include "sosieforge/runtime/interpreter.h"
#include "sosieforge/transforms/rng.h"

namespace sosieforge::transforms {

using minilang::StatementId;
using minilang::SyntaxTree;
using reactions::ReactionIndex;

enum class TransformationKind {
  kDelete,
  kAddRandom,
  kReplaceRandom,
  kAddWittgenstein,
  kReplaceWittgenstein,
  kAddReaction,
  kReplaceReaction,
  kAddSteroid,
  kReplaceSteroid,
};

const std::vector<TransformationKind>& AllKinds();
// e.g. "add_steroid".
const char* KindName(TransformationKind kind);
std::optional<TransformationKind> ParseKind(std::string_view name);

bool IsAdd(TransformationKind kind);
bool IsReplace(TransformationKind kind);
reactions::Strategy StrategyOf(TransformationKind kind);

struct TransformationRecord {
  TransformationKind kind = TransformationKind::kDelete;
  // Add inserts after this statement; replace and delete remove it.
  StatementId point;
  std::optional<StatementId> transplant;
  // Transplant variable name to point variable name; Steroid only.
  std::map<std::string, std::string> mapping;
  std::vector<std::uint64_t> rng_draws;

  // Identity for duplicate suppression; ignores the draws.
  auto Key() const {
    return std::make_tuple(kind, point, transplant, mapping);
  }

  nlohmann::json ToJson() const;
  // Throws std::invalid_argument on malformed input.
  static TransformationRecord FromJson(const nlohmann::json& json);
};

struct NoCandidate {
  TransformationKind kind;
  StatementId point;
};

using Selection = std::variant<TransformationRecord, NoCandidate>;

// Covered application statements with at least one reaction-compatible
// transplant elsewhere in the program, in id order.
std::vector<StatementId> EligiblePoints(const runtime::CoverageMap& coverage,
                                        const ReactionIndex& index);

// Statements the strategy of `kind` may transplant at `point`, in id order.
// Empty for delete. Reaction and Steroid also drop transplants holding a
// return that would not type check in the point's function.
std::vector<StatementId> Candidates(TransformationKind kind, StatementId point,
                                    const SyntaxTree& tree,
                                    const ReactionIndex& index);

Selection SelectTransplant(TransformationKind kind, StatementId point,
                           const SyntaxTree& tree, const ReactionIndex& index,
                           Rng& rng);

// Describes the first broken precondition, if any.
std::optional<std::string> CheckRecord(const SyntaxTree& tree,
                                       const ReactionIndex& index,
                                       const TransformationRecord& record);

class InvalidRecord : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Returns the transformed copy with fresh statement ids. Throws InvalidRecord
// when CheckRecord fails.
SyntaxTree Apply(const SyntaxTree& tree, const ReactionIndex& index,
                 const TransformationRecord& record);

// Renames free occurrences of the mapped variables in a copy of `stmt`.
minilang::Stmt RenameVariables(
    const minilang::Stmt& stmt,
    const std::map<std::string, std::string>& mapping);

}  // namespace sosieforge::transforms

#endif  // SOSIEFORGE_TRANSFORMS_TRANSFORMATION_H_
