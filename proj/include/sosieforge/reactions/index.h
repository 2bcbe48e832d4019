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

#ifndef SOSIEFORGE_REACTIONS_INDEX_H_
#define SOSIEFORGE_REACTIONS_INDEX_H_

#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "sosieforge/reactions/reaction.h"

namespace sosieforge::reactions {

struct StatementEntry {
  StatementId id;
  StmtKind kind = StmtKind::kExpr;
  std::string function;
  bool in_test = false;
  // The enclosing function's return type.
  StaticType function_return;
  Reaction reaction;
  std::vector<TypedName> free;
  std::set<std::string> names;
};

class ReactionIndex {
 public:
  static ReactionIndex Build(const SyntaxTree& tree);

  // Indexed by StatementId value.
  const std::vector<StatementEntry>& entries() const { return entries_; }
  const StatementEntry& at(StatementId id) const {
    return entries_.at(static_cast<std::size_t>(id.value));
  }
  // Statements outside test functions, the transplant universe.
  const std::vector<StatementId>& application() const { return application_; }
  const std::map<Reaction, std::vector<StatementId>>& shapes() const {
    return shapes_;
  }

  // Application statements other than `point` whose reaction fits it.
  std::vector<StatementId> CompatibleWith(StatementId point) const;
  // Application statements other than `point` using only names it uses.
  std::vector<StatementId> NameCompatibleWith(StatementId point) const;

 private:
  std::vector<StatementEntry> entries_;
  std::vector<StatementId> application_;
  std::map<Reaction, std::vector<StatementId>> shapes_;
};

// Ways to rename the transplant's free variables onto same-typed free
// variables of the point. Saturates at UINT64_MAX.
std::uint64_t CountMappings(const StatementEntry& transplant,
                            const StatementEntry& point);

enum class Strategy { kDelete, kRandom, kWittgenstein, kReaction, kSteroid };

// Size of the search space over `points`. Saturates at UINT64_MAX.
std::uint64_t CountCandidates(Strategy strategy,
                              const std::vector<StatementId>& points,
                              const ReactionIndex& index);

// One JSON object per line with stmt_id, function, kind, input and output.
void DumpIndex(const ReactionIndex& index, std::ostream& out);

}  // namespace sosieforge::reactions

#endif  // SOSIEFORGE_REACTIONS_INDEX_H_
