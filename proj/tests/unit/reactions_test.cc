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

#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "sosieforge/minilang/parser.h"
#include "sosieforge/minilang/printer.h"
#include "sosieforge/minilang/statements.h"
#include "sosieforge/reactions/index.h"
#include "sosieforge/reactions/reaction.h"
#include "test_util.h"

namespace sosieforge::reactions {
namespace {

using testing::CorpusPrograms;
using testing::LoadBundled;
using testing::ParseOrDie;

// Reaction of the first statement of function `fn`.
Reaction FirstReaction(const SyntaxTree& tree, const std::string& fn) {
  Reaction found;
  bool seen = false;
  minilang::ForEachStatementInScope(
      tree, [&](const Stmt& stmt, const Function& function,
                const VisibleVariables& scope) {
        if (!seen && function.name == fn) {
          seen = true;
          found = ExtractReaction(stmt, function, scope);
        }
      });
  EXPECT_TRUE(seen);
  return found;
}

TEST(ExtractReactionTest, AssignmentOfCall) {
  SyntaxTree tree = ParseOrDie(
      "fn bar(a: str, n: int) -> bool { return n > len(a); }\n"
      "fn f(varA: str, i: int, flag: bool) {\n"
      "  flag = bar(varA, 10 + i);\n"
      "}");
  Reaction reaction = FirstReaction(tree, "f");
  EXPECT_EQ((std::vector<StaticType>{StaticType::Int(), StaticType::Bool(),
                                     StaticType::Str()}),
            reaction.input);
  EXPECT_TRUE(reaction.output.IsVoid());
}

TEST(ExtractReactionTest, ReturnOfExpression) {
  SyntaxTree tree = ParseOrDie("fn f(x: int) -> int { return x + 1; }");
  Reaction reaction = FirstReaction(tree, "f");
  EXPECT_EQ(std::vector<StaticType>{StaticType::Int()}, reaction.input);
  EXPECT_EQ(StaticType::Int(), reaction.output);
  EXPECT_EQ("(int) -> int", reaction.ToString());
}

TEST(ExtractReactionTest, MultiplicityCountsDistinctNames) {
  SyntaxTree tree = ParseOrDie(
      "fn f(a: int, b: int) { let c: int = a + a * b; }");
  Reaction reaction = FirstReaction(tree, "f");
  EXPECT_EQ((std::vector<StaticType>{StaticType::Int(), StaticType::Int()}),
            reaction.input);
}

TEST(ExtractReactionTest, InnerDeclarationsAreNotFree) {
  SyntaxTree tree = ParseOrDie(
      "fn f(xs: [int]) -> int {\n"
      "  while len(xs) > 0 { let y: int = get(xs, 0); xs = [y]; return y; }\n"
      "  return 0;\n"
      "}");
  Reaction reaction = FirstReaction(tree, "f");
  EXPECT_EQ(std::vector<StaticType>{StaticType::ListOf(StaticType::Int())},
            reaction.input);
  // A loop may run zero times.
  EXPECT_TRUE(reaction.output.IsVoid());
}

TEST(ExtractReactionTest, OutputNeedsReturnOnEveryPath) {
  SyntaxTree both = ParseOrDie(
      "fn f(c: bool) -> int { if c { return 1; } else { return 2; } }");
  EXPECT_EQ(StaticType::Int(), FirstReaction(both, "f").output);
  SyntaxTree one = ParseOrDie(
      "fn f(c: bool) -> int { if c { return 1; } return 2; }");
  EXPECT_TRUE(FirstReaction(one, "f").output.IsVoid());
}

TEST(CompatibleTest, Examples) {
  Reaction transplant{{StaticType::Int()}, StaticType::Void()};
  Reaction point{{StaticType::Int(), StaticType::Int(), StaticType::Bool()},
                 StaticType::Void()};
  std::sort(point.input.begin(), point.input.end());
  EXPECT_TRUE(Compatible(transplant, point));
  EXPECT_FALSE(Compatible({{StaticType::Str()}, StaticType::Void()},
                          {{StaticType::Int()}, StaticType::Void()}));
  EXPECT_FALSE(Compatible({{}, StaticType::Int()}, {{}, StaticType::Void()}));
  // Multiset, not set, containment.
  EXPECT_FALSE(Compatible({{StaticType::Int(), StaticType::Int()},
                           StaticType::Void()},
                          {{StaticType::Int()}, StaticType::Void()}));
}

// Independent free-variable oracle: scans the printed statement for
// identifiers naming a variable already visible before the statement. With
// no shadowing such an identifier can only be a free use.
std::map<std::string, StaticType> ScanFreeVariables(
    const Stmt& stmt, const VisibleVariables& scope) {
  std::string text = minilang::PrettyPrint(stmt);
  std::map<std::string, StaticType> found;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '"') {
      for (++i; i < text.size() && text[i] != '"'; ++i) {
        if (text[i] == '\\') {
          ++i;
        }
      }
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) ||
              text[i] == '_')) {
        ++i;
      }
      std::string word = text.substr(start, i - start);
      bool call = i < text.size() && text[i] == '(';
      if (!call) {
        for (const auto& [name, type] : scope) {
          if (name == word) {
            found.emplace(name, type);
          }
        }
      }
      continue;
    }
    ++i;
  }
  return found;
}

class CorpusReactionTest : public ::testing::TestWithParam<std::string> {};

TEST_P(CorpusReactionTest, AgreesWithTextualScanner) {
  minilang::Corpus corpus = LoadBundled(GetParam());
  std::size_t checked = 0;
  minilang::ForEachStatementInScope(
      corpus.tree, [&](const Stmt& stmt, const Function& function,
                       const VisibleVariables& scope) {
        std::map<std::string, StaticType> expected =
            ScanFreeVariables(stmt, scope);
        std::vector<TypedName> free = FreeVariables(stmt, scope);
        std::map<std::string, StaticType> actual;
        for (const TypedName& var : free) {
          actual.emplace(var.name, var.type);
        }
        EXPECT_EQ(expected.size(), free.size());
        EXPECT_EQ(expected, actual) << minilang::PrettyPrint(stmt);
        Reaction reaction = ExtractReaction(stmt, function, scope);
        std::multiset<StaticType> types;
        for (const auto& [name, type] : expected) {
          types.insert(type);
        }
        EXPECT_EQ(std::vector<StaticType>(types.begin(), types.end()),
                  reaction.input);
        ++checked;
      });
  EXPECT_GT(checked, 50u);
}

TEST_P(CorpusReactionTest, InvariantUnderRoundTrip) {
  minilang::Corpus corpus = LoadBundled(GetParam());
  SyntaxTree reparsed = ParseOrDie(minilang::PrettyPrint(corpus.tree));
  ReactionIndex a = ReactionIndex::Build(corpus.tree);
  ReactionIndex b = ReactionIndex::Build(reparsed);
  ASSERT_EQ(a.entries().size(), b.entries().size());
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    EXPECT_EQ(a.entries()[i].reaction, b.entries()[i].reaction);
  }
}

TEST_P(CorpusReactionTest, IndexIsTotal) {
  minilang::Corpus corpus = LoadBundled(GetParam());
  ReactionIndex index = ReactionIndex::Build(corpus.tree);
  auto statements = minilang::EnumerateStatements(corpus.tree);
  ASSERT_EQ(statements.size(), index.entries().size());
  std::size_t application = 0;
  for (const auto& info : statements) {
    EXPECT_EQ(info.id, index.at(info.id).id);
    application += info.function.starts_with("test_") ? 0 : 1;
  }
  EXPECT_EQ(application, index.application().size());
  std::size_t shaped = 0;
  for (const auto& [shape, ids] : index.shapes()) {
    for (StatementId id : ids) {
      EXPECT_EQ(shape, index.at(id).reaction);
    }
    shaped += ids.size();
  }
  EXPECT_EQ(application, shaped);
}

TEST_P(CorpusReactionTest, CandidateSetsNest) {
  minilang::Corpus corpus = LoadBundled(GetParam());
  ReactionIndex index = ReactionIndex::Build(corpus.tree);
  std::set<StatementId> universe(index.application().begin(),
                                 index.application().end());
  for (StatementId point : index.application()) {
    for (StatementId id : index.CompatibleWith(point)) {
      EXPECT_TRUE(universe.contains(id));
      EXPECT_NE(point, id);
    }
    for (StatementId id : index.NameCompatibleWith(point)) {
      EXPECT_TRUE(universe.contains(id));
      EXPECT_NE(point, id);
    }
  }
  EXPECT_GE(CountCandidates(Strategy::kSteroid, index.application(), index),
            CountCandidates(Strategy::kReaction, index.application(), index));
}

INSTANTIATE_TEST_SUITE_P(Programs, CorpusReactionTest,
                         ::testing::ValuesIn(CorpusPrograms()));

// Brute-force multiset inclusion by per-type counting.
bool OracleCompatible(const Reaction& transplant, const Reaction& point) {
  if (!(transplant.output == point.output)) {
    return false;
  }
  for (const StaticType& type : transplant.input) {
    auto need = std::count(transplant.input.begin(), transplant.input.end(),
                           type);
    auto have = std::count(point.input.begin(), point.input.end(), type);
    if (need > have) {
      return false;
    }
  }
  return true;
}

TEST(CompatibleTest, PairwiseOnSmallestProgram) {
  minilang::Corpus corpus = LoadBundled("demo");
  ReactionIndex index = ReactionIndex::Build(corpus.tree);
  std::size_t compatible_pairs = 0;
  for (const StatementEntry& a : index.entries()) {
    for (const StatementEntry& b : index.entries()) {
      bool expected = OracleCompatible(a.reaction, b.reaction);
      EXPECT_EQ(expected, Compatible(a.reaction, b.reaction))
          << a.reaction.ToString() << " vs " << b.reaction.ToString();
      compatible_pairs += expected ? 1 : 0;
    }
  }
  EXPECT_GT(compatible_pairs, index.entries().size());
}

TEST(CompatibleTest, IndexQueryMatchesFilter) {
  minilang::Corpus corpus = LoadBundled("demo");
  ReactionIndex index = ReactionIndex::Build(corpus.tree);
  for (StatementId point : index.application()) {
    std::vector<StatementId> expected;
    for (StatementId id : index.application()) {
      if (id != point && OracleCompatible(index.at(id).reaction,
                                          index.at(point).reaction)) {
        expected.push_back(id);
      }
    }
    EXPECT_EQ(expected, index.CompatibleWith(point));
  }
}

// Enumerates every total function from transplant variables to point
// variables and keeps the type-preserving ones.
std::uint64_t EnumerateMappings(const StatementEntry& transplant,
                                const StatementEntry& point) {
  std::uint64_t count = 0;
  std::vector<std::size_t> choice(transplant.free.size(), 0);
  std::function<void(std::size_t)> walk = [&](std::size_t k) {
    if (k == choice.size()) {
      bool valid = true;
      for (std::size_t v = 0; v < choice.size(); ++v) {
        valid = valid && point.free[choice[v]].type == transplant.free[v].type;
      }
      count += valid ? 1 : 0;
      return;
    }
    for (std::size_t target = 0; target < point.free.size(); ++target) {
      choice[k] = target;
      walk(k + 1);
    }
  };
  walk(0);
  return count;
}

TEST(CountCandidatesTest, MappingCountExample) {
  StatementEntry transplant;
  transplant.free = {{"a", StaticType::Int()}, {"b", StaticType::Int()}};
  StatementEntry point;
  point.free = {{"x", StaticType::Int()},
                {"y", StaticType::Int()},
                {"s", StaticType::Str()},
                {"z", StaticType::Int()}};
  EXPECT_EQ(9u, EnumerateMappings(transplant, point));
  EXPECT_EQ(9u, CountMappings(transplant, point));
}

TEST(CountCandidatesTest, MappingCountsMatchEnumerationOnCorpus) {
  minilang::Corpus corpus = LoadBundled("demo");
  ReactionIndex index = ReactionIndex::Build(corpus.tree);
  std::uint64_t steroid = 0;
  for (StatementId point : index.application()) {
    for (StatementId transplant : index.CompatibleWith(point)) {
      std::uint64_t expected =
          EnumerateMappings(index.at(transplant), index.at(point));
      EXPECT_GE(expected, 1u);
      EXPECT_EQ(expected,
                CountMappings(index.at(transplant), index.at(point)));
      steroid += expected;
    }
  }
  EXPECT_EQ(steroid,
            CountCandidates(Strategy::kSteroid, index.application(), index));
}

TEST(CountCandidatesTest, FootnoteFormulas) {
  std::string source = "fn f(a: int) -> int {\n";
  for (int i = 0; i < 9; ++i) {
    source += "  a = a + " + std::to_string(i) + ";\n";
  }
  source += "  return a;\n}\n";
  SyntaxTree tree = ParseOrDie(source);
  ReactionIndex index = ReactionIndex::Build(tree);
  ASSERT_EQ(10u, index.application().size());
  std::vector<StatementId> three = {StatementId{0}, StatementId{1},
                                    StatementId{2}};
  EXPECT_EQ(30u, CountCandidates(Strategy::kRandom, three, index));
  std::vector<StatementId> five = {StatementId{0}, StatementId{1},
                                   StatementId{2}, StatementId{3},
                                   StatementId{4}};
  EXPECT_EQ(5u, CountCandidates(Strategy::kDelete, five, index));
  // Each assignment fits the eight other assignments, never the return.
  EXPECT_EQ(24u, CountCandidates(Strategy::kReaction, three, index));
  EXPECT_EQ(24u, CountCandidates(Strategy::kSteroid, three, index));
  // The return uses only `a`, so it is name-compatible too.
  EXPECT_EQ(27u, CountCandidates(Strategy::kWittgenstein, three, index));
}

TEST(DumpIndexTest, OneObjectPerStatement) {
  SyntaxTree tree =
      ParseOrDie("fn f(x: int) -> int { let y: int = x; return y; }");
  std::ostringstream out;
  DumpIndex(ReactionIndex::Build(tree), out);
  EXPECT_EQ(
      "{\"function\":\"f\",\"input\":[\"int\"],\"kind\":\"let\","
      "\"output\":\"void\",\"stmt_id\":0}\n"
      "{\"function\":\"f\",\"input\":[\"int\"],\"kind\":\"return\","
      "\"output\":\"int\",\"stmt_id\":1}\n",
      out.str());
}

}  // namespace
}  // namespace sosieforge::reactions
