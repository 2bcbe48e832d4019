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

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "gtest/gtest.h"
#include "sosieforge/minilang/printer.h"
#include "sosieforge/minilang/statements.h"
#include "sosieforge/minilang/type_checker.h"
#include "sosieforge/transforms/rng.h"
#include "sosieforge/transforms/transformation.h"
#include "test_util.h"

namespace sosieforge::transforms {
namespace {

using minilang::Stmt;
using minilang::StmtKind;
using testing::CorpusPrograms;
using testing::LoadBundled;
using testing::ParseOrDie;

const TransformationRecord* AsRecord(const Selection& selection) {
  return std::get_if<TransformationRecord>(&selection);
}

StatementId IdOf(const SyntaxTree& tree, const std::string& text) {
  for (const auto& info : minilang::EnumerateStatements(tree)) {
    auto ref = minilang::FindStatement(tree, info.id);
    if (minilang::PrettyPrint(*ref->stmt).starts_with(text)) {
      return info.id;
    }
  }
  ADD_FAILURE() << "no statement " << text;
  return {};
}

TEST(RngTest, MatchesStandardEngineSequence) {
  // The standard fixes the 10000th output of a default-seeded mt19937_64.
  Rng rng(5489);
  for (int i = 0; i < 9999; ++i) {
    rng.Next();
  }
  EXPECT_EQ(9981545732273789042ULL, rng.Next());
}

TEST(RngTest, BelowStaysInRangeAndHitsEveryValue) {
  Rng rng(7);
  std::vector<int> seen(5, 0);
  for (int i = 0; i < 1000; ++i) {
    std::uint64_t x = rng.Below(5);
    ASSERT_LT(x, 5u);
    ++seen[x];
  }
  for (int count : seen) {
    EXPECT_GT(count, 150);
  }
  EXPECT_EQ(0u, rng.Below(1));
}

TEST(KindTest, NineKindsRoundTrip) {
  ASSERT_EQ(9u, AllKinds().size());
  int adds = 0;
  int replaces = 0;
  for (TransformationKind kind : AllKinds()) {
    EXPECT_EQ(kind, ParseKind(KindName(kind)));
    adds += IsAdd(kind) ? 1 : 0;
    replaces += IsReplace(kind) ? 1 : 0;
  }
  EXPECT_EQ(4, adds);
  EXPECT_EQ(4, replaces);
  EXPECT_FALSE(ParseKind("add").has_value());
}

TEST(RecordTest, JsonRoundTrip) {
  TransformationRecord record;
  record.kind = TransformationKind::kReplaceSteroid;
  record.point = StatementId{4};
  record.transplant = StatementId{9};
  record.mapping = {{"a", "x"}, {"b", "x"}};
  record.rng_draws = {3, 0, 0};
  TransformationRecord back = TransformationRecord::FromJson(record.ToJson());
  EXPECT_EQ(record.Key(), back.Key());
  EXPECT_EQ(record.rng_draws, back.rng_draws);
  EXPECT_THROW(TransformationRecord::FromJson(nlohmann::json{{"kind", 3}}),
               std::invalid_argument);
}

constexpr char kSmall[] = R"(
fn g(x: int, y: int) -> int {
  let s: int = x + y;
  if s > 10 {
    s = 10;
  }
  let t: str = to_str(s);
  print(t);
  return s;
}

fn h(n: int) -> int {
  let a: int = n * 2;
  return a;
}

fn dead(flag: bool) -> bool {
  return flag;
}

fn test_g() {
  assert(g(2, 3) == 5);
  assert(g(8, 3) == 10);
  assert(h(1) == 2);
}
)";

TEST(EligiblePointsTest, UncoveredAndUnmatchedStatementsExcluded) {
  SyntaxTree tree = ParseOrDie(kSmall);
  ReactionIndex index = ReactionIndex::Build(tree);
  runtime::CoverageMap coverage = runtime::CoverageOfSuite(tree);
  std::vector<StatementId> points = EligiblePoints(coverage, index);
  std::set<StatementId> set(points.begin(), points.end());
  // Never executed.
  EXPECT_FALSE(set.contains(IdOf(tree, "return flag;")));
  EXPECT_TRUE(set.contains(IdOf(tree, "s = 10;")));
  EXPECT_TRUE(set.contains(IdOf(tree, "return s;")));
  // No other statement reads only a str.
  EXPECT_FALSE(set.contains(IdOf(tree, "print(t);")));
  for (StatementId id : points) {
    EXPECT_FALSE(index.at(id).in_test);
  }
}

bool MultisetContains(const std::vector<minilang::StaticType>& big,
                      const std::vector<minilang::StaticType>& small) {
  std::map<std::string, int> counts;
  for (const auto& type : big) {
    ++counts[type.ToString()];
  }
  for (const auto& type : small) {
    if (--counts[type.ToString()] < 0) {
      return false;
    }
  }
  return true;
}

TEST(EligiblePointsTest, MatchesBruteForceOnSmallestProgram) {
  minilang::Corpus corpus = LoadBundled("demo");
  ReactionIndex index = ReactionIndex::Build(corpus.tree);
  runtime::CoverageMap coverage = runtime::CoverageOfSuite(corpus.tree);
  std::vector<StatementId> expected;
  for (const auto& info : minilang::EnumerateStatements(corpus.tree)) {
    if (info.function.starts_with("test_") || !coverage.Covers(info.id)) {
      continue;
    }
    const auto& point = index.at(info.id).reaction;
    bool any = false;
    for (const auto& other : minilang::EnumerateStatements(corpus.tree)) {
      const auto& candidate = index.at(other.id).reaction;
      any = any || (other.id != info.id &&
                    !other.function.starts_with("test_") &&
                    candidate.output == point.output &&
                    MultisetContains(point.input, candidate.input));
    }
    if (any) {
      expected.push_back(info.id);
    }
  }
  EXPECT_EQ(expected, EligiblePoints(coverage, index));
  EXPECT_FALSE(expected.empty());
}

TEST(SelectTransplantTest, DeleteNeverTargetsReturn) {
  SyntaxTree tree = ParseOrDie(kSmall);
  ReactionIndex index = ReactionIndex::Build(tree);
  Rng rng(1);
  EXPECT_TRUE(std::holds_alternative<NoCandidate>(
      SelectTransplant(TransformationKind::kDelete, IdOf(tree, "return s;"),
                       tree, index, rng)));
  EXPECT_NE(nullptr,
            AsRecord(SelectTransplant(TransformationKind::kDelete,
                                      IdOf(tree, "s = 10;"), tree, index, rng)));
}

TEST(SelectTransplantTest, ReplaceRandomNeverPicksThePoint) {
  SyntaxTree tree = ParseOrDie(kSmall);
  ReactionIndex index = ReactionIndex::Build(tree);
  StatementId point = IdOf(tree, "s = 10;");
  std::set<StatementId> drawn;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const TransformationRecord* record = AsRecord(SelectTransplant(
        TransformationKind::kReplaceRandom, point, tree, index, rng));
    ASSERT_NE(nullptr, record);
    EXPECT_NE(point, *record->transplant);
    drawn.insert(*record->transplant);
  }
  // Every other non-test statement is reachable by some seed.
  EXPECT_EQ(index.application().size() - 1, drawn.size());
}

TEST(SelectTransplantTest, ReturnReplacedOnlyBySameTypedReturn) {
  SyntaxTree tree = ParseOrDie(kSmall);
  ReactionIndex index = ReactionIndex::Build(tree);
  StatementId point = IdOf(tree, "return s;");
  for (TransformationKind kind :
       {TransformationKind::kReplaceRandom,
        TransformationKind::kReplaceWittgenstein,
        TransformationKind::kReplaceReaction,
        TransformationKind::kReplaceSteroid}) {
    for (StatementId id : Candidates(kind, point, tree, index)) {
      EXPECT_EQ(StmtKind::kReturn, index.at(id).kind);
      EXPECT_EQ(minilang::StaticType::Int(), index.at(id).function_return);
    }
  }
  EXPECT_EQ(std::vector<StatementId>{IdOf(tree, "return a;")},
            Candidates(TransformationKind::kReplaceRandom, point, tree, index));
}

TEST(SelectTransplantTest, NestedReturnsStayInSameTypedFunctions) {
  SyntaxTree tree = ParseOrDie(
      "fn f(x: int) -> int { if x < 0 { return 0; } return x; }\n"
      "fn g(y: int) -> str { y = y + 1; return to_str(y); }\n"
      "fn h(z: int) -> int { z = z - 1; return z; }");
  ReactionIndex index = ReactionIndex::Build(tree);
  StatementId guard = IdOf(tree, "if x < 0");
  // Both points have a Void output and one int input, like the guard.
  ASSERT_TRUE(reactions::Compatible(index.at(guard).reaction,
                         index.at(IdOf(tree, "y = y + 1")).reaction));
  for (TransformationKind kind :
       {TransformationKind::kAddReaction, TransformationKind::kAddSteroid,
        TransformationKind::kReplaceReaction,
        TransformationKind::kReplaceSteroid}) {
    auto in_g = Candidates(kind, IdOf(tree, "y = y + 1"), tree, index);
    EXPECT_EQ(in_g.end(), std::find(in_g.begin(), in_g.end(), guard))
        << KindName(kind);
    auto in_h = Candidates(kind, IdOf(tree, "z = z - 1"), tree, index);
    EXPECT_NE(in_h.end(), std::find(in_h.begin(), in_h.end(), guard))
        << KindName(kind);
  }
  auto random = Candidates(TransformationKind::kAddRandom,
                           IdOf(tree, "y = y + 1"), tree, index);
  EXPECT_NE(random.end(), std::find(random.begin(), random.end(), guard));
}

TEST(SelectTransplantTest, SteroidMappingDrawnFromSameTypedVariables) {
  SyntaxTree tree = ParseOrDie(
      "fn f(x: int, y: int, s: str) -> int {\n"
      "  x = y + len(s);\n"
      "  return x;\n"
      "}\n"
      "fn g(a: int) {\n"
      "  a = a + 1;\n"
      "}");
  ReactionIndex index = ReactionIndex::Build(tree);
  StatementId point = IdOf(tree, "x = y");
  StatementId transplant = IdOf(tree, "a = a + 1;");
  std::set<std::string> targets;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    Rng rng(seed);
    const TransformationRecord* record = AsRecord(SelectTransplant(
        TransformationKind::kAddSteroid, point, tree, index, rng));
    ASSERT_NE(nullptr, record);
    if (record->transplant != transplant) {
      continue;
    }
    ASSERT_EQ(1u, record->mapping.size());
    targets.insert(record->mapping.at("a"));
  }
  EXPECT_EQ((std::set<std::string>{"x", "y"}), targets);
  // Both renamings produce a well-typed variant.
  for (const std::string& target : {"x", "y"}) {
    TransformationRecord record{TransformationKind::kAddSteroid, point,
                                transplant, {{"a", target}}, {}};
    SyntaxTree variant = Apply(tree, index, record);
    EXPECT_TRUE(minilang::TypeCheck(variant).empty());
    EXPECT_NE(std::string::npos,
              minilang::PrettyPrint(variant).find(target + " = " + target +
                                                  " + 1;"));
  }
}

TEST(ApplyTest, DeleteOnlyStatementLeavesEmptyBlock) {
  SyntaxTree tree = ParseOrDie(
      "fn f(x: int) -> int { if x > 0 { x = 0; } return x; }");
  ReactionIndex index = ReactionIndex::Build(tree);
  TransformationRecord record{TransformationKind::kDelete,
                              IdOf(tree, "x = 0;"), std::nullopt, {}, {}};
  SyntaxTree variant = Apply(tree, index, record);
  EXPECT_EQ("fn f(x: int) -> int {\n  if x > 0 {\n  }\n  return x;\n}\n",
            minilang::PrettyPrint(variant));
}

TEST(ApplyTest, ReplaceByTextuallyIdenticalStatementAllowed) {
  SyntaxTree tree = ParseOrDie(
      "fn f(x: int) { x = x + 1; x = x + 1; }");
  ReactionIndex index = ReactionIndex::Build(tree);
  TransformationRecord record{TransformationKind::kReplaceReaction,
                              StatementId{0}, StatementId{1}, {}, {}};
  EXPECT_FALSE(CheckRecord(tree, index, record).has_value());
  EXPECT_EQ(tree, Apply(tree, index, record));
  record.transplant = StatementId{0};
  EXPECT_THROW(Apply(tree, index, record), InvalidRecord);
}

TEST(ApplyTest, ReplacedDeclarationKeepsItsName) {
  SyntaxTree tree = ParseOrDie(
      "fn f(n: int) -> int { let a: int = n; return a; }\n"
      "fn g(m: int) -> int { let b: int = m * 3; return b; }");
  ReactionIndex index = ReactionIndex::Build(tree);
  TransformationRecord record{TransformationKind::kReplaceSteroid,
                              IdOf(tree, "let a"), IdOf(tree, "let b"),
                              {{"m", "n"}}, {}};
  SyntaxTree variant = Apply(tree, index, record);
  EXPECT_TRUE(minilang::TypeCheck(variant).empty());
  EXPECT_NE(std::string::npos,
            minilang::PrettyPrint(variant).find("let a: int = n * 3;"));
}

TEST(ApplyTest, AddInsertsAfterThePoint) {
  SyntaxTree tree = ParseOrDie("fn f(x: int) { x = 1; x = 2; }");
  ReactionIndex index = ReactionIndex::Build(tree);
  TransformationRecord record{TransformationKind::kAddRandom, StatementId{0},
                              StatementId{1}, {}, {}};
  EXPECT_EQ("fn f(x: int) {\n  x = 1;\n  x = 2;\n  x = 2;\n}\n",
            minilang::PrettyPrint(Apply(tree, index, record)));
}

// Seeded fuzz over every bundled program: each emitted record satisfies the
// preconditions, Apply is pure and deterministic, printing round-trips, and
// Steroid transplants always resolve their variables.
class TransformFuzzTest : public ::testing::TestWithParam<std::string> {};

TEST_P(TransformFuzzTest, RecordsAndVariantsAreWellBehaved) {
  minilang::Corpus corpus = LoadBundled(GetParam());
  const SyntaxTree& tree = corpus.tree;
  const SyntaxTree pristine = tree;
  ReactionIndex index = ReactionIndex::Build(tree);
  std::vector<StatementId> points =
      EligiblePoints(runtime::CoverageOfSuite(tree), index);
  ASSERT_FALSE(points.empty());
  Rng rng(20260101);
  int emitted = 0;
  for (int round = 0; round < 300; ++round) {
    StatementId point = points[rng.Below(points.size())];
    for (TransformationKind kind : AllKinds()) {
      Selection selection = SelectTransplant(kind, point, tree, index, rng);
      const TransformationRecord* record = AsRecord(selection);
      if (record == nullptr) {
        continue;
      }
      ++emitted;
      auto problem = CheckRecord(tree, index, *record);
      ASSERT_FALSE(problem.has_value()) << *problem;
      if (IsReplace(kind)) {
        ASSERT_NE(point, *record->transplant);
        auto kind_of_point = index.at(point).kind;
        if (kind_of_point == StmtKind::kLet ||
            kind_of_point == StmtKind::kReturn) {
          ASSERT_EQ(kind_of_point, index.at(*record->transplant).kind);
        }
      }
      SyntaxTree variant = Apply(tree, index, *record);
      ASSERT_EQ(tree, pristine);
      ASSERT_EQ(variant, Apply(tree, index, *record));
      ASSERT_EQ(variant, ParseOrDie(minilang::PrettyPrint(variant)));
      if (IsAdd(kind)) {
        // The inserted copy never opens a block.
        auto at = minilang::FindStatement(variant, point);
        ASSERT_TRUE(at.has_value());
        ASSERT_GT(at->index + 1, 0u);
        ASSERT_LT(at->index + 1, at->container->size());
      }
      if (StrategyOf(kind) == reactions::Strategy::kSteroid) {
        // Only definite-return and redeclaration effects may remain.
        for (const auto& diagnostic : minilang::TypeCheck(variant)) {
          const std::string& message = diagnostic.message;
          ASSERT_TRUE(
              message.find("redeclaration of") != std::string::npos ||
              message.find("unreachable statement") != std::string::npos ||
              message.find("on every path") != std::string::npos)
              << diagnostic.ToString();
        }
      }
    }
  }
  EXPECT_GT(emitted, 1000);
}

TEST_P(TransformFuzzTest, CandidateSetsNest) {
  minilang::Corpus corpus = LoadBundled(GetParam());
  ReactionIndex index = ReactionIndex::Build(corpus.tree);
  for (StatementId point : index.application()) {
    for (bool replace : {false, true}) {
      auto kind_of = [&](TransformationKind add, TransformationKind rep) {
        return Candidates(replace ? rep : add, point, corpus.tree, index);
      };
      auto random = kind_of(TransformationKind::kAddRandom,
                            TransformationKind::kReplaceRandom);
      auto reaction = kind_of(TransformationKind::kAddReaction,
                              TransformationKind::kReplaceReaction);
      auto steroid = kind_of(TransformationKind::kAddSteroid,
                             TransformationKind::kReplaceSteroid);
      auto wittgenstein = kind_of(TransformationKind::kAddWittgenstein,
                                  TransformationKind::kReplaceWittgenstein);
      EXPECT_TRUE(std::includes(reaction.begin(), reaction.end(),
                                steroid.begin(), steroid.end()));
      EXPECT_TRUE(std::includes(random.begin(), random.end(),
                                reaction.begin(), reaction.end()));
      EXPECT_TRUE(std::includes(random.begin(), random.end(),
                                wittgenstein.begin(), wittgenstein.end()));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Programs, TransformFuzzTest,
                         ::testing::ValuesIn(CorpusPrograms()));

}  // namespace
}  // namespace sosieforge::transforms
