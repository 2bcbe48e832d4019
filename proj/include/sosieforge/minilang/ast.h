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

#ifndef SOSIEFORGE_MINILANG_AST_H_
#define SOSIEFORGE_MINILANG_AST_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sosieforge/minilang/types.h"

namespace sosieforge::minilang {

// Pre-order index of a statement over the whole program. Recomputed after
// every edit, so an id is only meaningful relative to one tree.
struct StatementId {
  std::int32_t value = -1;

  bool valid() const { return value >= 0; }
  auto operator<=>(const StatementId&) const = default;
};

enum class Op {
  kNone,
  kNeg,
  kNot,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kMod,
  kEq,
  kNe,
  kLt,
  kLe,
  kGt,
  kGe,
  kAnd,
  kOr,
};

enum class Builtin {
  kNone,
  kPrint,
  kAssert,
  kLen,
  kPush,
  kConcat,
  kToStr,
  kUuid,
  kGet,
  kSet,
  kSubstr,
};

const char* OpSpelling(Op op);
const char* BuiltinName(Builtin builtin);
// Returns Builtin::kNone when `name` is not a builtin.
Builtin LookupBuiltin(const std::string& name);

enum class ExprKind {
  kIntLit,
  kBoolLit,
  kStrLit,
  kListLit,
  kVarRef,
  kUnary,
  kBinary,
  kCall,
  kBuiltin,
};

struct Expr {
  ExprKind kind = ExprKind::kIntLit;
  Op op = Op::kNone;
  Builtin builtin = Builtin::kNone;
  std::int64_t int_value = 0;
  bool bool_value = false;
  // String literal contents, variable name, or callee name.
  std::string text;
  // List elements, unary/binary operands, or call arguments.
  std::vector<Expr> operands;

  bool operator==(const Expr&) const = default;

  static Expr IntLit(std::int64_t value);
  static Expr BoolLit(bool value);
  static Expr StrLit(std::string value);
  static Expr VarRef(std::string name);
  static Expr Unary(Op op, Expr operand);
  static Expr Binary(Op op, Expr lhs, Expr rhs);
  static Expr Call(std::string callee, std::vector<Expr> args);
  static Expr BuiltinCall(Builtin builtin, std::vector<Expr> args);
};

enum class StmtKind { kLet, kAssign, kExpr, kIf, kWhile, kReturn, kBlock };

const char* StmtKindName(StmtKind kind);

struct Stmt {
  StmtKind kind = StmtKind::kExpr;
  StatementId id;
  // Declared name (kLet) or assignment target (kAssign).
  std::string name;
  StaticType declared_type;
  // Initializer, assigned value, expression, condition or return value.
  std::optional<Expr> expr;
  // Then-branch, loop body or nested block contents.
  std::vector<Stmt> body;
  std::optional<std::vector<Stmt>> else_body;

  bool operator==(const Stmt&) const = default;
};

struct Param {
  std::string name;
  StaticType type;

  bool operator==(const Param&) const = default;
};

struct Function {
  std::string name;
  std::vector<Param> params;
  StaticType return_type;
  std::vector<Stmt> body;

  bool IsTest() const { return name.starts_with("test_"); }
  bool operator==(const Function&) const = default;
};

struct SyntaxTree {
  std::vector<Function> functions;

  const Function* FindFunction(const std::string& name) const;
  bool operator==(const SyntaxTree&) const = default;
};

}  // namespace sosieforge::minilang

template <>
struct std::hash<sosieforge::minilang::StatementId> {
  std::size_t operator()(sosieforge::minilang::StatementId id) const noexcept {
    return std::hash<std::int32_t>()(id.value);
  }
};

#endif  // SOSIEFORGE_MINILANG_AST_H_
