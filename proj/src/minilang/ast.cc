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

#include "sosieforge/minilang/ast.h"

#include <array>
#include <utility>

namespace sosieforge::minilang {

namespace {

constexpr std::array<std::pair<Builtin, const char*>, 10> kBuiltins = {{
    {Builtin::kPrint, "print"},
    {Builtin::kAssert, "assert"},
    {Builtin::kLen, "len"},
    {Builtin::kPush, "push"},
    {Builtin::kConcat, "concat"},
    {Builtin::kToStr, "to_str"},
    {Builtin::kUuid, "uuid"},
    {Builtin::kGet, "get"},
    {Builtin::kSet, "set"},
    {Builtin::kSubstr, "substr"},
}};

}  // namespace

const char* OpSpelling(Op op) {
  switch (op) {
    case Op::kNone:
      return "";
    case Op::kNeg:
    case Op::kSub:
      return "-";
    case Op::kNot:
      return "!";
    case Op::kAdd:
      return "+";
    case Op::kMul:
      return "*";
    case Op::kDiv:
      return "/";
    case Op::kMod:
      return "%";
    case Op::kEq:
      return "==";
    case Op::kNe:
      return "!=";
    case Op::kLt:
      return "<";
    case Op::kLe:
      return "<=";
    case Op::kGt:
      return ">";
    case Op::kGe:
      return ">=";
    case Op::kAnd:
      return "&&";
    case Op::kOr:
      return "||";
  }
  return "";
}

const char* BuiltinName(Builtin builtin) {
  for (const auto& [b, name] : kBuiltins) {
    if (b == builtin) {
      return name;
    }
  }
  return "";
}

Builtin LookupBuiltin(const std::string& name) {
  for (const auto& [b, builtin_name] : kBuiltins) {
    if (name == builtin_name) {
      return b;
    }
  }
  return Builtin::kNone;
}

const char* StmtKindName(StmtKind kind) {
  switch (kind) {
    case StmtKind::kLet:
      return "let";
    case StmtKind::kAssign:
      return "assign";
    case StmtKind::kExpr:
      return "expr";
    case StmtKind::kIf:
      return "if";
    case StmtKind::kWhile:
      return "while";
    case StmtKind::kReturn:
      return "return";
    case StmtKind::kBlock:
      return "block";
  }
  return "";
}

Expr Expr::IntLit(std::int64_t value) {
  Expr e;
  e.kind = ExprKind::kIntLit;
  e.int_value = value;
  return e;
}

Expr Expr::BoolLit(bool value) {
  Expr e;
  e.kind = ExprKind::kBoolLit;
  e.bool_value = value;
  return e;
}

Expr Expr::StrLit(std::string value) {
  Expr e;
  e.kind = ExprKind::kStrLit;
  e.text = std::move(value);
  return e;
}

Expr Expr::VarRef(std::string name) {
  Expr e;
  e.kind = ExprKind::kVarRef;
  e.text = std::move(name);
  return e;
}

Expr Expr::Unary(Op op, Expr operand) {
  Expr e;
  e.kind = ExprKind::kUnary;
  e.op = op;
  e.operands.push_back(std::move(operand));
  return e;
}

Expr Expr::Binary(Op op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = ExprKind::kBinary;
  e.op = op;
  e.operands.push_back(std::move(lhs));
  e.operands.push_back(std::move(rhs));
  return e;
}

Expr Expr::Call(std::string callee, std::vector<Expr> args) {
  Expr e;
  e.kind = ExprKind::kCall;
  e.text = std::move(callee);
  e.operands = std::move(args);
  return e;
}

Expr Expr::BuiltinCall(Builtin builtin, std::vector<Expr> args) {
  Expr e;
  e.kind = ExprKind::kBuiltin;
  e.builtin = builtin;
  e.text = BuiltinName(builtin);
  e.operands = std::move(args);
  return e;
}

const Function* SyntaxTree::FindFunction(const std::string& name) const {
  for (const Function& function : functions) {
    if (function.name == name) {
      return &function;
    }
  }
  return nullptr;
}

}  // namespace sosieforge::minilang
