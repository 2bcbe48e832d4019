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

#include "sosieforge/minilang/type_checker.h"

#include <set>
#include <string>
#include <utility>

namespace sosieforge::minilang {

namespace {

class ExpressionTyper {
 public:
  ExpressionTyper(const SyntaxTree& tree, const VisibleVariables& scope)
      : tree_(tree), scope_(scope) {}

  std::optional<StaticType> TypeOf(const Expr& expr,
                                   const StaticType* expected) {
    switch (expr.kind) {
      case ExprKind::kIntLit:
        return StaticType::Int();
      case ExprKind::kBoolLit:
        return StaticType::Bool();
      case ExprKind::kStrLit:
        return StaticType::Str();
      case ExprKind::kListLit:
        return TypeOfList(expr, expected);
      case ExprKind::kVarRef: {
        const StaticType* type = LookupVariable(scope_, expr.text);
        if (type == nullptr) {
          return Error(DiagnosticKind::kNameError,
                       "undeclared variable '" + expr.text + "'");
        }
        return *type;
      }
      case ExprKind::kUnary: {
        StaticType want =
            expr.op == Op::kNeg ? StaticType::Int() : StaticType::Bool();
        if (!Expect(expr.operands[0], want, OpSpelling(expr.op))) {
          return std::nullopt;
        }
        return want;
      }
      case ExprKind::kBinary:
        return TypeOfBinary(expr);
      case ExprKind::kCall:
        return TypeOfCall(expr);
      case ExprKind::kBuiltin:
        return TypeOfBuiltin(expr);
    }
    return std::nullopt;
  }

  const std::optional<std::pair<DiagnosticKind, std::string>>& error() const {
    return error_;
  }

 private:
  std::nullopt_t Error(DiagnosticKind kind, std::string message) {
    if (!error_.has_value()) {
      error_ = {kind, std::move(message)};
    }
    return std::nullopt;
  }

  bool Expect(const Expr& expr, const StaticType& want, const char* what) {
    std::optional<StaticType> got = TypeOf(expr, &want);
    if (!got.has_value()) {
      return false;
    }
    if (*got != want) {
      Error(DiagnosticKind::kTypeError, std::string("operand of '") + what +
                                            "' has type " + got->ToString() +
                                            ", expected " + want.ToString());
      return false;
    }
    return true;
  }

  std::optional<StaticType> TypeOfList(const Expr& expr,
                                       const StaticType* expected) {
    const StaticType* expected_element =
        expected != nullptr && expected->IsList() ? &expected->element()
                                                  : nullptr;
    if (expr.operands.empty()) {
      if (expected_element == nullptr) {
        return Error(DiagnosticKind::kTypeError,
                     "cannot infer the type of an empty list");
      }
      return *expected;
    }
    std::optional<StaticType> element =
        TypeOf(expr.operands[0], expected_element);
    if (!element.has_value()) {
      return std::nullopt;
    }
    if (element->IsVoid()) {
      return Error(DiagnosticKind::kTypeError, "list element has type void");
    }
    for (std::size_t i = 1; i < expr.operands.size(); ++i) {
      if (!Expect(expr.operands[i], *element, "[]")) {
        return std::nullopt;
      }
    }
    return StaticType::ListOf(*element);
  }

  std::optional<StaticType> TypeOfBinary(const Expr& expr) {
    const Expr& lhs = expr.operands[0];
    const Expr& rhs = expr.operands[1];
    const char* spelling = OpSpelling(expr.op);
    switch (expr.op) {
      case Op::kAdd:
      case Op::kSub:
      case Op::kMul:
      case Op::kDiv:
      case Op::kMod:
        if (!Expect(lhs, StaticType::Int(), spelling) ||
            !Expect(rhs, StaticType::Int(), spelling)) {
          return std::nullopt;
        }
        return StaticType::Int();
      case Op::kLt:
      case Op::kLe:
      case Op::kGt:
      case Op::kGe:
        if (!Expect(lhs, StaticType::Int(), spelling) ||
            !Expect(rhs, StaticType::Int(), spelling)) {
          return std::nullopt;
        }
        return StaticType::Bool();
      case Op::kAnd:
      case Op::kOr:
        if (!Expect(lhs, StaticType::Bool(), spelling) ||
            !Expect(rhs, StaticType::Bool(), spelling)) {
          return std::nullopt;
        }
        return StaticType::Bool();
      case Op::kEq:
      case Op::kNe: {
        std::optional<StaticType> left = TypeOf(lhs, nullptr);
        if (!left.has_value()) {
          return std::nullopt;
        }
        if (left->IsVoid()) {
          return Error(DiagnosticKind::kTypeError,
                       std::string("operand of '") + spelling +
                           "' has type void");
        }
        if (!Expect(rhs, *left, spelling)) {
          return std::nullopt;
        }
        return StaticType::Bool();
      }
      default:
        return Error(DiagnosticKind::kTypeError, "malformed binary operator");
    }
  }

  std::optional<StaticType> TypeOfCall(const Expr& expr) {
    const Function* callee = tree_.FindFunction(expr.text);
    if (callee == nullptr) {
      return Error(DiagnosticKind::kNameError,
                   "unknown function '" + expr.text + "'");
    }
    if (callee->params.size() != expr.operands.size()) {
      return Error(DiagnosticKind::kTypeError,
                   "'" + expr.text + "' expects " +
                       std::to_string(callee->params.size()) + " arguments");
    }
    for (std::size_t i = 0; i < expr.operands.size(); ++i) {
      if (!ExpectArg(expr, i, callee->params[i].type)) {
        return std::nullopt;
      }
    }
    return callee->return_type;
  }

  bool ExpectArg(const Expr& call, std::size_t index, const StaticType& want) {
    std::optional<StaticType> got = TypeOf(call.operands[index], &want);
    if (!got.has_value()) {
      return false;
    }
    if (*got != want) {
      Error(DiagnosticKind::kTypeError,
            "argument " + std::to_string(index + 1) + " of '" + call.text +
                "' has type " + got->ToString() + ", expected " +
                want.ToString());
      return false;
    }
    return true;
  }

  bool Arity(const Expr& expr, std::size_t count) {
    if (expr.operands.size() != count) {
      Error(DiagnosticKind::kTypeError, "'" + expr.text + "' expects " +
                                            std::to_string(count) +
                                            " arguments");
      return false;
    }
    return true;
  }

  std::optional<StaticType> TypeOfBuiltin(const Expr& expr) {
    const auto& args = expr.operands;
    switch (expr.builtin) {
      case Builtin::kPrint:
        if (!Arity(expr, 1) || !ExpectArg(expr, 0, StaticType::Str())) {
          return std::nullopt;
        }
        return StaticType::Void();
      case Builtin::kAssert:
        if (!Arity(expr, 1) || !ExpectArg(expr, 0, StaticType::Bool())) {
          return std::nullopt;
        }
        return StaticType::Void();
      case Builtin::kLen: {
        if (!Arity(expr, 1)) {
          return std::nullopt;
        }
        std::optional<StaticType> arg = TypeOf(args[0], nullptr);
        if (!arg.has_value()) {
          return std::nullopt;
        }
        if (!arg->IsList() && *arg != StaticType::Str()) {
          return Error(DiagnosticKind::kTypeError,
                       "'len' expects a list or str, got " + arg->ToString());
        }
        return StaticType::Int();
      }
      case Builtin::kPush: {
        if (!Arity(expr, 2)) {
          return std::nullopt;
        }
        std::optional<StaticType> list = ListArg(expr, 0);
        if (!list.has_value() || !ExpectArg(expr, 1, list->element())) {
          return std::nullopt;
        }
        return list;
      }
      case Builtin::kConcat:
        if (!Arity(expr, 2) || !ExpectArg(expr, 0, StaticType::Str()) ||
            !ExpectArg(expr, 1, StaticType::Str())) {
          return std::nullopt;
        }
        return StaticType::Str();
      case Builtin::kToStr: {
        if (!Arity(expr, 1)) {
          return std::nullopt;
        }
        std::optional<StaticType> arg = TypeOf(args[0], nullptr);
        if (!arg.has_value()) {
          return std::nullopt;
        }
        if (*arg != StaticType::Int() && *arg != StaticType::Bool()) {
          return Error(DiagnosticKind::kTypeError,
                       "'to_str' expects int or bool, got " + arg->ToString());
        }
        return StaticType::Str();
      }
      case Builtin::kUuid:
        if (!Arity(expr, 0)) {
          return std::nullopt;
        }
        return StaticType::Str();
      case Builtin::kGet: {
        if (!Arity(expr, 2)) {
          return std::nullopt;
        }
        std::optional<StaticType> list = ListArg(expr, 0);
        if (!list.has_value() || !ExpectArg(expr, 1, StaticType::Int())) {
          return std::nullopt;
        }
        return list->element();
      }
      case Builtin::kSet: {
        if (!Arity(expr, 3)) {
          return std::nullopt;
        }
        std::optional<StaticType> list = ListArg(expr, 0);
        if (!list.has_value() || !ExpectArg(expr, 1, StaticType::Int()) ||
            !ExpectArg(expr, 2, list->element())) {
          return std::nullopt;
        }
        return list;
      }
      case Builtin::kSubstr:
        if (!Arity(expr, 3) || !ExpectArg(expr, 0, StaticType::Str()) ||
            !ExpectArg(expr, 1, StaticType::Int()) ||
            !ExpectArg(expr, 2, StaticType::Int())) {
          return std::nullopt;
        }
        return StaticType::Str();
      case Builtin::kNone:
        break;
    }
    return Error(DiagnosticKind::kNameError, "unknown builtin");
  }

  std::optional<StaticType> ListArg(const Expr& expr, std::size_t index) {
    std::optional<StaticType> arg = TypeOf(expr.operands[index], nullptr);
    if (!arg.has_value()) {
      return std::nullopt;
    }
    if (!arg->IsList()) {
      return Error(DiagnosticKind::kTypeError,
                   "argument " + std::to_string(index + 1) + " of '" +
                       expr.text + "' must be a list, got " + arg->ToString());
    }
    return arg;
  }

  const SyntaxTree& tree_;
  const VisibleVariables& scope_;
  std::optional<std::pair<DiagnosticKind, std::string>> error_;
};

class Checker {
 public:
  explicit Checker(const SyntaxTree& tree) : tree_(tree) {}

  Diagnostics Run() {
    std::set<std::string> names;
    for (const Function& function : tree_.functions) {
      function_ = &function;
      if (!names.insert(function.name).second) {
        Report(DiagnosticKind::kNameError, std::nullopt,
               "duplicate function '" + function.name + "'");
      }
      if (LookupBuiltin(function.name) != Builtin::kNone) {
        Report(DiagnosticKind::kNameError, std::nullopt,
               "function '" + function.name + "' shadows a builtin");
      }
      if (function.IsTest() &&
          (!function.params.empty() || !function.return_type.IsVoid())) {
        Report(DiagnosticKind::kTypeError, std::nullopt,
               "test functions take no parameters and return nothing");
      }
      CheckFunction(function);
    }
    return std::move(diagnostics_);
  }

 private:
  void Report(DiagnosticKind kind, std::optional<StatementId> stmt,
              std::string message) {
    Diagnostic diagnostic;
    diagnostic.kind = kind;
    diagnostic.function = function_->name;
    diagnostic.statement = stmt;
    diagnostic.message = std::move(message);
    diagnostics_.push_back(std::move(diagnostic));
  }

  void CheckFunction(const Function& function) {
    scope_.clear();
    for (const Param& param : function.params) {
      if (LookupVariable(scope_, param.name) != nullptr) {
        Report(DiagnosticKind::kNameError, std::nullopt,
               "duplicate parameter '" + param.name + "'");
      }
      if (param.type.IsVoid()) {
        Report(DiagnosticKind::kTypeError, std::nullopt,
               "parameter '" + param.name + "' has type void");
      }
      scope_.emplace_back(param.name, param.type);
    }
    CheckBlock(function.body);
    if (!function.return_type.IsVoid() && !DefinitelyReturns(function.body)) {
      Report(DiagnosticKind::kReturnPathError, std::nullopt,
             "function '" + function.name +
                 "' does not return a value on every path");
    }
  }

  void CheckBlock(const std::vector<Stmt>& block) {
    std::size_t mark = scope_.size();
    bool returned = false;
    for (const Stmt& stmt : block) {
      if (returned) {
        Report(DiagnosticKind::kReturnPathError, stmt.id,
               "unreachable statement");
      }
      CheckStatement(stmt);
      returned = returned || DefinitelyReturns(stmt);
    }
    scope_.resize(mark);
  }

  std::optional<StaticType> Type(const Stmt& stmt, const Expr& expr,
                                 const StaticType* expected) {
    ExpressionTyper typer(tree_, scope_);
    std::optional<StaticType> type = typer.TypeOf(expr, expected);
    if (!type.has_value() && typer.error().has_value()) {
      Report(typer.error()->first, stmt.id, typer.error()->second);
    }
    return type;
  }

  void ExpectType(const Stmt& stmt, const Expr& expr, const StaticType& want,
                  const char* what) {
    std::optional<StaticType> got = Type(stmt, expr, &want);
    if (got.has_value() && *got != want) {
      Report(DiagnosticKind::kTypeError, stmt.id,
             std::string(what) + " has type " + got->ToString() +
                 ", expected " + want.ToString());
    }
  }

  void CheckStatement(const Stmt& stmt) {
    switch (stmt.kind) {
      case StmtKind::kLet:
        if (stmt.declared_type.IsVoid()) {
          Report(DiagnosticKind::kTypeError, stmt.id,
                 "variable '" + stmt.name + "' declared void");
        } else {
          ExpectType(stmt, *stmt.expr, stmt.declared_type, "initializer");
        }
        if (LookupVariable(scope_, stmt.name) != nullptr) {
          Report(DiagnosticKind::kNameError, stmt.id,
                 "redeclaration of '" + stmt.name + "'");
        }
        scope_.emplace_back(stmt.name, stmt.declared_type);
        return;
      case StmtKind::kAssign: {
        const StaticType* target = LookupVariable(scope_, stmt.name);
        if (target == nullptr) {
          Report(DiagnosticKind::kNameError, stmt.id,
                 "assignment to undeclared variable '" + stmt.name + "'");
          Type(stmt, *stmt.expr, nullptr);
          return;
        }
        StaticType want = *target;
        ExpectType(stmt, *stmt.expr, want, "assigned value");
        return;
      }
      case StmtKind::kExpr:
        Type(stmt, *stmt.expr, nullptr);
        return;
      case StmtKind::kIf:
        ExpectType(stmt, *stmt.expr, StaticType::Bool(), "condition");
        CheckBlock(stmt.body);
        if (stmt.else_body.has_value()) {
          CheckBlock(*stmt.else_body);
        }
        return;
      case StmtKind::kWhile:
        ExpectType(stmt, *stmt.expr, StaticType::Bool(), "condition");
        CheckBlock(stmt.body);
        return;
      case StmtKind::kReturn:
        if (!stmt.expr.has_value()) {
          if (!function_->return_type.IsVoid()) {
            Report(DiagnosticKind::kTypeError, stmt.id,
                   "missing return value");
          }
        } else if (function_->return_type.IsVoid()) {
          Report(DiagnosticKind::kTypeError, stmt.id,
                 "return value in a function returning nothing");
        } else {
          ExpectType(stmt, *stmt.expr, function_->return_type,
                     "returned value");
        }
        return;
      case StmtKind::kBlock:
        CheckBlock(stmt.body);
        return;
    }
  }

  const SyntaxTree& tree_;
  const Function* function_ = nullptr;
  VisibleVariables scope_;
  Diagnostics diagnostics_;
};

void WalkBlock(const std::vector<Stmt>& block, const Function& function,
               VisibleVariables& scope,
               const std::function<void(const Stmt&, const Function&,
                                        const VisibleVariables&)>& visit) {
  std::size_t mark = scope.size();
  for (const Stmt& stmt : block) {
    visit(stmt, function, scope);
    WalkBlock(stmt.body, function, scope, visit);
    if (stmt.else_body.has_value()) {
      WalkBlock(*stmt.else_body, function, scope, visit);
    }
    if (stmt.kind == StmtKind::kLet) {
      scope.emplace_back(stmt.name, stmt.declared_type);
    }
  }
  scope.resize(mark);
}

}  // namespace

const StaticType* LookupVariable(const VisibleVariables& scope,
                                 const std::string& name) {
  for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
    if (it->first == name) {
      return &it->second;
    }
  }
  return nullptr;
}

Diagnostics TypeCheck(const SyntaxTree& tree) { return Checker(tree).Run(); }

bool DefinitelyReturns(const Stmt& stmt) {
  switch (stmt.kind) {
    case StmtKind::kReturn:
      return true;
    case StmtKind::kIf:
      return stmt.else_body.has_value() && DefinitelyReturns(stmt.body) &&
             DefinitelyReturns(*stmt.else_body);
    case StmtKind::kBlock:
      return DefinitelyReturns(stmt.body);
    default:
      return false;
  }
}

bool DefinitelyReturns(const std::vector<Stmt>& block) {
  for (const Stmt& stmt : block) {
    if (DefinitelyReturns(stmt)) {
      return true;
    }
  }
  return false;
}

std::optional<StaticType> TypeOfExpression(const SyntaxTree& tree,
                                           const VisibleVariables& scope,
                                           const Expr& expr,
                                           const StaticType* expected) {
  return ExpressionTyper(tree, scope).TypeOf(expr, expected);
}

void ForEachStatementInScope(
    const SyntaxTree& tree,
    const std::function<void(const Stmt&, const Function&,
                             const VisibleVariables&)>& visit) {
  VisibleVariables scope;
  for (const Function& function : tree.functions) {
    scope.clear();
    for (const Param& param : function.params) {
      scope.emplace_back(param.name, param.type);
    }
    WalkBlock(function.body, function, scope, visit);
  }
}

}  // namespace sosieforge::minilang
