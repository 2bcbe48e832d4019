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

#include "sosieforge/minilang/printer.h"

#include <string>

namespace sosieforge::minilang {

namespace {

constexpr int kUnaryLevel = 6;
constexpr int kPrimaryLevel = 7;

int Level(const Expr& expr) {
  switch (expr.kind) {
    case ExprKind::kUnary:
      return kUnaryLevel;
    case ExprKind::kBinary:
      switch (expr.op) {
        case Op::kOr:
          return 0;
        case Op::kAnd:
          return 1;
        case Op::kEq:
        case Op::kNe:
          return 2;
        case Op::kLt:
        case Op::kLe:
        case Op::kGt:
        case Op::kGe:
          return 3;
        case Op::kAdd:
        case Op::kSub:
          return 4;
        default:
          return 5;
      }
    default:
      return kPrimaryLevel;
  }
}

void PrintExpr(const Expr& expr, int min_level, std::string& out);

void PrintArgs(const std::vector<Expr>& args, std::string& out) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) {
      out += ", ";
    }
    PrintExpr(args[i], 0, out);
  }
}

void PrintExpr(const Expr& expr, int min_level, std::string& out) {
  int level = Level(expr);
  bool parens = level < min_level;
  if (parens) {
    out += '(';
  }
  switch (expr.kind) {
    case ExprKind::kIntLit:
      out += std::to_string(expr.int_value);
      break;
    case ExprKind::kBoolLit:
      out += expr.bool_value ? "true" : "false";
      break;
    case ExprKind::kStrLit:
      out += QuoteString(expr.text);
      break;
    case ExprKind::kListLit:
      out += '[';
      PrintArgs(expr.operands, out);
      out += ']';
      break;
    case ExprKind::kVarRef:
      out += expr.text;
      break;
    case ExprKind::kUnary:
      out += OpSpelling(expr.op);
      PrintExpr(expr.operands[0], kUnaryLevel, out);
      break;
    case ExprKind::kBinary:
      PrintExpr(expr.operands[0], level, out);
      out += ' ';
      out += OpSpelling(expr.op);
      out += ' ';
      PrintExpr(expr.operands[1], level + 1, out);
      break;
    case ExprKind::kCall:
    case ExprKind::kBuiltin:
      out += expr.text;
      out += '(';
      PrintArgs(expr.operands, out);
      out += ')';
      break;
  }
  if (parens) {
    out += ')';
  }
}

void PrintBlock(const std::vector<Stmt>& block, int indent, std::string& out);

void PrintStmt(const Stmt& stmt, int indent, std::string& out) {
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
  switch (stmt.kind) {
    case StmtKind::kLet:
      out += "let " + stmt.name + ": " + stmt.declared_type.ToString() +
             " = ";
      PrintExpr(*stmt.expr, 0, out);
      out += ";\n";
      return;
    case StmtKind::kAssign:
      out += stmt.name + " = ";
      PrintExpr(*stmt.expr, 0, out);
      out += ";\n";
      return;
    case StmtKind::kExpr:
      PrintExpr(*stmt.expr, 0, out);
      out += ";\n";
      return;
    case StmtKind::kReturn:
      out += "return";
      if (stmt.expr.has_value()) {
        out += ' ';
        PrintExpr(*stmt.expr, 0, out);
      }
      out += ";\n";
      return;
    case StmtKind::kIf:
      out += "if ";
      PrintExpr(*stmt.expr, 0, out);
      out += ' ';
      PrintBlock(stmt.body, indent, out);
      if (stmt.else_body.has_value()) {
        // Drop the trailing newline so "else" joins the closing brace.
        out.pop_back();
        out += " else ";
        PrintBlock(*stmt.else_body, indent, out);
      }
      return;
    case StmtKind::kWhile:
      out += "while ";
      PrintExpr(*stmt.expr, 0, out);
      out += ' ';
      PrintBlock(stmt.body, indent, out);
      return;
    case StmtKind::kBlock:
      PrintBlock(stmt.body, indent, out);
      return;
  }
}

void PrintBlock(const std::vector<Stmt>& block, int indent, std::string& out) {
  out += "{\n";
  for (const Stmt& stmt : block) {
    PrintStmt(stmt, indent + 1, out);
  }
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
  out += "}\n";
}

void PrintFunction(const Function& function, std::string& out) {
  out += "fn " + function.name + "(";
  for (std::size_t i = 0; i < function.params.size(); ++i) {
    if (i > 0) {
      out += ", ";
    }
    out += function.params[i].name + ": " + function.params[i].type.ToString();
  }
  out += ")";
  if (!function.return_type.IsVoid()) {
    out += " -> " + function.return_type.ToString();
  }
  out += ' ';
  PrintBlock(function.body, 0, out);
}

}  // namespace

std::string QuoteString(const std::string& value) {
  std::string out = "\"";
  for (char c : value) {
    switch (c) {
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      default:
        out += c;
    }
  }
  out += '"';
  return out;
}

std::string PrettyPrint(const SyntaxTree& tree) {
  std::string out;
  for (std::size_t i = 0; i < tree.functions.size(); ++i) {
    if (i > 0) {
      out += '\n';
    }
    PrintFunction(tree.functions[i], out);
  }
  return out;
}

std::string PrettyPrint(const Function& function) {
  std::string out;
  PrintFunction(function, out);
  return out;
}

std::string PrettyPrint(const Stmt& stmt, int indent) {
  std::string out;
  PrintStmt(stmt, indent, out);
  return out;
}

std::string PrettyPrint(const Expr& expr) {
  std::string out;
  PrintExpr(expr, 0, out);
  return out;
}

}  // namespace sosieforge::minilang
