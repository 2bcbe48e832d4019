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

#include "sosieforge/minilang/parser.h"

#include <cctype>
#include <charconv>
#include <string>
#include <utility>
#include <vector>

#include "sosieforge/minilang/statements.h"

namespace sosieforge::minilang {

namespace {

enum class Tok {
  kEnd,
  kIdent,
  kInt,
  kString,
  kPunct,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::size_t offset = 0;
};

struct SyntaxError {
  std::size_t offset;
  std::string message;
};

class Lexer {
 public:
  explicit Lexer(std::string_view source) : source_(source) {}

  std::vector<Token> Run() {
    std::vector<Token> tokens;
    while (true) {
      SkipSpaceAndComments();
      if (pos_ >= source_.size()) {
        tokens.push_back({Tok::kEnd, "", pos_});
        return tokens;
      }
      tokens.push_back(Next());
    }
  }

 private:
  void SkipSpaceAndComments() {
    while (pos_ < source_.size()) {
      char c = source_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else if (c == '/' && pos_ + 1 < source_.size() &&
                 source_[pos_ + 1] == '/') {
        while (pos_ < source_.size() && source_[pos_] != '\n') {
          ++pos_;
        }
      } else {
        return;
      }
    }
  }

  Token Next() {
    std::size_t start = pos_;
    char c = source_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < source_.size() &&
             (std::isalnum(static_cast<unsigned char>(source_[pos_])) ||
              source_[pos_] == '_')) {
        ++pos_;
      }
      return {Tok::kIdent, std::string(source_.substr(start, pos_ - start)),
              start};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < source_.size() &&
             std::isdigit(static_cast<unsigned char>(source_[pos_]))) {
        ++pos_;
      }
      return {Tok::kInt, std::string(source_.substr(start, pos_ - start)),
              start};
    }
    if (c == '"') {
      return LexString();
    }
    static constexpr std::string_view kTwoChar[] = {"->", "==", "!=", "<=",
                                                    ">=", "&&", "||"};
    for (std::string_view op : kTwoChar) {
      if (source_.substr(pos_, 2) == op) {
        pos_ += 2;
        return {Tok::kPunct, std::string(op), start};
      }
    }
    static constexpr std::string_view kOneChar = "(){}[],;:=<>+-*/%!";
    if (kOneChar.find(c) != std::string_view::npos) {
      ++pos_;
      return {Tok::kPunct, std::string(1, c), start};
    }
    throw SyntaxError{start, std::string("unexpected character '") + c + "'"};
  }

  Token LexString() {
    std::size_t start = pos_++;
    std::string value;
    while (true) {
      if (pos_ >= source_.size() || source_[pos_] == '\n') {
        throw SyntaxError{start, "unterminated string literal"};
      }
      char c = source_[pos_++];
      if (c == '"') {
        return {Tok::kString, std::move(value), start};
      }
      if (c != '\\') {
        value.push_back(c);
        continue;
      }
      if (pos_ >= source_.size()) {
        throw SyntaxError{start, "unterminated string literal"};
      }
      char escaped = source_[pos_++];
      switch (escaped) {
        case 'n':
          value.push_back('\n');
          break;
        case 't':
          value.push_back('\t');
          break;
        case '"':
          value.push_back('"');
          break;
        case '\\':
          value.push_back('\\');
          break;
        default:
          throw SyntaxError{pos_ - 2, "unknown escape sequence"};
      }
    }
  }

  std::string_view source_;
  std::size_t pos_ = 0;
};

bool IsKeyword(const std::string& text) {
  static const char* const kKeywords[] = {"fn",    "let",   "if",  "else",
                                          "while", "return", "true", "false",
                                          "int",   "bool",  "str"};
  for (const char* keyword : kKeywords) {
    if (text == keyword) {
      return true;
    }
  }
  return false;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  SyntaxTree ParseProgram() {
    SyntaxTree tree;
    while (Peek().kind != Tok::kEnd) {
      tree.functions.push_back(ParseFunction());
    }
    return tree;
  }

 private:
  const Token& Peek(std::size_t ahead = 0) const {
    std::size_t index = pos_ + ahead;
    return index < tokens_.size() ? tokens_[index] : tokens_.back();
  }

  bool IsPunct(const char* text, std::size_t ahead = 0) const {
    const Token& token = Peek(ahead);
    return token.kind == Tok::kPunct && token.text == text;
  }

  bool IsWord(const char* text) const {
    const Token& token = Peek();
    return token.kind == Tok::kIdent && token.text == text;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    const Token& token = Peek();
    std::string found = token.kind == Tok::kEnd ? "end of input"
                                                : "'" + token.text + "'";
    throw SyntaxError{token.offset, message + ", found " + found};
  }

  void ExpectPunct(const char* text) {
    if (!IsPunct(text)) {
      Fail(std::string("expected '") + text + "'");
    }
    ++pos_;
  }

  void ExpectWord(const char* text) {
    if (!IsWord(text)) {
      Fail(std::string("expected '") + text + "'");
    }
    ++pos_;
  }

  std::string ExpectIdentifier() {
    const Token& token = Peek();
    if (token.kind != Tok::kIdent || IsKeyword(token.text)) {
      Fail("expected identifier");
    }
    ++pos_;
    return token.text;
  }

  StaticType ParseType() {
    if (IsPunct("[")) {
      ++pos_;
      StaticType element = ParseType();
      ExpectPunct("]");
      return StaticType::ListOf(element);
    }
    if (IsWord("int")) {
      ++pos_;
      return StaticType::Int();
    }
    if (IsWord("bool")) {
      ++pos_;
      return StaticType::Bool();
    }
    if (IsWord("str")) {
      ++pos_;
      return StaticType::Str();
    }
    Fail("expected type");
  }

  Function ParseFunction() {
    ExpectWord("fn");
    Function function;
    function.name = ExpectIdentifier();
    ExpectPunct("(");
    if (!IsPunct(")")) {
      while (true) {
        Param param;
        param.name = ExpectIdentifier();
        ExpectPunct(":");
        param.type = ParseType();
        function.params.push_back(std::move(param));
        if (!IsPunct(",")) {
          break;
        }
        ++pos_;
      }
    }
    ExpectPunct(")");
    if (IsPunct("->")) {
      ++pos_;
      function.return_type = ParseType();
    }
    function.body = ParseBlock();
    return function;
  }

  std::vector<Stmt> ParseBlock() {
    ExpectPunct("{");
    std::vector<Stmt> block;
    while (!IsPunct("}")) {
      if (Peek().kind == Tok::kEnd) {
        Fail("expected '}'");
      }
      block.push_back(ParseStatement());
    }
    ++pos_;
    return block;
  }

  Stmt ParseIf() {
    ExpectWord("if");
    Stmt stmt;
    stmt.kind = StmtKind::kIf;
    stmt.expr = ParseExpr();
    stmt.body = ParseBlock();
    if (IsWord("else")) {
      ++pos_;
      if (IsWord("if")) {
        std::vector<Stmt> chained;
        chained.push_back(ParseIf());
        stmt.else_body = std::move(chained);
      } else {
        stmt.else_body = ParseBlock();
      }
    }
    return stmt;
  }

  Stmt ParseStatement() {
    Stmt stmt;
    if (IsWord("let")) {
      ++pos_;
      stmt.kind = StmtKind::kLet;
      stmt.name = ExpectIdentifier();
      ExpectPunct(":");
      stmt.declared_type = ParseType();
      ExpectPunct("=");
      stmt.expr = ParseExpr();
      ExpectPunct(";");
    } else if (IsWord("if")) {
      stmt = ParseIf();
    } else if (IsWord("while")) {
      ++pos_;
      stmt.kind = StmtKind::kWhile;
      stmt.expr = ParseExpr();
      stmt.body = ParseBlock();
    } else if (IsWord("return")) {
      ++pos_;
      stmt.kind = StmtKind::kReturn;
      if (!IsPunct(";")) {
        stmt.expr = ParseExpr();
      }
      ExpectPunct(";");
    } else if (IsPunct("{")) {
      stmt.kind = StmtKind::kBlock;
      stmt.body = ParseBlock();
    } else if (Peek().kind == Tok::kIdent && !IsKeyword(Peek().text) &&
               IsPunct("=", 1)) {
      stmt.kind = StmtKind::kAssign;
      stmt.name = ExpectIdentifier();
      ExpectPunct("=");
      stmt.expr = ParseExpr();
      ExpectPunct(";");
    } else {
      stmt.kind = StmtKind::kExpr;
      stmt.expr = ParseExpr();
      ExpectPunct(";");
    }
    return stmt;
  }

  // Binary operator levels, loosest first.
  static int Precedence(const Token& token, Op& op) {
    if (token.kind != Tok::kPunct) {
      return -1;
    }
    static const struct {
      const char* text;
      Op op;
      int level;
    } kTable[] = {
        {"||", Op::kOr, 0},  {"&&", Op::kAnd, 1}, {"==", Op::kEq, 2},
        {"!=", Op::kNe, 2},  {"<", Op::kLt, 3},   {"<=", Op::kLe, 3},
        {">", Op::kGt, 3},   {">=", Op::kGe, 3},  {"+", Op::kAdd, 4},
        {"-", Op::kSub, 4},  {"*", Op::kMul, 5},  {"/", Op::kDiv, 5},
        {"%", Op::kMod, 5},
    };
    for (const auto& entry : kTable) {
      if (token.text == entry.text) {
        op = entry.op;
        return entry.level;
      }
    }
    return -1;
  }

  Expr ParseExpr(int min_level = 0) {
    Expr lhs = ParseUnary();
    while (true) {
      Op op = Op::kNone;
      int level = Precedence(Peek(), op);
      if (level < min_level) {
        return lhs;
      }
      ++pos_;
      Expr rhs = ParseExpr(level + 1);
      lhs = Expr::Binary(op, std::move(lhs), std::move(rhs));
    }
  }

  Expr ParseUnary() {
    if (IsPunct("-")) {
      ++pos_;
      return Expr::Unary(Op::kNeg, ParseUnary());
    }
    if (IsPunct("!")) {
      ++pos_;
      return Expr::Unary(Op::kNot, ParseUnary());
    }
    return ParsePrimary();
  }

  std::vector<Expr> ParseList(const char* close) {
    std::vector<Expr> items;
    if (!IsPunct(close)) {
      while (true) {
        items.push_back(ParseExpr());
        if (!IsPunct(",")) {
          break;
        }
        ++pos_;
      }
    }
    ExpectPunct(close);
    return items;
  }

  Expr ParsePrimary() {
    const Token& token = Peek();
    switch (token.kind) {
      case Tok::kInt: {
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(
            token.text.data(), token.text.data() + token.text.size(), value);
        if (ec != std::errc()) {
          Fail("integer literal out of range");
        }
        ++pos_;
        return Expr::IntLit(value);
      }
      case Tok::kString:
        ++pos_;
        return Expr::StrLit(token.text);
      case Tok::kPunct:
        if (token.text == "(") {
          ++pos_;
          Expr inner = ParseExpr();
          ExpectPunct(")");
          return inner;
        }
        if (token.text == "[") {
          ++pos_;
          Expr list;
          list.kind = ExprKind::kListLit;
          list.operands = ParseList("]");
          return list;
        }
        Fail("expected expression");
      case Tok::kIdent: {
        if (token.text == "true" || token.text == "false") {
          ++pos_;
          return Expr::BoolLit(token.text == "true");
        }
        std::string name = ExpectIdentifier();
        if (!IsPunct("(")) {
          return Expr::VarRef(std::move(name));
        }
        ++pos_;
        std::vector<Expr> args = ParseList(")");
        Builtin builtin = LookupBuiltin(name);
        if (builtin != Builtin::kNone) {
          return Expr::BuiltinCall(builtin, std::move(args));
        }
        return Expr::Call(std::move(name), std::move(args));
      }
      case Tok::kEnd:
        break;
    }
    Fail("expected expression");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseResult Parse(std::string_view source) {
  ParseResult result;
  try {
    Parser parser(Lexer(source).Run());
    SyntaxTree tree = parser.ParseProgram();
    AssignStatementIds(tree);
    result.tree = std::move(tree);
  } catch (const SyntaxError& error) {
    Diagnostic diagnostic;
    diagnostic.kind = DiagnosticKind::kParseError;
    diagnostic.offset = error.offset;
    diagnostic.message = error.message;
    result.diagnostics.push_back(std::move(diagnostic));
  }
  return result;
}

}  // namespace sosieforge::minilang
