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

#ifndef SOSIEFORGE_MINILANG_PRINTER_H_
#define SOSIEFORGE_MINILANG_PRINTER_H_

#include <string>

#include "sosieforge/minilang/ast.h"

namespace sosieforge::minilang {

// Canonical source form: two-space indentation, one statement per line,
// minimal parentheses, functions separated by a blank line.
std::string PrettyPrint(const SyntaxTree& tree);
std::string PrettyPrint(const Function& function);
std::string PrettyPrint(const Stmt& stmt, int indent = 0);
std::string PrettyPrint(const Expr& expr);

// Quoted, escaped string literal as it appears in source.
std::string QuoteString(const std::string& value);

}  // namespace sosieforge::minilang

#endif  // SOSIEFORGE_MINILANG_PRINTER_H_
