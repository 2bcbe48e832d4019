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

#ifndef SOSIEFORGE_MINILANG_PARSER_H_
#define SOSIEFORGE_MINILANG_PARSER_H_

#include <optional>
#include <string_view>

#include "sosieforge/minilang/ast.h"
#include "sosieforge/minilang/diagnostic.h"

namespace sosieforge::minilang {

struct ParseResult {
  std::optional<SyntaxTree> tree;
  Diagnostics diagnostics;

  bool ok() const { return tree.has_value(); }
};

// Parses MiniLang source. Statement ids of the returned tree are assigned.
// Failure yields a single ParseError carrying the byte offset of the
// offending token.
ParseResult Parse(std::string_view source);

}  // namespace sosieforge::minilang

#endif  // SOSIEFORGE_MINILANG_PARSER_H_
