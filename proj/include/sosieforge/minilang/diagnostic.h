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

#ifndef SOSIEFORGE_MINILANG_DIAGNOSTIC_H_
#define SOSIEFORGE_MINILANG_DIAGNOSTIC_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sosieforge/minilang/ast.h"

namespace sosieforge::minilang {

enum class DiagnosticKind { kParseError, kTypeError, kReturnPathError, kNameError };

const char* DiagnosticKindName(DiagnosticKind kind);

struct Diagnostic {
  DiagnosticKind kind = DiagnosticKind::kParseError;
  // Source file, when known.
  std::string file;
  // Empty for parse errors outside any function.
  std::string function;
  std::optional<StatementId> statement;
  std::optional<std::size_t> offset;
  std::string message;

  // e.g. "TypeError in f (stmt 3): ..." or "ParseError at byte 12: ...".
  std::string ToString() const;
  bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

}  // namespace sosieforge::minilang

#endif  // SOSIEFORGE_MINILANG_DIAGNOSTIC_H_
