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

#include "sosieforge/minilang/diagnostic.h"

#include <sstream>

namespace sosieforge::minilang {

const char* DiagnosticKindName(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::kParseError:
      return "ParseError";
    case DiagnosticKind::kTypeError:
      return "TypeError";
    case DiagnosticKind::kReturnPathError:
      return "ReturnPathError";
    case DiagnosticKind::kNameError:
      return "NameError";
  }
  return "";
}

std::string Diagnostic::ToString() const {
  std::ostringstream out;
  if (!file.empty()) {
    out << file << ": ";
  }
  out << DiagnosticKindName(kind);
  if (offset.has_value()) {
    out << " at byte " << *offset;
  }
  if (!function.empty()) {
    out << " in " << function;
  }
  if (statement.has_value()) {
    out << " (stmt " << statement->value << ")";
  }
  out << ": " << message;
  return out.str();
}

}  // namespace sosieforge::minilang
