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

#include "sosieforge/runtime/value.h"

#include "sosieforge/minilang/printer.h"

namespace sosieforge::runtime {

Value Value::List(std::vector<Value> items) {
  return Value(Data(
      std::make_shared<const std::vector<Value>>(std::move(items))));
}

std::string Value::Render() const {
  std::string out;
  RenderTo(out);
  return out;
}

void Value::RenderTo(std::string& out) const {
  if (is_int()) {
    out += std::to_string(as_int());
  } else if (is_bool()) {
    out += as_bool() ? "true" : "false";
  } else if (is_str()) {
    out += minilang::QuoteString(as_str());
  } else {
    out += '[';
    const auto& items = as_list();
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0) {
        out += ", ";
      }
      items[i].RenderTo(out);
    }
    out += ']';
  }
}

bool operator==(const Value& a, const Value& b) {
  if (a.data_.index() != b.data_.index()) {
    return false;
  }
  if (a.is_list()) {
    return a.list_storage() == b.list_storage() || a.as_list() == b.as_list();
  }
  return a.data_ == b.data_;
}

}  // namespace sosieforge::runtime
