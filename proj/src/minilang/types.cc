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

#include "sosieforge/minilang/types.h"

#include <cassert>

namespace sosieforge::minilang {

StaticType StaticType::ListOf(const StaticType& element) {
  assert(!element.IsVoid());
  StaticType result(Kind::kList);
  result.element_ = std::make_shared<const StaticType>(element);
  return result;
}

std::string StaticType::ToString() const {
  switch (kind_) {
    case Kind::kInt:
      return "int";
    case Kind::kBool:
      return "bool";
    case Kind::kStr:
      return "str";
    case Kind::kList:
      return "[" + element_->ToString() + "]";
    case Kind::kVoid:
      return "void";
  }
  return "void";
}

bool operator==(const StaticType& a, const StaticType& b) {
  if (a.kind_ != b.kind_) {
    return false;
  }
  if (a.kind_ == StaticType::Kind::kList) {
    return *a.element_ == *b.element_;
  }
  return true;
}

std::strong_ordering operator<=>(const StaticType& a, const StaticType& b) {
  if (auto cmp = a.kind_ <=> b.kind_; cmp != 0) {
    return cmp;
  }
  if (a.kind_ == StaticType::Kind::kList) {
    return *a.element_ <=> *b.element_;
  }
  return std::strong_ordering::equal;
}

}  // namespace sosieforge::minilang
