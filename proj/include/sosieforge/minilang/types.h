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

#ifndef SOSIEFORGE_MINILANG_TYPES_H_
#define SOSIEFORGE_MINILANG_TYPES_H_

#include <compare>
#include <memory>
#include <string>

namespace sosieforge::minilang {

// A MiniLang static type. Void is only legal as a function return type or as
// a reaction's output context.
class StaticType {
 public:
  enum class Kind { kInt, kBool, kStr, kList, kVoid };

  StaticType() : kind_(Kind::kVoid) {}

  static StaticType Int() { return StaticType(Kind::kInt); }
  static StaticType Bool() { return StaticType(Kind::kBool); }
  static StaticType Str() { return StaticType(Kind::kStr); }
  static StaticType Void() { return StaticType(Kind::kVoid); }
  // `element` must not be Void.
  static StaticType ListOf(const StaticType& element);

  Kind kind() const { return kind_; }
  bool IsVoid() const { return kind_ == Kind::kVoid; }
  bool IsList() const { return kind_ == Kind::kList; }
  // Only valid for list types.
  const StaticType& element() const { return *element_; }

  // Surface syntax: int, bool, str, [T]; Void renders as "void".
  std::string ToString() const;

  friend bool operator==(const StaticType& a, const StaticType& b);
  friend std::strong_ordering operator<=>(const StaticType& a,
                                          const StaticType& b);

 private:
  explicit StaticType(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::shared_ptr<const StaticType> element_;
};

}  // namespace sosieforge::minilang

#endif  // SOSIEFORGE_MINILANG_TYPES_H_
