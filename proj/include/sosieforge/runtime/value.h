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

#ifndef SOSIEFORGE_RUNTIME_VALUE_H_
#define SOSIEFORGE_RUNTIME_VALUE_H_

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace sosieforge::runtime {

class Value;

// Lists are immutable once built and shared between copies of a value.
using ListStorage = std::shared_ptr<const std::vector<Value>>;

class Value {
 public:
  Value() : data_(std::int64_t{0}) {}
  static Value Int(std::int64_t v) { return Value(Data(v)); }
  static Value Bool(bool v) { return Value(Data(v)); }
  static Value Str(std::string v) { return Value(Data(std::move(v))); }
  static Value List(std::vector<Value> items);
  static Value List(ListStorage items) { return Value(Data(std::move(items))); }

  bool is_int() const { return std::holds_alternative<std::int64_t>(data_); }
  bool is_bool() const { return std::holds_alternative<bool>(data_); }
  bool is_str() const { return std::holds_alternative<std::string>(data_); }
  bool is_list() const { return std::holds_alternative<ListStorage>(data_); }

  std::int64_t as_int() const { return std::get<std::int64_t>(data_); }
  bool as_bool() const { return std::get<bool>(data_); }
  const std::string& as_str() const { return std::get<std::string>(data_); }
  const std::vector<Value>& as_list() const {
    return *std::get<ListStorage>(data_);
  }
  const ListStorage& list_storage() const {
    return std::get<ListStorage>(data_);
  }

  // Canonical text form: 42, true, "quoted", [1, 2].
  std::string Render() const;
  void RenderTo(std::string& out) const;

  friend bool operator==(const Value& a, const Value& b);

 private:
  using Data = std::variant<std::int64_t, bool, std::string, ListStorage>;
  explicit Value(Data data) : data_(std::move(data)) {}

  Data data_;
};

}  // namespace sosieforge::runtime

#endif  // SOSIEFORGE_RUNTIME_VALUE_H_
