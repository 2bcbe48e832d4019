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

#include "sosieforge/runtime/interpreter.h"

#include <algorithm>
#include <random>
#include <string_view>
#include <unordered_map>

#include "sosieforge/runtime/value.h"

namespace sosieforge::runtime {

using minilang::Builtin;
using minilang::Expr;
using minilang::ExprKind;
using minilang::Function;
using minilang::Op;
using minilang::Stmt;
using minilang::StmtKind;

namespace {

constexpr std::size_t kMaxCapturedOutput = 1 << 16;
// Copying builtins charge one extra step per this many copied elements.
constexpr std::size_t kCopyUnitsPerStep = 64;

struct Trap {
  TestStatus status;
  std::string message;
};

std::string Signature(const Function& function) {
  std::string signature = function.name + "(";
  for (std::size_t i = 0; i < function.params.size(); ++i) {
    if (i > 0) {
      signature += ',';
    }
    signature += function.params[i].type.ToString();
  }
  signature += ")->" + function.return_type.ToString();
  return signature;
}

class Interpreter {
 public:
  Interpreter(const SyntaxTree& tree, const RunOptions& options)
      : options_(options) {
    for (const Function& function : tree.functions) {
      functions_.emplace(function.name, &function);
    }
    if (options_.trace) {
      trace_.emplace();
    }
  }

  TestRun Run(const std::string& test_name) {
    TestRun run;
    run.outcome.test = test_name;
    auto it = functions_.find(test_name);
    try {
      if (it == functions_.end()) {
        throw Trap{TestStatus::kRuntimeError,
                   "no test named '" + test_name + "'"};
      }
      Call(*it->second, {});
    } catch (const Trap& trap) {
      run.outcome.status = trap.status;
      run.outcome.message = trap.message;
    }
    run.outcome.steps = steps_;
    run.trace = std::move(trace_);
    run.output = std::move(output_);
    if (options_.coverage) {
      for (std::size_t i = 0; i < hits_.size(); ++i) {
        if (hits_[i]) {
          run.hits.push_back(StatementId{static_cast<std::int32_t>(i)});
        }
      }
    }
    return run;
  }

 private:
  void Tick(std::uint64_t count = 1) {
    if (options_.fuel - steps_ < count) {
      steps_ = options_.fuel;
      throw Trap{TestStatus::kTimeout, "fuel exhausted"};
    }
    steps_ += count;
  }

  [[noreturn]] static void Fail(std::string message) {
    throw Trap{TestStatus::kRuntimeError, std::move(message)};
  }

  void ChargeCopy(std::size_t elements) {
    if (elements > kMaxSequenceLength) {
      Fail("sequence length limit exceeded");
    }
    Tick(elements / kCopyUnitsPerStep);
  }

  Value* Lookup(std::string_view name) {
    for (std::size_t i = locals_.size(); i > frame_base_; --i) {
      if (locals_[i - 1].first == name) {
        return &locals_[i - 1].second;
      }
    }
    return nullptr;
  }

  Value Call(const Function& function, std::vector<Value> args) {
    if (depth_ >= kMaxCallDepth) {
      Fail("call depth limit exceeded in '" + function.name + "'");
    }
    if (trace_.has_value()) {
      auto [it, inserted] = signatures_.try_emplace(&function);
      if (inserted) {
        it->second = Signature(function);
      }
      trace_->calls.push_back(it->second);
    }
    std::size_t saved_base = frame_base_;
    std::size_t saved_size = locals_.size();
    frame_base_ = saved_size;
    for (std::size_t i = 0; i < function.params.size(); ++i) {
      locals_.emplace_back(function.params[i].name, std::move(args[i]));
    }
    ++depth_;
    bool returned = ExecBlock(function.body);
    --depth_;
    locals_.resize(saved_size);
    frame_base_ = saved_base;
    if (!returned && !function.return_type.IsVoid()) {
      Fail("'" + function.name + "' ended without returning a value");
    }
    Value result = std::move(return_value_);
    return_value_ = Value();
    return result;
  }

  // Returns true when a return statement was executed.
  bool ExecBlock(const std::vector<Stmt>& block) {
    std::size_t mark = locals_.size();
    for (const Stmt& stmt : block) {
      if (Exec(stmt)) {
        locals_.resize(mark);
        return true;
      }
    }
    locals_.resize(mark);
    return false;
  }

  void Hit(const Stmt& stmt) {
    if (!options_.coverage) {
      return;
    }
    auto index = static_cast<std::size_t>(stmt.id.value);
    if (index >= hits_.size()) {
      hits_.resize(index + 1, false);
    }
    hits_[index] = true;
  }

  void RecordControlPoint(const Stmt& stmt) {
    if (!trace_.has_value()) {
      return;
    }
    DataEvent event;
    event.point = stmt.id;
    for (std::size_t i = frame_base_; i < locals_.size(); ++i) {
      event.snapshot.emplace_back(locals_[i].first, locals_[i].second.Render());
    }
    std::sort(event.snapshot.begin(), event.snapshot.end());
    trace_->data.push_back(std::move(event));
  }

  bool Condition(const Stmt& stmt) {
    RecordControlPoint(stmt);
    return Eval(*stmt.expr).as_bool();
  }

  bool Exec(const Stmt& stmt) {
    Tick();
    Hit(stmt);
    switch (stmt.kind) {
      case StmtKind::kLet:
        locals_.emplace_back(stmt.name, Eval(*stmt.expr));
        return false;
      case StmtKind::kAssign: {
        Value value = Eval(*stmt.expr);
        Value* slot = Lookup(stmt.name);
        if (slot == nullptr) {
          Fail("unbound variable '" + stmt.name + "'");
        }
        *slot = std::move(value);
        return false;
      }
      case StmtKind::kExpr:
        Eval(*stmt.expr);
        return false;
      case StmtKind::kIf:
        if (Condition(stmt)) {
          return ExecBlock(stmt.body);
        }
        if (stmt.else_body.has_value()) {
          return ExecBlock(*stmt.else_body);
        }
        return false;
      case StmtKind::kWhile:
        while (Condition(stmt)) {
          if (ExecBlock(stmt.body)) {
            return true;
          }
        }
        return false;
      case StmtKind::kReturn:
        return_value_ = stmt.expr.has_value() ? Eval(*stmt.expr) : Value();
        return true;
      case StmtKind::kBlock:
        return ExecBlock(stmt.body);
    }
    return false;
  }

  static std::int64_t Arith(Op op, std::int64_t a, std::int64_t b) {
    std::int64_t result = 0;
    switch (op) {
      case Op::kAdd:
        if (__builtin_add_overflow(a, b, &result)) {
          Fail("integer overflow");
        }
        return result;
      case Op::kSub:
        if (__builtin_sub_overflow(a, b, &result)) {
          Fail("integer overflow");
        }
        return result;
      case Op::kMul:
        if (__builtin_mul_overflow(a, b, &result)) {
          Fail("integer overflow");
        }
        return result;
      case Op::kDiv:
      case Op::kMod:
        if (b == 0) {
          Fail("division by zero");
        }
        if (a == INT64_MIN && b == -1) {
          Fail("integer overflow");
        }
        return op == Op::kDiv ? a / b : a % b;
      default:
        Fail("malformed arithmetic");
    }
  }

  Value Eval(const Expr& expr) {
    Tick();
    switch (expr.kind) {
      case ExprKind::kIntLit:
        return Value::Int(expr.int_value);
      case ExprKind::kBoolLit:
        return Value::Bool(expr.bool_value);
      case ExprKind::kStrLit:
        return Value::Str(expr.text);
      case ExprKind::kListLit: {
        std::vector<Value> items;
        items.reserve(expr.operands.size());
        for (const Expr& element : expr.operands) {
          items.push_back(Eval(element));
        }
        return Value::List(std::move(items));
      }
      case ExprKind::kVarRef: {
        Value* slot = Lookup(expr.text);
        if (slot == nullptr) {
          Fail("unbound variable '" + expr.text + "'");
        }
        return *slot;
      }
      case ExprKind::kUnary: {
        Value operand = Eval(expr.operands[0]);
        if (expr.op == Op::kNot) {
          return Value::Bool(!operand.as_bool());
        }
        return Value::Int(Arith(Op::kSub, 0, operand.as_int()));
      }
      case ExprKind::kBinary:
        return EvalBinary(expr);
      case ExprKind::kCall: {
        auto it = functions_.find(expr.text);
        if (it == functions_.end()) {
          Fail("unknown function '" + expr.text + "'");
        }
        std::vector<Value> args;
        args.reserve(expr.operands.size());
        for (const Expr& arg : expr.operands) {
          args.push_back(Eval(arg));
        }
        return Call(*it->second, std::move(args));
      }
      case ExprKind::kBuiltin:
        return EvalBuiltin(expr);
    }
    Fail("malformed expression");
  }

  Value EvalBinary(const Expr& expr) {
    if (expr.op == Op::kAnd || expr.op == Op::kOr) {
      bool lhs = Eval(expr.operands[0]).as_bool();
      if (expr.op == Op::kAnd ? !lhs : lhs) {
        return Value::Bool(lhs);
      }
      return Value::Bool(Eval(expr.operands[1]).as_bool());
    }
    Value lhs = Eval(expr.operands[0]);
    Value rhs = Eval(expr.operands[1]);
    switch (expr.op) {
      case Op::kEq:
        return Value::Bool(lhs == rhs);
      case Op::kNe:
        return Value::Bool(!(lhs == rhs));
      case Op::kLt:
        return Value::Bool(lhs.as_int() < rhs.as_int());
      case Op::kLe:
        return Value::Bool(lhs.as_int() <= rhs.as_int());
      case Op::kGt:
        return Value::Bool(lhs.as_int() > rhs.as_int());
      case Op::kGe:
        return Value::Bool(lhs.as_int() >= rhs.as_int());
      default:
        return Value::Int(Arith(expr.op, lhs.as_int(), rhs.as_int()));
    }
  }

  static std::size_t Index(std::int64_t index, std::size_t size) {
    if (index < 0 || static_cast<std::uint64_t>(index) >= size) {
      Fail("index " + std::to_string(index) + " out of bounds for length " +
           std::to_string(size));
    }
    return static_cast<std::size_t>(index);
  }

  Value EvalBuiltin(const Expr& expr) {
    std::vector<Value> args;
    args.reserve(expr.operands.size());
    for (const Expr& arg : expr.operands) {
      args.push_back(Eval(arg));
    }
    switch (expr.builtin) {
      case Builtin::kPrint:
        if (output_.size() < kMaxCapturedOutput) {
          output_ += args[0].as_str();
          output_ += '\n';
        }
        return Value();
      case Builtin::kAssert:
        if (!args[0].as_bool()) {
          throw Trap{TestStatus::kAssertFail, "assertion failed"};
        }
        return Value();
      case Builtin::kLen:
        return Value::Int(static_cast<std::int64_t>(
            args[0].is_str() ? args[0].as_str().size()
                             : args[0].as_list().size()));
      case Builtin::kPush: {
        const auto& items = args[0].as_list();
        ChargeCopy(items.size() + 1);
        std::vector<Value> copy;
        copy.reserve(items.size() + 1);
        copy.insert(copy.end(), items.begin(), items.end());
        copy.push_back(std::move(args[1]));
        return Value::List(std::move(copy));
      }
      case Builtin::kConcat: {
        std::size_t length = args[0].as_str().size() + args[1].as_str().size();
        ChargeCopy(length);
        return Value::Str(args[0].as_str() + args[1].as_str());
      }
      case Builtin::kToStr:
        if (args[0].is_bool()) {
          return Value::Str(args[0].as_bool() ? "true" : "false");
        }
        return Value::Str(std::to_string(args[0].as_int()));
      case Builtin::kUuid:
        return Value::Str(options_.uuid ? options_.uuid() : RandomUuid());
      case Builtin::kGet: {
        const auto& items = args[0].as_list();
        return items[Index(args[1].as_int(), items.size())];
      }
      case Builtin::kSet: {
        const auto& items = args[0].as_list();
        std::size_t index = Index(args[1].as_int(), items.size());
        ChargeCopy(items.size());
        std::vector<Value> copy = items;
        copy[index] = std::move(args[2]);
        return Value::List(std::move(copy));
      }
      case Builtin::kSubstr: {
        const std::string& text = args[0].as_str();
        std::int64_t start = args[1].as_int();
        std::int64_t length = args[2].as_int();
        if (start < 0 || length < 0 ||
            static_cast<std::uint64_t>(start) > text.size() ||
            static_cast<std::uint64_t>(length) > text.size() - start) {
          Fail("substr(" + std::to_string(start) + ", " +
               std::to_string(length) + ") out of bounds for length " +
               std::to_string(text.size()));
        }
        ChargeCopy(static_cast<std::size_t>(length));
        return Value::Str(text.substr(static_cast<std::size_t>(start),
                                      static_cast<std::size_t>(length)));
      }
      case Builtin::kNone:
        break;
    }
    Fail("unknown builtin");
  }

  const RunOptions& options_;
  std::unordered_map<std::string_view, const Function*> functions_;
  std::unordered_map<const Function*, std::string> signatures_;
  std::vector<std::pair<std::string_view, Value>> locals_;
  std::size_t frame_base_ = 0;
  int depth_ = 0;
  std::uint64_t steps_ = 0;
  Value return_value_;
  std::optional<ExecutionTrace> trace_;
  std::vector<bool> hits_;
  std::string output_;
};

}  // namespace

const char* TestStatusName(TestStatus status) {
  switch (status) {
    case TestStatus::kPass:
      return "Pass";
    case TestStatus::kAssertFail:
      return "AssertFail";
    case TestStatus::kRuntimeError:
      return "RuntimeError";
    case TestStatus::kTimeout:
      return "Timeout";
  }
  return "";
}

std::string RandomUuid() {
  thread_local std::mt19937_64 engine{[] {
    std::random_device device;
    return (static_cast<std::uint64_t>(device()) << 32) ^ device();
  }()};
  static constexpr char kHex[] = "0123456789abcdef";
  std::string token;
  for (int word = 0; word < 2; ++word) {
    std::uint64_t bits = engine();
    for (int i = 0; i < 16; ++i) {
      token.push_back(kHex[bits & 0xf]);
      bits >>= 4;
    }
  }
  return token;
}

TestRun RunTest(const SyntaxTree& tree, const std::string& test_name,
                const RunOptions& options) {
  return Interpreter(tree, options).Run(test_name);
}

std::vector<std::string> TestNames(const SyntaxTree& tree) {
  std::vector<std::string> names;
  for (const Function& function : tree.functions) {
    if (function.IsTest()) {
      names.push_back(function.name);
    }
  }
  std::sort(names.begin(), names.end());
  return names;
}

bool SuiteResult::passed() const { return first_failure() == nullptr; }

const TestOutcome* SuiteResult::first_failure() const {
  for (const TestOutcome& outcome : outcomes) {
    if (!outcome.passed()) {
      return &outcome;
    }
  }
  return nullptr;
}

SuiteResult RunSuite(const SyntaxTree& tree, std::uint64_t fuel,
                     bool stop_at_first_failure, const UuidSource& uuid) {
  SuiteResult result;
  RunOptions options;
  options.fuel = fuel;
  options.uuid = uuid;
  std::vector<std::string> names = TestNames(tree);
  result.vacuous = names.empty();
  for (const std::string& name : names) {
    result.outcomes.push_back(RunTest(tree, name, options).outcome);
    if (stop_at_first_failure && !result.outcomes.back().passed()) {
      break;
    }
  }
  return result;
}

CoverageMap CoverageOfSuite(const SyntaxTree& tree, std::uint64_t fuel) {
  CoverageMap coverage;
  RunOptions options;
  options.fuel = fuel;
  options.coverage = true;
  for (const std::string& name : TestNames(tree)) {
    TestRun run = RunTest(tree, name, options);
    coverage.covered.insert(run.hits.begin(), run.hits.end());
    coverage.per_test.emplace(name, std::move(run.hits));
  }
  return coverage;
}

std::map<std::string, ExecutionTrace> CaptureTraces(const SyntaxTree& tree,
                                                    std::uint64_t fuel,
                                                    const UuidSource& uuid) {
  std::map<std::string, ExecutionTrace> traces;
  RunOptions options;
  options.fuel = fuel;
  options.trace = true;
  options.uuid = uuid;
  for (const std::string& name : TestNames(tree)) {
    traces.emplace(name, std::move(*RunTest(tree, name, options).trace));
  }
  return traces;
}

}  // namespace sosieforge::runtime
