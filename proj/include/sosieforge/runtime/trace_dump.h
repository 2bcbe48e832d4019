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

#ifndef SOSIEFORGE_RUNTIME_TRACE_DUMP_H_
#define SOSIEFORGE_RUNTIME_TRACE_DUMP_H_

#include <filesystem>
#include <map>
#include <string>

#include "sosieforge/runtime/interpreter.h"

namespace sosieforge::runtime {

// Line-oriented text form of a trace:
//   CALL <signature>
//   DATA <stmt-id> <name>=<rendered>;<name>=<rendered>;...
// Calls come first, then data events, each in execution order.
std::string DumpTrace(const ExecutionTrace& trace);

// Writes one <dir>/<test>.trace file per entry. Returns false on I/O failure.
bool WriteTraceDumps(const std::filesystem::path& dir,
                     const std::map<std::string, ExecutionTrace>& traces);

}  // namespace sosieforge::runtime

#endif  // SOSIEFORGE_RUNTIME_TRACE_DUMP_H_
