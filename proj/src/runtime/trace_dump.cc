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

#include "sosieforge/runtime/trace_dump.h"

#include <fstream>

namespace sosieforge::runtime {

std::string DumpTrace(const ExecutionTrace& trace) {
  std::string out;
  for (const std::string& call : trace.calls) {
    out += "CALL " + call + "\n";
  }
  for (const DataEvent& event : trace.data) {
    out += "DATA " + std::to_string(event.point.value) + " ";
    for (const auto& [name, rendered] : event.snapshot) {
      out += name + "=" + rendered + ";";
    }
    out += "\n";
  }
  return out;
}

bool WriteTraceDumps(const std::filesystem::path& dir,
                     const std::map<std::string, ExecutionTrace>& traces) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return false;
  }
  for (const auto& [test, trace] : traces) {
    std::ofstream out(dir / (test + ".trace"), std::ios::binary);
    out << DumpTrace(trace);
    if (!out) {
      return false;
    }
  }
  return true;
}

}  // namespace sosieforge::runtime
