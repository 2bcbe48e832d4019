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

#ifndef SOSIEFORGE_CLI_CLI_H_
#define SOSIEFORGE_CLI_CLI_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace sosieforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCorpus = 3;
inline constexpr int kExitIo = 4;

// Entry point of the sosieforge command; returns the process exit code.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

struct CorpusCheck {
  bool ok = false;
  double coverage = 0;
  std::size_t statements = 0;
  std::size_t covered = 0;
  // One line per problem, prefixed with the file or test it concerns.
  std::vector<std::string> problems;
};

CorpusCheck CheckCorpus(const std::filesystem::path& dir, double threshold,
                        std::uint64_t fuel);

// Reads `key = value` lines ('#' starts a comment) into `--key value`
// arguments. Throws std::runtime_error on unreadable files or bad lines.
std::vector<std::string> ReadConfigFile(const std::filesystem::path& path);

}  // namespace sosieforge::cli

#endif  // SOSIEFORGE_CLI_CLI_H_
