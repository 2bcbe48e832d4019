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

#include "test_util.h"

#include <fstream>

#include <unistd.h>

#include "gtest/gtest.h"
#include "sosieforge/minilang/parser.h"

namespace sosieforge::testing {

minilang::Corpus LoadBundled(const std::string& program) {
  minilang::Corpus corpus = minilang::LoadCorpus(CorpusPath(program));
  EXPECT_TRUE(corpus.parsed()) << program;
  for (const auto& diagnostic : corpus.diagnostics) {
    ADD_FAILURE() << diagnostic.ToString();
  }
  return corpus;
}

minilang::SyntaxTree ParseOrDie(const std::string& source) {
  minilang::ParseResult result = minilang::Parse(source);
  for (const auto& diagnostic : result.diagnostics) {
    ADD_FAILURE() << diagnostic.ToString() << "\n" << source;
  }
  return result.ok() ? std::move(*result.tree) : minilang::SyntaxTree{};
}

std::filesystem::path ScratchDir(const std::string& name) {
  std::filesystem::path dir = std::filesystem::temp_directory_path() /
                              ("sosieforge-" + std::to_string(getpid())) /
                              name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::filesystem::path WriteCorpus(const std::string& name,
                                  const std::string& source,
                                  const std::string& tests) {
  std::filesystem::path root = ScratchDir(name) / name;
  std::filesystem::create_directories(root / "src");
  std::filesystem::create_directories(root / "tests");
  std::ofstream(root / "src" / "main.mini") << source;
  std::ofstream(root / "tests" / "main_test.mini") << tests;
  return root;
}

}  // namespace sosieforge::testing
