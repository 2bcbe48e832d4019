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

#ifndef SOSIEFORGE_MINILANG_CORPUS_H_
#define SOSIEFORGE_MINILANG_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sosieforge/minilang/ast.h"
#include "sosieforge/minilang/diagnostic.h"

namespace sosieforge::minilang {

// Raised when a corpus directory cannot be read.
class CorpusIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SourceFile {
  // Relative to the corpus root, e.g. "src/strings.mini".
  std::string relative_path;
  std::string text;
};

// One program laid out as <root>/src/*.mini and <root>/tests/*.mini. All
// files are merged into a single tree: application files first, then test
// files, each group in file-name order.
struct Corpus {
  std::string name;
  std::filesystem::path root;
  std::vector<SourceFile> files;
  std::map<std::string, std::string> function_file;
  // Only meaningful when `diagnostics` holds no parse errors.
  SyntaxTree tree;
  // Parse errors and layout violations, tagged with their file.
  Diagnostics diagnostics;

  bool parsed() const { return diagnostics.empty(); }
  // FNV-1a over every file's relative path and contents.
  std::uint64_t Hash() const;
};

// Throws CorpusIoError when the layout is missing or unreadable.
Corpus LoadCorpus(const std::filesystem::path& root);

// Tags each diagnostic with the file that defines its function.
void AttributeToFiles(const Corpus& corpus, Diagnostics& diagnostics);

std::uint64_t Fnv1a(std::string_view bytes,
                    std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace sosieforge::minilang

#endif  // SOSIEFORGE_MINILANG_CORPUS_H_
