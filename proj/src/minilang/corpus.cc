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

#include "sosieforge/minilang/corpus.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "sosieforge/minilang/parser.h"
#include "sosieforge/minilang/statements.h"

namespace sosieforge::minilang {

namespace fs = std::filesystem;

namespace {

std::vector<fs::path> MiniFiles(const fs::path& dir) {
  std::vector<fs::path> files;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw CorpusIoError("missing corpus directory " + dir.string());
  }
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".mini") {
      files.push_back(entry.path());
    }
  }
  if (ec) {
    throw CorpusIoError("cannot list " + dir.string() + ": " + ec.message());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CorpusIoError("cannot read " + path.string());
  }
  std::ostringstream contents;
  contents << in.rdbuf();
  return contents.str();
}

}  // namespace

std::uint64_t Fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t hash = seed;
  for (char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t Corpus::Hash() const {
  std::uint64_t hash = Fnv1a("");
  for (const SourceFile& file : files) {
    hash = Fnv1a(file.relative_path, hash);
    hash = Fnv1a(std::string_view("\0", 1), hash);
    hash = Fnv1a(file.text, hash);
  }
  return hash;
}

Corpus LoadCorpus(const fs::path& root) {
  Corpus corpus;
  corpus.root = root;
  corpus.name = fs::absolute(root).lexically_normal().filename().string();
  if (corpus.name.empty()) {
    corpus.name = fs::absolute(root).lexically_normal().parent_path()
                      .filename().string();
  }
  for (const char* group : {"src", "tests"}) {
    bool is_test_group = std::string(group) == "tests";
    for (const fs::path& path : MiniFiles(root / group)) {
      SourceFile file{std::string(group) + "/" + path.filename().string(),
                      ReadFile(path)};
      ParseResult parsed = Parse(file.text);
      if (!parsed.ok()) {
        for (Diagnostic diagnostic : parsed.diagnostics) {
          diagnostic.file = file.relative_path;
          corpus.diagnostics.push_back(std::move(diagnostic));
        }
      } else {
        for (Function& function : parsed.tree->functions) {
          if (function.IsTest() != is_test_group) {
            Diagnostic diagnostic;
            diagnostic.kind = DiagnosticKind::kNameError;
            diagnostic.file = file.relative_path;
            diagnostic.function = function.name;
            diagnostic.message =
                is_test_group ? "test files may only define test_ functions"
                              : "test_ functions belong under tests/";
            corpus.diagnostics.push_back(std::move(diagnostic));
          }
          corpus.function_file.emplace(function.name, file.relative_path);
          corpus.tree.functions.push_back(std::move(function));
        }
      }
      corpus.files.push_back(std::move(file));
    }
  }
  AssignStatementIds(corpus.tree);
  return corpus;
}

void AttributeToFiles(const Corpus& corpus, Diagnostics& diagnostics) {
  for (Diagnostic& diagnostic : diagnostics) {
    auto it = corpus.function_file.find(diagnostic.function);
    if (diagnostic.file.empty() && it != corpus.function_file.end()) {
      diagnostic.file = it->second;
    }
  }
}

}  // namespace sosieforge::minilang
