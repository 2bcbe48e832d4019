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

#include "sosieforge/search/store.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "sosieforge/minilang/printer.h"

namespace sosieforge::search {
namespace {

[[noreturn]] void IoFailure(const std::filesystem::path& path,
                            const std::string& what) {
  throw CampaignError(CampaignError::Category::kIo,
                      what + ": " + path.string());
}

nlohmann::json ParseJsonFile(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(ReadTextFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    IoFailure(path, std::string("malformed JSON (") + e.what() + ")");
  }
}

}  // namespace

void WriteTextFile(const std::filesystem::path& path,
                   const std::string& text) {
  std::error_code error;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), error);
    if (error) {
      IoFailure(path.parent_path(), "cannot create directory");
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) {
    IoFailure(path, "cannot write");
  }
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    IoFailure(path, "cannot read");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void PersistVariant(const std::filesystem::path& dir,
                    const minilang::SyntaxTree& variant,
                    const VariantOutcome& outcome) {
  WriteTextFile(dir / "variant.mini", minilang::PrettyPrint(variant));
  WriteTextFile(dir / "record.json",
                outcome.attempt.record->ToJson().dump(2) + "\n");
  nlohmann::json classification = outcome.classification.ToJson();
  classification["attempt"] = outcome.attempt.index;
  WriteTextFile(dir / "outcome.json", classification.dump(2) + "\n");
}

StoredVariant LoadStoredVariant(const std::filesystem::path& dir) {
  StoredVariant stored;
  stored.dir = dir;
  stored.source = ReadTextFile(dir / "variant.mini");
  try {
    stored.record =
        TransformationRecord::FromJson(ParseJsonFile(dir / "record.json"));
  } catch (const std::invalid_argument& e) {
    IoFailure(dir / "record.json", e.what());
  }
  stored.outcome = ParseJsonFile(dir / "outcome.json");
  return stored;
}

std::vector<std::filesystem::path> FindStoredVariants(
    const std::filesystem::path& root) {
  std::vector<std::filesystem::path> dirs;
  std::error_code error;
  auto it = std::filesystem::recursive_directory_iterator(root, error);
  if (error) {
    IoFailure(root, "cannot list");
  }
  for (const auto& entry : it) {
    if (entry.is_regular_file() && entry.path().filename() == "record.json") {
      dirs.push_back(entry.path().parent_path());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

}  // namespace sosieforge::search
