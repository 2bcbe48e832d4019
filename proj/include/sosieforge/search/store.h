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

#ifndef SOSIEFORGE_SEARCH_STORE_H_
#define SOSIEFORGE_SEARCH_STORE_H_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "sosieforge/minilang/ast.h"
#include "sosieforge/search/campaign.h"

namespace sosieforge::search {

// Writes variant.mini, record.json and outcome.json into `dir`.
// Throws CampaignError(kIo) naming the failing path.
void PersistVariant(const std::filesystem::path& dir,
                    const minilang::SyntaxTree& variant,
                    const VariantOutcome& outcome);

void WriteTextFile(const std::filesystem::path& path,
                   const std::string& text);
std::string ReadTextFile(const std::filesystem::path& path);

struct StoredVariant {
  std::filesystem::path dir;
  std::string source;
  TransformationRecord record;
  nlohmann::json outcome;
};

StoredVariant LoadStoredVariant(const std::filesystem::path& dir);

// Every directory under `root` holding a record.json, in path order.
std::vector<std::filesystem::path> FindStoredVariants(
    const std::filesystem::path& root);

}  // namespace sosieforge::search

#endif  // SOSIEFORGE_SEARCH_STORE_H_
