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

#ifndef SOSIEFORGE_SEARCH_REPORT_H_
#define SOSIEFORGE_SEARCH_REPORT_H_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace sosieforge::search {

// One row of the campaign table; `kind` is "total" for the summary row.
struct KindMetrics {
  std::string kind;
  std::uint64_t attempts = 0;
  std::uint64_t no_candidate = 0;
  std::uint64_t duplicates = 0;
  // Distinct points on which the kind produced a variant.
  std::uint64_t tested_statements = 0;
  // Over the eligible points.
  double tested_ratio = 0;
  std::uint64_t candidates = 0;
  std::uint64_t variants = 0;
  std::uint64_t compilable = 0;
  double compilable_ratio = 0;
  std::uint64_t sosies = 0;
  std::uint64_t degenerated = 0;
  std::uint64_t ill_formed = 0;
  double sosie_density = 0;
  std::uint64_t test_steps = 0;

  bool operator==(const KindMetrics&) const = default;
};

// Deterministic part of a campaign's results. Wall time lives in Timing.
struct CampaignReport {
  std::string program;
  std::string corpus_hash;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  std::uint64_t fuel = 0;
  std::vector<std::string> kinds;
  std::uint64_t eligible_points = 0;
  std::uint64_t attempts = 0;
  std::vector<KindMetrics> per_kind;
  KindMetrics total;
  std::vector<std::string> warnings;

  bool operator==(const CampaignReport&) const = default;
};

struct KindTiming {
  double seconds = 0;
  // Indicative only: depends on this machine's speed.
  double sosies_per_hour = 0;

  bool operator==(const KindTiming&) const = default;
};

struct Timing {
  std::map<std::string, KindTiming> per_kind;
  KindTiming total;
  double wall_seconds = 0;
};

class ReportFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json ToJson(const KindMetrics& metrics);
nlohmann::json ToJson(const CampaignReport& report);
nlohmann::json ToJson(const Timing& timing);
// Throws ReportFormatError naming the offending JSON path.
KindMetrics KindMetricsFromJson(const nlohmann::json& json,
                                const std::string& path = "");
CampaignReport ReportFromJson(const nlohmann::json& json);
Timing TimingFromJson(const nlohmann::json& json);

// Integer percent; "<1%" for nonzero values that would round to 0.
std::string FormatPercent(double ratio);

// Per-kind rows plus the total row. Timing columns are empty when absent.
std::string RenderCsv(const CampaignReport& report, const Timing* timing);
// Parses the rows written by RenderCsv, total row last.
std::vector<KindMetrics> ParseCsv(const std::string& csv);
// Fixed-width table in the column order of RenderCsv.
std::string RenderTable(const CampaignReport& report, const Timing* timing);

}  // namespace sosieforge::search

#endif  // SOSIEFORGE_SEARCH_REPORT_H_
