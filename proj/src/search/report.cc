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

#include "sosieforge/search/report.h"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <variant>

namespace sosieforge::search {
namespace {

using Field = std::variant<std::uint64_t KindMetrics::*, double KindMetrics::*>;

struct NamedField {
  const char* name;
  Field field;
};

// Table column order: tested statements, candidates, variants, compilable,
// sosies, density, then bookkeeping.
const std::vector<NamedField>& Fields() {
  static const std::vector<NamedField> kFields = {
      {"tested_statements", &KindMetrics::tested_statements},
      {"tested_ratio", &KindMetrics::tested_ratio},
      {"candidates", &KindMetrics::candidates},
      {"variants", &KindMetrics::variants},
      {"compilable", &KindMetrics::compilable},
      {"compilable_ratio", &KindMetrics::compilable_ratio},
      {"sosies", &KindMetrics::sosies},
      {"sosie_density", &KindMetrics::sosie_density},
      {"degenerated", &KindMetrics::degenerated},
      {"ill_formed", &KindMetrics::ill_formed},
      {"attempts", &KindMetrics::attempts},
      {"no_candidate", &KindMetrics::no_candidate},
      {"duplicates", &KindMetrics::duplicates},
      {"test_steps", &KindMetrics::test_steps},
  };
  return kFields;
}

std::string ExactDouble(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

[[noreturn]] void Malformed(const std::string& path, const std::string& what) {
  throw ReportFormatError(path + ": " + what);
}

template <typename T>
T Get(const nlohmann::json& json, const char* key, const std::string& path) {
  std::string where = path + "/" + key;
  if (!json.is_object() || !json.contains(key)) {
    Malformed(where, "missing");
  }
  try {
    return json.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    Malformed(where, "wrong type");
  }
}

KindTiming KindTimingFromJson(const nlohmann::json& json,
                              const std::string& path) {
  return {Get<double>(json, "seconds", path),
          Get<double>(json, "sosies_per_hour", path)};
}

nlohmann::json ToJson(const KindTiming& timing) {
  return {{"seconds", timing.seconds},
          {"sosies_per_hour", timing.sosies_per_hour}};
}

}  // namespace

nlohmann::json ToJson(const KindMetrics& metrics) {
  nlohmann::json json = {{"kind", metrics.kind}};
  for (const NamedField& f : Fields()) {
    std::visit([&](auto member) { json[f.name] = metrics.*member; }, f.field);
  }
  return json;
}

KindMetrics KindMetricsFromJson(const nlohmann::json& json,
                                const std::string& path) {
  KindMetrics metrics;
  metrics.kind = Get<std::string>(json, "kind", path);
  for (const NamedField& f : Fields()) {
    std::visit(
        [&](auto member) {
          using T = std::remove_reference_t<decltype(metrics.*member)>;
          metrics.*member = Get<T>(json, f.name, path);
        },
        f.field);
  }
  return metrics;
}

nlohmann::json ToJson(const CampaignReport& report) {
  nlohmann::json per_kind = nlohmann::json::array();
  for (const KindMetrics& metrics : report.per_kind) {
    per_kind.push_back(ToJson(metrics));
  }
  return {{"program", report.program},
          {"corpus_hash", report.corpus_hash},
          {"config_hash", report.config_hash},
          {"seed", report.seed},
          {"budget", report.budget},
          {"fuel", report.fuel},
          {"kinds", report.kinds},
          {"eligible_points", report.eligible_points},
          {"attempts", report.attempts},
          {"per_kind", per_kind},
          {"total", ToJson(report.total)},
          {"warnings", report.warnings}};
}

CampaignReport ReportFromJson(const nlohmann::json& json) {
  CampaignReport report;
  report.program = Get<std::string>(json, "program", "");
  report.corpus_hash = Get<std::string>(json, "corpus_hash", "");
  report.config_hash = Get<std::string>(json, "config_hash", "");
  report.seed = Get<std::uint64_t>(json, "seed", "");
  report.budget = Get<std::uint64_t>(json, "budget", "");
  report.fuel = Get<std::uint64_t>(json, "fuel", "");
  report.kinds = Get<std::vector<std::string>>(json, "kinds", "");
  report.eligible_points = Get<std::uint64_t>(json, "eligible_points", "");
  report.attempts = Get<std::uint64_t>(json, "attempts", "");
  report.warnings = Get<std::vector<std::string>>(json, "warnings", "");
  auto rows = Get<nlohmann::json>(json, "per_kind", "");
  if (!rows.is_array()) {
    Malformed("/per_kind", "not an array");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    report.per_kind.push_back(
        KindMetricsFromJson(rows[i], "/per_kind/" + std::to_string(i)));
  }
  report.total = KindMetricsFromJson(Get<nlohmann::json>(json, "total", ""),
                                     "/total");
  return report;
}

nlohmann::json ToJson(const Timing& timing) {
  nlohmann::json per_kind = nlohmann::json::object();
  for (const auto& [kind, value] : timing.per_kind) {
    per_kind[kind] = ToJson(value);
  }
  return {{"note", "wall-clock figures are indicative"},
          {"per_kind", per_kind},
          {"total", ToJson(timing.total)},
          {"wall_seconds", timing.wall_seconds}};
}

Timing TimingFromJson(const nlohmann::json& json) {
  Timing timing;
  auto per_kind = Get<nlohmann::json>(json, "per_kind", "");
  if (!per_kind.is_object()) {
    Malformed("/per_kind", "not an object");
  }
  for (const auto& [kind, value] : per_kind.items()) {
    timing.per_kind[kind] = KindTimingFromJson(value, "/per_kind/" + kind);
  }
  timing.total =
      KindTimingFromJson(Get<nlohmann::json>(json, "total", ""), "/total");
  timing.wall_seconds = Get<double>(json, "wall_seconds", "");
  return timing;
}

std::string FormatPercent(double ratio) {
  long percent = std::lround(ratio * 100);
  if (percent == 0 && ratio > 0) {
    return "<1%";
  }
  return std::to_string(percent) + "%";
}

std::string RenderCsv(const CampaignReport& report, const Timing* timing) {
  std::ostringstream out;
  out << "kind";
  for (const NamedField& f : Fields()) {
    out << ',' << f.name;
  }
  out << ",sosies_per_hour\n";
  auto row = [&](const KindMetrics& metrics, const KindTiming* kind_timing) {
    out << metrics.kind;
    for (const NamedField& f : Fields()) {
      out << ',';
      if (auto member = std::get_if<double KindMetrics::*>(&f.field)) {
        out << ExactDouble(metrics.**member);
      } else {
        out << metrics.*std::get<std::uint64_t KindMetrics::*>(f.field);
      }
    }
    out << ',';
    if (kind_timing != nullptr) {
      out << ExactDouble(kind_timing->sosies_per_hour);
    }
    out << '\n';
  };
  for (const KindMetrics& metrics : report.per_kind) {
    const KindTiming* kind_timing = nullptr;
    if (timing != nullptr && timing->per_kind.contains(metrics.kind)) {
      kind_timing = &timing->per_kind.at(metrics.kind);
    }
    row(metrics, kind_timing);
  }
  row(report.total, timing != nullptr ? &timing->total : nullptr);
  return out.str();
}

std::vector<KindMetrics> ParseCsv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::vector<KindMetrics> rows;
  std::getline(in, line);
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream cells_in(line);
    std::string cell;
    while (std::getline(cells_in, cell, ',')) {
      cells.push_back(cell);
    }
    if (cells.size() < Fields().size() + 1) {
      throw ReportFormatError("csv line " + std::to_string(line_number) +
                              ": too few columns");
    }
    KindMetrics metrics;
    metrics.kind = cells[0];
    for (std::size_t i = 0; i < Fields().size(); ++i) {
      const std::string& text = cells[i + 1];
      try {
        if (auto member =
                std::get_if<double KindMetrics::*>(&Fields()[i].field)) {
          metrics.**member = std::stod(text);
        } else {
          metrics.*std::get<std::uint64_t KindMetrics::*>(Fields()[i].field) =
              std::stoull(text);
        }
      } catch (const std::exception&) {
        throw ReportFormatError("csv line " + std::to_string(line_number) +
                                ": bad " + Fields()[i].name);
      }
    }
    rows.push_back(metrics);
  }
  return rows;
}

std::string RenderTable(const CampaignReport& report, const Timing* timing) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-22s %14s %12s %9s %16s %8s %8s %10s\n",
                "transformation", "tested stmts", "candidates", "variants",
                "compilable", "sosies", "density", "sosies/h");
  out << "program " << report.program << ", seed " << report.seed
      << ", budget " << report.budget << ", eligible points "
      << report.eligible_points << "\n"
      << line;
  auto row = [&](const KindMetrics& m, const KindTiming* kind_timing) {
    std::string tested = std::to_string(m.tested_statements) + " (" +
                         FormatPercent(m.tested_ratio) + ")";
    std::string compilable = std::to_string(m.compilable) + " (" +
                             FormatPercent(m.compilable_ratio) + ")";
    std::string per_hour = "-";
    if (kind_timing != nullptr) {
      per_hour = std::to_string(std::llround(kind_timing->sosies_per_hour));
    }
    std::snprintf(line, sizeof(line),
                  "%-22s %14s %12llu %9llu %16s %8llu %8s %10s\n",
                  m.kind.c_str(), tested.c_str(),
                  static_cast<unsigned long long>(m.candidates),
                  static_cast<unsigned long long>(m.variants),
                  compilable.c_str(),
                  static_cast<unsigned long long>(m.sosies),
                  FormatPercent(m.sosie_density).c_str(), per_hour.c_str());
    out << line;
  };
  for (const KindMetrics& metrics : report.per_kind) {
    const KindTiming* kind_timing = nullptr;
    if (timing != nullptr && timing->per_kind.contains(metrics.kind)) {
      kind_timing = &timing->per_kind.at(metrics.kind);
    }
    row(metrics, kind_timing);
  }
  row(report.total, timing != nullptr ? &timing->total : nullptr);
  if (timing != nullptr) {
    out << "sosies/h is indicative and depends on this machine.\n";
  }
  for (const std::string& warning : report.warnings) {
    out << "warning: " << warning << "\n";
  }
  return out.str();
}

}  // namespace sosieforge::search
