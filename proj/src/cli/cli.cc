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

#include "sosieforge/cli/cli.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sosieforge/diversity/diversity.h"
#include "sosieforge/minilang/corpus.h"
#include "sosieforge/minilang/statements.h"
#include "sosieforge/minilang/type_checker.h"
#include "sosieforge/reactions/index.h"
#include "sosieforge/runtime/interpreter.h"
#include "sosieforge/search/campaign.h"
#include "sosieforge/search/report.h"
#include "sosieforge/search/store.h"

namespace sosieforge::cli {
namespace {

// Raised by command handlers; carries the exit code.
struct Failure {
  int code;
  std::string message;
};

int ExitCodeFor(search::CampaignError::Category category) {
  switch (category) {
    case search::CampaignError::Category::kConfig:
      return kExitConfig;
    case search::CampaignError::Category::kCorpus:
      return kExitCorpus;
    case search::CampaignError::Category::kIo:
      return kExitIo;
  }
  return kExitConfig;
}

std::string Trim(const std::string& text) {
  std::size_t begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return "";
  }
  std::size_t end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

bool HasFlag(const std::vector<std::string>& args, const std::string& flag) {
  for (const std::string& arg : args) {
    if (arg == flag || arg.starts_with(flag + "=")) {
      return true;
    }
  }
  return false;
}

// Appends config-file settings that the command line does not override.
std::vector<std::string> MergeConfig(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].starts_with("--config=")) {
      path = args[i].substr(9);
    }
  }
  if (!path.has_value()) {
    return args;
  }
  std::vector<std::string> extra;
  try {
    extra = ReadConfigFile(*path);
  } catch (const std::runtime_error& e) {
    throw Failure{kExitConfig, e.what()};
  }
  for (std::size_t i = 0; i < extra.size(); ++i) {
    bool takes_value = i + 1 < extra.size() && !extra[i + 1].starts_with("--");
    if (!HasFlag(args, extra[i])) {
      args.push_back(extra[i]);
      if (takes_value) {
        args.push_back(extra[i + 1]);
      }
    }
    if (takes_value) {
      ++i;
    }
  }
  return args;
}

std::filesystem::path DefaultOut() {
  const char* env = std::getenv("SOSIEFORGE_OUT");
  return env != nullptr && *env != '\0' ? env : "out";
}

minilang::Corpus LoadValidCorpus(const std::filesystem::path& dir,
                                 std::uint64_t fuel) {
  minilang::Corpus corpus;
  try {
    corpus = minilang::LoadCorpus(dir);
  } catch (const minilang::CorpusIoError& e) {
    throw Failure{kExitIo, e.what()};
  }
  if (!corpus.parsed()) {
    throw Failure{kExitCorpus, corpus.diagnostics.front().ToString()};
  }
  minilang::Diagnostics diagnostics = minilang::TypeCheck(corpus.tree);
  if (!diagnostics.empty()) {
    minilang::AttributeToFiles(corpus, diagnostics);
    throw Failure{kExitCorpus, diagnostics.front().ToString()};
  }
  runtime::SuiteResult suite = runtime::RunSuite(corpus.tree, fuel);
  if (!suite.passed()) {
    throw Failure{kExitCorpus, "test suite fails on the original program: " +
                                   suite.first_failure()->test};
  }
  return corpus;
}

void WriteOrPrint(const std::string& path, const std::string& text,
                  std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  try {
    search::WriteTextFile(path, text);
  } catch (const search::CampaignError& e) {
    throw Failure{kExitIo, e.what()};
  }
}

struct SosiefyFlags {
  std::string corpus;
  std::uint64_t seed = 0;
  std::uint64_t budget = 1000;
  double budget_seconds = 0;
  std::vector<std::string> kinds;
  std::uint64_t fuel = runtime::kDefaultFuel;
  bool keep_all = false;
  std::string out;
  int workers = 1;
};

int Sosiefy(const SosiefyFlags& flags, std::ostream& out) {
  search::CampaignConfig config;
  config.corpus = flags.corpus;
  config.seed = flags.seed;
  config.budget = flags.budget;
  if (flags.budget_seconds > 0) {
    config.budget_seconds = flags.budget_seconds;
  }
  if (!flags.kinds.empty()) {
    config.kinds.clear();
    for (const std::string& name : flags.kinds) {
      auto kind = transforms::ParseKind(name);
      if (!kind.has_value()) {
        throw Failure{kExitConfig, "unknown transformation kind '" + name +
                                       "'"};
      }
      config.kinds.push_back(*kind);
    }
  }
  config.fuel = flags.fuel;
  config.keep_all = flags.keep_all;
  config.out = flags.out.empty() ? DefaultOut() : std::filesystem::path(flags.out);
  config.workers = flags.workers;
  search::CampaignResult result;
  try {
    result = search::RunCampaign(config);
  } catch (const search::CampaignError& e) {
    throw Failure{ExitCodeFor(e.category()), e.what()};
  }
  out << search::RenderTable(result.report, &result.timing);
  out << "results in " << (config.out / result.report.program).string()
      << "\n";
  return kExitOk;
}

struct DiversityFlags {
  std::string corpus;
  std::string pool;
  int runs = diversity::kDefaultRuns;
  std::string out;
  std::uint64_t fuel = runtime::kDefaultFuel;
  int workers = 1;
  std::uint64_t seed = 0;
};

int Diversity(const DiversityFlags& flags, std::ostream& out) {
  minilang::Corpus corpus = LoadValidCorpus(flags.corpus, flags.fuel);
  if (!std::filesystem::is_directory(flags.pool)) {
    throw Failure{kExitIo, "pool directory not found: " + flags.pool};
  }
  std::vector<diversity::PoolEntry> pool;
  try {
    pool = diversity::LoadPool(flags.pool);
  } catch (const search::CampaignError& e) {
    throw Failure{kExitIo, e.what()};
  }
  diversity::DiversityReport report = diversity::MeasureDiversity(
      corpus.tree, pool,
      {.fuel = flags.fuel, .runs = flags.runs, .workers = flags.workers});
  nlohmann::json json = report.ToJson();
  json["program"] = corpus.name;
  json["seed"] = flags.seed;
  WriteOrPrint(flags.out, json.dump(2) + "\n", out);
  if (!flags.out.empty() && flags.out != "-") {
    char line[160];
    std::snprintf(line, sizeof(line),
                  "%zu sosies: %.0f%% diverse, %.0f%% call diversity, %.0f%% "
                  "variable diversity, %zu excluded\n",
                  report.pool_size, report.any_percent, report.call_percent,
                  report.variable_percent, report.excluded.size());
    out << line;
  }
  return kExitOk;
}

struct ReportFlags {
  std::string report;
  std::string timing;
  std::string csv;
};

int Report(const ReportFlags& flags, std::ostream& out) {
  search::CampaignReport report;
  std::optional<search::Timing> timing;
  try {
    report = search::ReportFromJson(
        nlohmann::json::parse(search::ReadTextFile(flags.report)));
    std::filesystem::path timing_path =
        flags.timing.empty()
            ? std::filesystem::path(flags.report).parent_path() / "timing.json"
            : std::filesystem::path(flags.timing);
    if (!flags.timing.empty() || std::filesystem::exists(timing_path)) {
      timing = search::TimingFromJson(
          nlohmann::json::parse(search::ReadTextFile(timing_path)));
    }
  } catch (const search::CampaignError& e) {
    throw Failure{kExitIo, e.what()};
  } catch (const nlohmann::json::parse_error& e) {
    throw Failure{kExitIo, std::string("malformed JSON: ") + e.what()};
  } catch (const search::ReportFormatError& e) {
    throw Failure{kExitIo, std::string("report schema violation at ") +
                               e.what()};
  }
  const search::Timing* timing_ptr = timing ? &*timing : nullptr;
  out << search::RenderTable(report, timing_ptr);
  if (!flags.csv.empty()) {
    WriteOrPrint(flags.csv, search::RenderCsv(report, timing_ptr), out);
  }
  return kExitOk;
}

int ReactionsDump(const std::string& corpus_dir, const std::string& path,
                  std::ostream& out) {
  minilang::Corpus corpus;
  try {
    corpus = minilang::LoadCorpus(corpus_dir);
  } catch (const minilang::CorpusIoError& e) {
    throw Failure{kExitIo, e.what()};
  }
  if (!corpus.parsed() || !minilang::TypeCheck(corpus.tree).empty()) {
    throw Failure{kExitCorpus, "corpus does not type check: " + corpus_dir};
  }
  std::ostringstream text;
  reactions::DumpIndex(reactions::ReactionIndex::Build(corpus.tree), text);
  WriteOrPrint(path, text.str(), out);
  return kExitOk;
}

int CorpusCheckCommand(const std::string& dir, double threshold,
                       std::uint64_t fuel, std::ostream& out) {
  std::vector<std::filesystem::path> programs;
  if (std::filesystem::is_directory(std::filesystem::path(dir) / "src")) {
    programs.push_back(dir);
  } else if (std::filesystem::is_directory(dir)) {
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (std::filesystem::is_directory(entry.path() / "src")) {
        programs.push_back(entry.path());
      }
    }
    std::sort(programs.begin(), programs.end());
  }
  if (programs.empty()) {
    throw Failure{kExitIo, "no corpus program found in " + dir};
  }
  bool all_ok = true;
  for (const auto& program : programs) {
    CorpusCheck check;
    try {
      check = CheckCorpus(program, threshold, fuel);
    } catch (const minilang::CorpusIoError& e) {
      throw Failure{kExitIo, e.what()};
    }
    char line[160];
    std::snprintf(line, sizeof(line), "%s: %s (coverage %.1f%%, %zu/%zu)\n",
                  program.filename().string().c_str(),
                  check.ok ? "ok" : "FAILED", 100 * check.coverage,
                  check.covered, check.statements);
    out << line;
    for (const std::string& problem : check.problems) {
      out << "  " << problem << "\n";
    }
    all_ok = all_ok && check.ok;
  }
  return all_ok ? kExitOk : kExitCorpus;
}

}  // namespace

std::vector<std::string> ReadConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read config file " + path.string());
  }
  std::vector<std::string> args;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = Trim(line.substr(0, line.find('#')));
    if (line.empty()) {
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path.string() + ":" + std::to_string(number) +
                               ": expected key = value");
    }
    std::string key = Trim(line.substr(0, eq));
    std::string value = Trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    std::replace(key.begin(), key.end(), '_', '-');
    if (value == "true") {
      args.push_back("--" + key);
    } else if (value != "false") {
      args.push_back("--" + key);
      args.push_back(value);
    }
  }
  return args;
}

CorpusCheck CheckCorpus(const std::filesystem::path& dir, double threshold,
                        std::uint64_t fuel) {
  CorpusCheck check;
  minilang::Corpus corpus = minilang::LoadCorpus(dir);
  for (const auto& diagnostic : corpus.diagnostics) {
    check.problems.push_back(diagnostic.ToString());
  }
  if (!corpus.parsed()) {
    return check;
  }
  minilang::Diagnostics diagnostics = minilang::TypeCheck(corpus.tree);
  minilang::AttributeToFiles(corpus, diagnostics);
  for (const auto& diagnostic : diagnostics) {
    check.problems.push_back(diagnostic.ToString());
  }
  if (!diagnostics.empty()) {
    return check;
  }
  runtime::SuiteResult suite = runtime::RunSuite(corpus.tree, fuel);
  if (suite.vacuous) {
    check.problems.push_back("tests: no test functions");
  }
  for (const runtime::TestOutcome& outcome : suite.outcomes) {
    if (!outcome.passed()) {
      std::string file = corpus.function_file.contains(outcome.test)
                             ? corpus.function_file.at(outcome.test)
                             : "tests";
      check.problems.push_back(file + ": " + outcome.test + ": " +
                               runtime::TestStatusName(outcome.status) +
                               (outcome.message.empty()
                                    ? ""
                                    : " (" + outcome.message + ")"));
    }
  }
  runtime::CoverageMap coverage = runtime::CoverageOfSuite(corpus.tree, fuel);
  for (const auto& info : minilang::EnumerateStatements(corpus.tree)) {
    if (info.function.starts_with("test_")) {
      continue;
    }
    ++check.statements;
    check.covered += coverage.Covers(info.id) ? 1 : 0;
  }
  check.coverage = check.statements == 0
                       ? 0.0
                       : static_cast<double>(check.covered) /
                             static_cast<double>(check.statements);
  if (check.coverage < threshold) {
    char line[120];
    std::snprintf(line, sizeof(line),
                  "coverage: %.1f%% of statements, below the %.1f%% threshold",
                  100 * check.coverage, 100 * threshold);
    check.problems.push_back(line);
  }
  check.ok = check.problems.empty();
  return check;
}

int Run(const std::vector<std::string>& raw_args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Synthesizes and measures sosies of MiniLang programs.",
               "sosieforge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sosieforge 0.1.0");

  SosiefyFlags sosiefy;
  std::string ignored_config;
  CLI::App* sosiefy_cmd =
      app.add_subcommand("sosiefy", "Run a sosiefication campaign");
  sosiefy_cmd->add_option("--corpus", sosiefy.corpus, "Corpus program dir")
      ->required();
  sosiefy_cmd->add_option("--seed", sosiefy.seed, "Random seed");
  sosiefy_cmd->add_option("--budget", sosiefy.budget,
                          "Transformation attempts");
  sosiefy_cmd->add_option("--budget-seconds", sosiefy.budget_seconds,
                          "Also stop after this much wall time");
  sosiefy_cmd->add_option("--kinds", sosiefy.kinds,
                          "Comma-separated transformation kinds")
      ->delimiter(',');
  sosiefy_cmd->add_option("--fuel", sosiefy.fuel, "Interpreter steps per test");
  sosiefy_cmd->add_flag("--keep-all", sosiefy.keep_all,
                        "Store degenerated and ill-formed variants too");
  sosiefy_cmd->add_option("--out", sosiefy.out,
                          "Output root (default $SOSIEFORGE_OUT or ./out)");
  sosiefy_cmd->add_option("--workers", sosiefy.workers,
                          "Parallel variant evaluations");
  sosiefy_cmd->add_option("--config", ignored_config, "key = value file");

  DiversityFlags diversity_flags;
  CLI::App* diversity_cmd = app.add_subcommand(
      "diversity", "Measure computational diversity of stored sosies");
  diversity_cmd->add_option("--corpus", diversity_flags.corpus)->required();
  diversity_cmd->add_option("--pool", diversity_flags.pool,
                            "Directory of stored sosies")
      ->required();
  diversity_cmd->add_option("--runs", diversity_flags.runs,
                            "Runs of the original used for the noise mask")
      ->check(CLI::PositiveNumber);
  diversity_cmd->add_option("--out", diversity_flags.out,
                            "Report file (default stdout)");
  diversity_cmd->add_option("--fuel", diversity_flags.fuel);
  diversity_cmd->add_option("--workers", diversity_flags.workers);
  diversity_cmd->add_option("--seed", diversity_flags.seed);
  diversity_cmd->add_option("--config", ignored_config);

  ReportFlags report_flags;
  CLI::App* report_cmd =
      app.add_subcommand("report", "Render a campaign report.json as a table");
  report_cmd->add_option("report", report_flags.report, "report.json")
      ->required();
  report_cmd->add_option("--timing", report_flags.timing,
                         "timing.json (default: next to the report)");
  report_cmd->add_option("--csv", report_flags.csv,
                         "Also write CSV here ('-' for stdout)");
  report_cmd->add_option("--config", ignored_config);

  std::string dump_corpus;
  std::string dump_out;
  CLI::App* dump_cmd = app.add_subcommand(
      "reactions-dump", "Print the reaction of every statement as JSON lines");
  dump_cmd->add_option("--corpus", dump_corpus)->required();
  dump_cmd->add_option("--out", dump_out, "Output file (default stdout)");
  dump_cmd->add_option("--config", ignored_config);
  CLI::App* reactions_cmd =
      app.add_subcommand("reactions", "Reaction index tools");
  reactions_cmd->require_subcommand(1);
  CLI::App* nested_dump = reactions_cmd->add_subcommand(
      "dump", "Print the reaction of every statement as JSON lines");
  nested_dump->add_option("--corpus", dump_corpus)->required();
  nested_dump->add_option("--out", dump_out);
  nested_dump->add_option("--config", ignored_config);

  std::string check_corpus;
  double threshold = 0.7;
  std::uint64_t check_fuel = runtime::kDefaultFuel;
  CLI::App* check_cmd = app.add_subcommand(
      "corpus-check", "Validate corpus programs, suites and coverage");
  check_cmd->add_option("--corpus", check_corpus,
                        "A program dir or a dir of programs")
      ->required();
  check_cmd->add_option("--coverage-threshold", threshold,
                        "Minimum statement coverage, as a fraction")
      ->check(CLI::Range(0.0, 1.0));
  check_cmd->add_option("--fuel", check_fuel);
  check_cmd->add_option("--config", ignored_config);

  try {
    std::vector<std::string> args = MergeConfig(raw_args);
    std::vector<const char*> argv;
    for (const std::string& arg : args) {
      argv.push_back(arg.c_str());
    }
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitConfig;
    }
    if (sosiefy_cmd->parsed()) {
      return Sosiefy(sosiefy, out);
    }
    if (diversity_cmd->parsed()) {
      return Diversity(diversity_flags, out);
    }
    if (report_cmd->parsed()) {
      return Report(report_flags, out);
    }
    if (dump_cmd->parsed() || nested_dump->parsed()) {
      return ReactionsDump(dump_corpus, dump_out, out);
    }
    if (check_cmd->parsed()) {
      return CorpusCheckCommand(check_corpus, threshold, check_fuel, out);
    }
  } catch (const Failure& failure) {
    err << "sosieforge: " << failure.message << "\n";
    return failure.code;
  }
  return kExitConfig;
}

}  // namespace sosieforge::cli
