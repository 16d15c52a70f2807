#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "namefit/binning.hpp"
#include "namefit/corpus.hpp"
#include "namefit/inference.hpp"

namespace namefit {

enum class Variable { frequency, origin };
enum class ExpectedFit { fit, not_fit, na };

struct CorpusSpec {
  std::string tag;
  std::filesystem::path path;
  RecordFilter filter;
};

// One designed test: a test sample compared against a reference on either
// name frequency (binned) or name origin (categorical).
struct ScenarioConfig {
  std::string id;
  std::string test_source;
  std::string reference_source;
  Variable variable = Variable::frequency;
  ExpectedFit expected_fit = ExpectedFit::fit;
  bool subtract_from_reference = false;
  bool merge_semitic = false;
  std::size_t k = 6;
  std::optional<std::vector<double>> alternative;  // enables a power report
};

struct SuiteConfig {
  double alpha = 0.05;
  std::vector<CorpusSpec> corpora;
  std::vector<ScenarioConfig> scenarios;
};

// Relative corpus paths resolve against `base_dir`. Throws DataError on
// schema problems.
SuiteConfig parse_suite_config(const nlohmann::json& j, const std::filesystem::path& base_dir);
SuiteConfig load_suite_config(const std::filesystem::path& path);

using CorpusMap = std::map<std::string, std::vector<OccurrenceRecord>>;

struct LoadedCorpora {
  CorpusMap records;  // filtered
  std::map<std::string, std::vector<RowRejection>> rejections;
};

LoadedCorpora load_corpora(const SuiteConfig& config);

struct ScenarioResult {
  ScenarioConfig config;
  bool skipped = false;  // expected_fit == na
  GofResult gof;
  std::optional<GofResult> independence;
  std::optional<BinSpec> bins;
  std::vector<std::string> labels;
  std::vector<std::int64_t> observed;
  std::vector<double> expected;
  std::vector<std::string> dropped_categories;
  std::int64_t dropped_observations = 0;
  std::int64_t test_n = 0;
  std::int64_t reference_n = 0;
  bool subtraction_exact = true;
  std::vector<std::string> subtraction_diagnostics;
  std::optional<PowerResult> power;
  bool fits = false;                 // p >= Bonferroni-adjusted benchmark
  std::optional<bool> matched;       // fits agrees with expected_fit
};

struct SuiteResult {
  Benchmark benchmark;
  std::vector<ScenarioResult> scenarios;  // config order
  int compared = 0;
  int matched = 0;
};

// Runs every non-NA scenario, in parallel up to `jobs` threads. The
// Bonferroni family size is the number of non-NA scenarios.
SuiteResult run_suite(const SuiteConfig& config, const CorpusMap& corpora, int jobs = 1);

// A single scenario outside a suite, compared against `benchmark`.
ScenarioResult run_scenario(const ScenarioConfig& scenario, const CorpusMap& corpora,
                            const Benchmark& benchmark);

nlohmann::json to_json(const SuiteResult& result);
// Rows are reference x variable, columns are test sources in first-seen
// order. Cells hold p-values floored at kPValueFloor, or NA.
void write_matrix_csv(std::ostream& out, const SuiteResult& result);

std::string_view to_string(Variable v);
std::string_view to_string(ExpectedFit e);

}  // namespace namefit
