#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "namefit/intervals.hpp"
#include "namefit/suite.hpp"

namespace namefit {

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

// Everything needed to reproduce a run. Numeric outputs are a function of
// the config, corpus contents and seed; timestamp and command line are
// informational.
struct RunManifest {
  std::string config_hash;
  std::map<std::string, std::string> corpus_digests;  // path -> sha256
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string tool_version = NAMEFIT_VERSION;
  std::string timestamp;
  std::string command_line;
};

RunManifest make_manifest(const std::filesystem::path& config_path, const SuiteConfig& config,
                          std::uint64_t seed, int jobs, const std::string& command_line);
nlohmann::json to_json(const RunManifest& m);

enum class FigureMode { frequency, origin, top_names };

struct UniformBootstrapConfig {
  std::size_t draw_size = 52;
  std::size_t replicates = 10000;
};

// One comparison plot: a reference and the test series drawn over it.
struct FigureConfig {
  std::string id;
  FigureMode mode = FigureMode::frequency;
  std::string reference;
  std::vector<std::string> tests;
  bool merge_semitic = false;
  std::size_t k = 6;
  std::size_t top = 12;
  std::optional<UniformBootstrapConfig> uniform_bootstrap;
};

// Reads the optional "figures" array of a suite config file.
std::vector<FigureConfig> parse_figure_configs(const nlohmann::json& j, std::size_t default_k);

struct NamedFigure {
  std::string id;
  FigureData data;
};

// Figure series in config order. Bootstrap series draw from
// RandomSource(seed).child(figure index).
std::vector<NamedFigure> build_figures(const std::vector<FigureConfig>& figures,
                                       const CorpusMap& corpora, std::uint64_t seed, int jobs);

}  // namespace namefit
