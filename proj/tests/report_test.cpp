#include "namefit/report.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <set>

#include "namefit/error.hpp"
#include "namefit/suite.hpp"
#include "test_support.hpp"

using namespace namefit;
using nlohmann::json;

TEST(Sha256, KnownDigests) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Sha256, FileMatchesContent) {
  const auto path = std::filesystem::temp_directory_path() / "namefit_sha_test.txt";
  {
    std::ofstream out(path, std::ios::binary);
    out << "abc";
  }
  EXPECT_EQ(sha256_file(path), sha256_hex("abc"));
  std::filesystem::remove(path);
  EXPECT_THROW(sha256_file(path), DataError);
}

TEST(Manifest, RecordsInputsAndSettings) {
  const auto dir = std::filesystem::temp_directory_path() / "namefit_manifest_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "a.csv") << "x";
    std::ofstream(dir / "suite.json") << "{}";
  }
  SuiteConfig cfg;
  cfg.corpora.push_back({"A", dir / "a.csv", {}});
  const auto m = make_manifest(dir / "suite.json", cfg, 42, 3, "namefit suite");
  EXPECT_EQ(m.config_hash, sha256_hex("{}"));
  EXPECT_EQ(m.corpus_digests.at((dir / "a.csv").string()), sha256_hex("x"));
  const auto j = to_json(m);
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(j["jobs"], 3);
  EXPECT_EQ(j["tool_version"], NAMEFIT_VERSION);
  EXPECT_EQ(j["command_line"], "namefit suite");
  EXPECT_EQ(j["timestamp"].get<std::string>().size(), 20u);
  std::filesystem::remove_all(dir);
}

TEST(FigureConfig, ParsesModesAndDefaults) {
  const auto j = json::parse(R"({"figures": [
    {"id": "freq", "reference": "PAL", "tests": ["GOS", "JOS"],
     "uniform_bootstrap": {"replicates": 500}},
    {"mode": "origin", "reference": "PAL", "tests": ["GOS"], "merge_semitic": true},
    {"mode": "top_names", "reference": "PAL", "top": 5}
  ]})");
  const auto figs = parse_figure_configs(j, 6);
  ASSERT_EQ(figs.size(), 3u);
  EXPECT_EQ(figs[0].mode, FigureMode::frequency);
  EXPECT_EQ(figs[0].tests.size(), 2u);
  ASSERT_TRUE(figs[0].uniform_bootstrap.has_value());
  EXPECT_EQ(figs[0].uniform_bootstrap->draw_size, 52u);
  EXPECT_EQ(figs[0].uniform_bootstrap->replicates, 500u);
  EXPECT_EQ(figs[1].id, "figure-2");
  EXPECT_TRUE(figs[1].merge_semitic);
  EXPECT_EQ(figs[2].top, 5u);
  EXPECT_TRUE(parse_figure_configs(json::object(), 6).empty());
  EXPECT_THROW(parse_figure_configs(json::parse(R"({"figures": [{"mode": "pie", "reference": "A"}]})"), 6),
               DataError);
  EXPECT_THROW(parse_figure_configs(json::parse(R"({"figures": [{"mode": "origin"}]})"), 6),
               DataError);
}

TEST(Figures, BuildIsDeterministicInSeedAndJobs) {
  const auto ref = oracle::synthetic_reference();
  std::mt19937_64 rng(2);
  CorpusMap corpora;
  corpora["PAL"] = oracle::records_from(ref, "PAL");
  corpora["GOS"] = oracle::records_from(oracle::sample_from(ref, 80, rng), "GOS");
  std::vector<FigureConfig> figs(3);
  figs[0].id = "f";
  figs[0].reference = "PAL";
  figs[0].tests = {"GOS"};
  figs[0].uniform_bootstrap = UniformBootstrapConfig{52, 300};
  figs[1].id = "o";
  figs[1].mode = FigureMode::origin;
  figs[1].reference = "PAL";
  figs[1].tests = {"GOS"};
  figs[2].id = "t";
  figs[2].mode = FigureMode::top_names;
  figs[2].reference = "PAL";
  figs[2].tests = {"GOS"};

  const auto a = build_figures(figs, corpora, 7, 1);
  const auto b = build_figures(figs, corpora, 7, 4);
  const auto c = build_figures(figs, corpora, 8, 1);
  ASSERT_EQ(a.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(to_json(a[i].data).dump(), to_json(b[i].data).dump());
  EXPECT_NE(to_json(a[0].data).dump(), to_json(c[0].data).dump());
  EXPECT_EQ(to_json(a[1].data).dump(), to_json(c[1].data).dump());
  // reference + GOS + uniform, six bins each.
  EXPECT_EQ(a[0].data.points.size(), 18u);
  EXPECT_EQ(a[2].data.labels.size(), 13u);

  figs[1].tests = {"NOPE"};
  EXPECT_THROW(build_figures(figs, corpora, 7, 1), DataError);
}

TEST(Presets, ShippedConfigsParseAndResolveTags) {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(NAMEFIT_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    ++seen;
    SCOPED_TRACE(entry.path().filename().string());
    const auto cfg = load_suite_config(entry.path());
    std::set<std::string> tags;
    for (const auto& c : cfg.corpora) tags.insert(c.tag);
    for (const auto& s : cfg.scenarios) {
      EXPECT_TRUE(tags.count(s.test_source)) << s.id;
      EXPECT_TRUE(tags.count(s.reference_source)) << s.id;
    }
    std::ifstream in(entry.path());
    for (const auto& f : parse_figure_configs(json::parse(in), 6)) {
      EXPECT_TRUE(tags.count(f.reference)) << f.id;
      for (const auto& t : f.tests) EXPECT_TRUE(tags.count(t)) << f.id;
    }
  }
  EXPECT_GE(seen, 7u);
}

TEST(Presets, FullMatrixHasEighteenTests) {
  const auto cfg = load_suite_config(std::filesystem::path(NAMEFIT_CONFIG_DIR) / "full_matrix.json");
  std::size_t active = 0;
  std::set<std::string> ids;
  for (const auto& s : cfg.scenarios) {
    if (s.expected_fit != ExpectedFit::na) ++active;
    ids.insert(s.id);
  }
  EXPECT_EQ(cfg.scenarios.size(), 20u);
  EXPECT_EQ(active, 18u);
  for (const char* id : {"ga-ilan1-frequency", "josephus-ilan1-frequency", "ga-ilan1-origin"})
    EXPECT_TRUE(ids.count(id)) << id;
}
