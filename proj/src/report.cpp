#include "namefit/report.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "namefit/error.hpp"

namespace namefit {

using nlohmann::json;

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i)
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return os.str();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "' for hashing");
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return sha256_hex(data);
}

RunManifest make_manifest(const std::filesystem::path& config_path, const SuiteConfig& config,
                          std::uint64_t seed, int jobs, const std::string& command_line) {
  RunManifest m;
  m.config_hash = sha256_file(config_path);
  for (const auto& c : config.corpora) m.corpus_digests[c.path.string()] = sha256_file(c.path);
  m.seed = seed;
  m.jobs = jobs;
  m.command_line = command_line;
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream os;
  os << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  m.timestamp = os.str();
  return m;
}

json to_json(const RunManifest& m) {
  return {{"config_sha256", m.config_hash},
          {"corpus_sha256", m.corpus_digests},
          {"seed", m.seed},
          {"jobs", m.jobs},
          {"tool_version", m.tool_version},
          {"timestamp", m.timestamp},
          {"command_line", m.command_line}};
}

std::vector<FigureConfig> parse_figure_configs(const json& j, std::size_t default_k) {
  std::vector<FigureConfig> out;
  auto it = j.find("figures");
  if (it == j.end()) return out;
  try {
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto& f = (*it)[i];
      FigureConfig fc;
      fc.id = f.value("id", "figure-" + std::to_string(i + 1));
      const auto mode = f.value("mode", std::string("frequency"));
      if (mode == "frequency") fc.mode = FigureMode::frequency;
      else if (mode == "origin") fc.mode = FigureMode::origin;
      else if (mode == "top_names") fc.mode = FigureMode::top_names;
      else throw DataError("figure " + fc.id + ": mode must be frequency, origin or top_names");
      fc.reference = f.at("reference").get<std::string>();
      fc.tests = f.value("tests", std::vector<std::string>{});
      fc.merge_semitic = f.value("merge_semitic", false);
      fc.k = f.value("bins", default_k);
      fc.top = f.value("top", std::size_t{12});
      if (auto b = f.find("uniform_bootstrap"); b != f.end() && !b->is_null()) {
        UniformBootstrapConfig ub;
        ub.draw_size = b->value("draw_size", ub.draw_size);
        ub.replicates = b->value("replicates", ub.replicates);
        fc.uniform_bootstrap = ub;
      }
      out.push_back(std::move(fc));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("figure config: ") + e.what());
  }
  return out;
}

namespace {

const std::vector<OccurrenceRecord>& corpus(const CorpusMap& corpora, const std::string& tag,
                                            const std::string& figure) {
  auto it = corpora.find(tag);
  if (it == corpora.end())
    throw DataError("figure " + figure + ": unknown corpus tag '" + tag + "'");
  return it->second;
}

}  // namespace

std::vector<NamedFigure> build_figures(const std::vector<FigureConfig>& figures,
                                       const CorpusMap& corpora, std::uint64_t seed, int jobs) {
  const RandomSource root(seed);
  std::vector<NamedFigure> out;
  for (std::size_t i = 0; i < figures.size(); ++i) {
    const auto& fc = figures[i];
    const auto& ref_records = corpus(corpora, fc.reference, fc.id);
    NamedFigure nf{fc.id, {}};
    switch (fc.mode) {
      case FigureMode::frequency: {
        const auto reference = build_frequency_distribution(ref_records);
        const auto prof = profile(reference);
        const auto spec = compute_bins(prof, std::min(fc.k, prof.classes.size()));
        std::vector<NamedSample> tests;
        for (const auto& t : fc.tests)
          tests.push_back({t, build_frequency_distribution(corpus(corpora, t, fc.id))});
        nf.data = frequency_figure(reference, spec, tests);
        if (fc.uniform_bootstrap) {
          BootstrapOptions opt;
          opt.draw_size = fc.uniform_bootstrap->draw_size;
          opt.replicates = fc.uniform_bootstrap->replicates;
          opt.jobs = jobs;
          append_series(nf.data, "uniform",
                        bootstrap_uniform_ci(reference, spec, opt, root.child(i)));
        }
        break;
      }
      case FigureMode::origin: {
        const auto reference = build_origin_distribution(ref_records, fc.merge_semitic);
        std::vector<NamedOrigins> tests;
        for (const auto& t : fc.tests)
          tests.push_back(
              {t, build_origin_distribution(corpus(corpora, t, fc.id), fc.merge_semitic)});
        nf.data = origin_figure(reference, tests);
        break;
      }
      case FigureMode::top_names: {
        const auto reference = build_frequency_distribution(ref_records);
        std::vector<NamedSample> tests;
        for (const auto& t : fc.tests)
          tests.push_back({t, build_frequency_distribution(corpus(corpora, t, fc.id))});
        nf.data = top_names_figure(reference, tests, fc.top);
        break;
      }
    }
    out.push_back(std::move(nf));
  }
  return out;
}

}  // namespace namefit
