// namefit command-line front end.
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 numeric failure.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "namefit/binning.hpp"
#include "namefit/corpus.hpp"
#include "namefit/distributions.hpp"
#include "namefit/error.hpp"
#include "namefit/inference.hpp"
#include "namefit/intervals.hpp"
#include "namefit/rare_names.hpp"
#include "namefit/report.hpp"
#include "namefit/suite.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace namefit;

namespace {

struct Globals {
  std::uint64_t seed = 20240512;
  int jobs = 1;
  std::string format = "csv";
  double alpha = 0.05;
  std::size_t bins = 6;
  std::string command_line;
};

struct FilterOptions {
  std::string window;  // "start,end"
  std::string policy = "exclusive";
  std::string gender;
  std::string region;
  bool include_fictitious = false;
  bool exclude_nicknames = false;
  std::vector<std::string> exclusions;

  void add(CLI::App* app) {
    app->add_option("--window", window, "Date window start,end (negative = BCE)");
    app->add_option("--policy", policy, "Dating policy")->check(CLI::IsMember({"inclusive", "exclusive"}));
    app->add_option("--gender", gender, "Keep only this gender");
    app->add_option("--region", region, "Keep only this region");
    app->add_flag("--include-fictitious", include_fictitious, "Keep names flagged fictitious");
    app->add_flag("--exclude-nicknames", exclude_nicknames, "Drop names flagged as nicknames");
    app->add_option("--exclude", exclusions, "Exclusion category to drop (repeatable)");
  }

  RecordFilter build() const {
    RecordFilter f;
    if (!window.empty()) {
      const auto parts = split(window);
      if (parts.size() != 2) throw CLI::ValidationError("--window", "expected start,end");
      DateWindow w;
      w.start = std::stoi(parts[0]);
      w.end = std::stoi(parts[1]);
      w.policy = policy == "inclusive" ? DatePolicy::inclusive : DatePolicy::exclusive;
      if (w.start > w.end) throw CLI::ValidationError("--window", "start is after end");
      f.window = w;
    }
    if (!gender.empty()) {
      f.gender = parse_gender(gender);
      if (!f.gender) throw CLI::ValidationError("--gender", "unknown gender " + gender);
    }
    if (!region.empty()) {
      f.region = parse_region(region);
      if (!f.region) throw CLI::ValidationError("--region", "unknown region " + region);
    }
    f.include_fictitious = include_fictitious;
    f.include_nicknames = !exclude_nicknames;
    f.exclusions.insert(exclusions.begin(), exclusions.end());
    return f;
  }

  static std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
  }
};

std::vector<std::string> split_commas(const std::string& s) { return FilterOptions::split(s); }

double parse_number(const std::string& token) {
  const auto slash = token.find('/');
  std::size_t used = 0;
  if (slash == std::string::npos) {
    const double v = std::stod(token, &used);
    if (used != token.size()) throw CLI::ValidationError("bad number '" + token + "'");
    return v;
  }
  const double num = std::stod(token.substr(0, slash));
  const double den = std::stod(token.substr(slash + 1));
  return num / den;
}

// Accepts "u6" (uniform over 6 cells) or a comma list of decimals and
// fractions. Vectors written with rounded decimals (e.g. .133) are
// renormalized when within 0.01 of summing to 1, with a note on stderr.
std::vector<double> parse_probs(const std::string& text, const char* what) {
  std::vector<double> p;
  if (!text.empty() && text[0] == 'u') {
    const int k = std::stoi(text.substr(1));
    if (k < 2) throw CLI::ValidationError(what, "uniform needs at least 2 cells");
    return std::vector<double>(static_cast<std::size_t>(k), 1.0 / k);
  }
  for (const auto& t : split_commas(text)) p.push_back(parse_number(t));
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  if (std::fabs(sum - 1.0) > 1e-9) {
    if (std::fabs(sum - 1.0) > 0.01)
      throw DataError(std::string(what) + " sums to " + std::to_string(sum) + ", not 1");
    std::cerr << "note: " << what << " sums to " << std::setprecision(6) << sum
              << "; renormalized\n";
    for (auto& v : p) v /= sum;
  }
  return p;
}

std::vector<std::int64_t> parse_counts(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const auto& t : split_commas(text)) out.push_back(std::stoll(t));
  return out;
}

std::vector<OccurrenceRecord> load_filtered(const std::string& path, const RecordFilter& filter) {
  auto loaded = load_corpus(fs::path(path));
  if (!loaded.rejections.empty())
    std::cerr << "warning: " << loaded.rejections.size() << " row(s) rejected in " << path
              << " (run 'validate' for details)\n";
  return filter_records(loaded.records, filter);
}

bool is_distribution_file(const std::string& path) {
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  if (!header.empty() && header.back() == '\r') header.pop_back();
  return header == "name,count";
}

// A frequency distribution from either an exported name,count file or a
// corpus file (filtered).
FrequencyDistribution load_distribution(const std::string& path, const RecordFilter& filter) {
  if (is_distribution_file(path)) {
    std::ifstream in(path);
    return read_distribution_csv(in);
  }
  return build_frequency_distribution(load_filtered(path, filter));
}

void print_gof(const GofResult& g, const std::string& format, const char* kind) {
  if (format == "json") {
    std::cout << json{{"test", kind},
                      {"statistic", g.statistic},
                      {"df", g.df},
                      {"p_value", g.p_value},
                      {"conditions_passed", g.conditions.passed()},
                      {"min_expected", g.conditions.min_expected},
                      {"null_hypothesis", "the sample fits the reference distribution"}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "statistic,df,p_value,conditions_passed\n"
              << std::setprecision(10) << g.statistic << ',' << g.df << ',' << g.p_value << ','
              << (g.conditions.passed() ? "true" : "false") << '\n';
  }
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"namefit: goodness-of-fit testing of name samples against a reference population"};
  app.require_subcommand(1);
  Globals g;
  for (int i = 0; i < argc; ++i) g.command_line += (i ? " " : "") + std::string(argv[i]);
  app.add_option("--seed", g.seed, "Seed for all randomness")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--alpha", g.alpha, "Significance benchmark before adjustment")->capture_default_str();
  app.add_option("--bins", g.bins, "Number of frequency bins")->capture_default_str();
  app.fallthrough();

  // validate
  auto* validate = app.add_subcommand("validate", "Check a corpus file against the schema");
  std::string validate_path;
  validate->add_option("corpus", validate_path)->required()->check(CLI::ExistingFile);

  // distribution
  auto* distribution = app.add_subcommand("distribution", "Build a name or origin distribution");
  std::string dist_path, dist_subtract;
  bool dist_origin = false, dist_merge = false;
  FilterOptions dist_filter;
  distribution->add_option("corpus", dist_path)->required()->check(CLI::ExistingFile);
  distribution->add_option("--subtract", dist_subtract, "Corpus to remove from this one")
      ->check(CLI::ExistingFile);
  distribution->add_flag("--origin", dist_origin, "Emit origin counts instead of names");
  distribution->add_flag("--merge-semitic", dist_merge, "Merge the two Semitic categories");
  dist_filter.add(distribution);

  // bins
  auto* bins = app.add_subcommand("bins", "Equal-frequency bins of a reference distribution");
  std::string bins_path;
  FilterOptions bins_filter;
  bins->add_option("reference", bins_path, "Corpus or name,count file")->required()->check(CLI::ExistingFile);
  bins_filter.add(bins);

  // gof
  auto* gof = app.add_subcommand("gof", "Pearson goodness-of-fit test");
  std::string gof_observed, gof_probs, gof_uniform, gof_test_path, gof_ref_path;
  bool gof_subtract = false, gof_origin = false, gof_merge = false;
  std::int64_t gof_mc = 0;
  FilterOptions gof_filter;
  auto* gof_observed_opt = gof->add_option("--observed", gof_observed, "Observed counts, comma separated");
  auto* gof_probs_opt = gof->add_option("--probs", gof_probs, "Reference probabilities");
  gof->add_option("--uniform", gof_uniform, "Uniform reference over N cells")->excludes(gof_probs_opt);
  auto* gof_test_opt = gof->add_option("--test", gof_test_path, "Test corpus")->check(CLI::ExistingFile);
  gof->add_option("--reference", gof_ref_path, "Reference corpus")->check(CLI::ExistingFile);
  gof->add_flag("--subtract", gof_subtract, "Remove the test sample from the reference first");
  gof->add_flag("--origin", gof_origin, "Test name origins instead of binned frequencies");
  gof->add_flag("--merge-semitic", gof_merge, "Merge the two Semitic categories");
  gof->add_option("--monte-carlo", gof_mc, "Also estimate p from this many resamples");
  gof_filter.add(gof);
  gof_observed_opt->excludes(gof_test_opt);

  // independence
  auto* independence = app.add_subcommand("independence", "Pearson test of independence, 2 x K");
  std::string ind_a, ind_b;
  independence->add_option("--row-a", ind_a)->required();
  independence->add_option("--row-b", ind_b)->required();

  // power
  auto* power_cmd = app.add_subcommand("power", "Power of the goodness-of-fit test");
  std::string pow_null, pow_alt, pow_convention = "alternative";
  std::int64_t pow_n = 0;
  power_cmd->add_option("--null", pow_null, "Null probabilities, or uN for uniform")->required();
  power_cmd->add_option("--alt", pow_alt, "Alternative probabilities")->required();
  power_cmd->add_option("--n", pow_n, "Sample size")->required();
  power_cmd->add_option("--convention", pow_convention, "Noncentrality weighting")
      ->check(CLI::IsMember({"alternative", "null"}))
      ->capture_default_str();

  // ci
  auto* ci = app.add_subcommand("ci", "Wald interval for a proportion");
  std::int64_t ci_count = 0, ci_n = 0;
  double ci_level = 0.95;
  ci->add_option("--count", ci_count)->required();
  ci->add_option("--n", ci_n)->required();
  ci->add_option("--level", ci_level)->capture_default_str();

  // bootstrap-ci
  auto* boot = app.add_subcommand("bootstrap-ci", "Bootstrap intervals for uniform sampling of names");
  std::string boot_path;
  std::size_t boot_draw = 52, boot_reps = 10000;
  double boot_level = 0.95;
  FilterOptions boot_filter;
  boot->add_option("reference", boot_path)->required()->check(CLI::ExistingFile);
  boot->add_option("--draw", boot_draw, "Distinct names drawn per replicate")->capture_default_str();
  boot->add_option("--replicates", boot_reps)->capture_default_str();
  boot->add_option("--level", boot_level)->capture_default_str();
  boot_filter.add(boot);

  // rare
  auto* rare = app.add_subcommand("rare", "Probability of observing so few rare names");
  std::int64_t rare_n = 0, rare_k = -1, rare_pool = 0, rare_occ = -1;
  double rare_p = -1.0, rare_target = -1.0;
  std::string rare_ks, rare_definition, rare_test, rare_ref;
  FilterOptions rare_filter;
  rare->add_option("--n", rare_n, "Sample size");
  rare->add_option("--k", rare_k, "Observed rare names");
  rare->add_option("--pool", rare_pool, "Pool occurrences N");
  rare->add_option("--rare-occ", rare_occ, "Rare occurrences K in the pool");
  rare->add_option("--p", rare_p, "Binomial success probability (binomial rows only)");
  rare->add_option("--calibrate", rare_target, "Solve p so that P(X <= k) equals this value");
  rare->add_option("--ks", rare_ks, "k values for the table, comma separated");
  rare->add_option("--definition", rare_definition, "once or once_or_twice")
      ->check(CLI::IsMember({"once", "once_or_twice"}));
  rare->add_option("--test", rare_test, "Test corpus")->check(CLI::ExistingFile);
  rare->add_option("--reference", rare_ref, "Reference corpus")->check(CLI::ExistingFile);
  rare_filter.add(rare);

  // suite
  auto* suite = app.add_subcommand("suite", "Run a configured set of tests");
  std::string suite_config, suite_out;
  suite->add_option("config", suite_config)->required()->check(CLI::ExistingFile);
  suite->add_option("--out", suite_out, "Output directory")->required();

  // figures
  auto* figures = app.add_subcommand("figures", "Emit plot datasets for configured comparisons");
  std::string fig_config, fig_out;
  figures->add_option("config", fig_config)->required()->check(CLI::ExistingFile);
  figures->add_option("--out", fig_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*validate) {
      const auto loaded = load_corpus(fs::path(validate_path));
      for (const auto& r : loaded.rejections)
        std::cout << "row " << r.row << ": " << r.reason << '\n';
      std::cout << loaded.records.size() << " record(s) accepted, " << loaded.rejections.size()
                << " rejected\n";
      return loaded.rejections.empty() ? 0 : 2;
    }

    if (*distribution) {
      const auto filter = dist_filter.build();
      const auto records = load_filtered(dist_path, filter);
      if (dist_origin) {
        auto od = build_origin_distribution(records, dist_merge);
        if (!dist_subtract.empty()) {
          bool exact = true;
          od = subtract_origins(od, build_origin_distribution(load_filtered(dist_subtract, filter), dist_merge), &exact);
          if (!exact) std::cerr << "warning: subtraction clamped at zero\n";
        }
        if (g.format == "json") {
          json j;
          for (const auto& [o, c] : od.counts) j["counts"][std::string(to_string(o))] = c;
          j["total"] = od.total;
          j["skipped_without_origin"] = od.skipped_without_origin;
          std::cout << j.dump(2) << '\n';
        } else {
          std::cout << "origin,count\n";
          for (const auto& [o, c] : od.counts) std::cout << to_string(o) << ',' << c << '\n';
        }
        return 0;
      }
      auto fd = build_frequency_distribution(records);
      if (!dist_subtract.empty()) {
        auto sub = subtract_sample(fd, build_frequency_distribution(load_filtered(dist_subtract, filter)));
        for (const auto& d : sub.diagnostics) std::cerr << "warning: " << d << '\n';
        fd = std::move(sub.distribution);
      }
      if (g.format == "json") {
        json j;
        j["total"] = fd.total();
        j["distinct"] = fd.distinct();
        j["counts"] = json::array();
        for (const auto& [name, c] : fd.ranked()) j["counts"].push_back({{"name", name}, {"count", c}});
        std::cout << j.dump(2) << '\n';
      } else {
        write_distribution_csv(std::cout, fd);
      }
      return 0;
    }

    if (*bins) {
      const auto reference = load_distribution(bins_path, bins_filter.build());
      const auto spec = compute_bins(profile(reference), g.bins);
      if (g.format == "json") {
        std::cout << to_json(spec).dump(2) << '\n';
      } else {
        std::cout << "label,lo,hi,reference_mass\n";
        for (const auto& b : spec.bins)
          std::cout << b.label << ',' << b.lo << ',' << (b.hi ? std::to_string(*b.hi) : "") << ','
                    << b.reference_mass << '\n';
      }
      return 0;
    }

    if (*gof) {
      if (!gof_test_path.empty() || !gof_ref_path.empty()) {
        if (gof_test_path.empty() || gof_ref_path.empty())
          throw CLI::ValidationError("gof", "--test and --reference go together");
        const auto filter = gof_filter.build();
        CorpusMap corpora{{"test", load_filtered(gof_test_path, filter)},
                          {"reference", load_filtered(gof_ref_path, filter)}};
        ScenarioConfig sc;
        sc.id = "gof";
        sc.test_source = "test";
        sc.reference_source = "reference";
        sc.variable = gof_origin ? Variable::origin : Variable::frequency;
        sc.subtract_from_reference = gof_subtract;
        sc.merge_semitic = gof_merge;
        sc.k = g.bins;
        const auto r = run_scenario(sc, corpora, bonferroni(g.alpha, 1));
        SuiteResult sr;
        sr.benchmark = bonferroni(g.alpha, 1);
        sr.scenarios.push_back(r);
        sr.compared = 1;
        sr.matched = *r.matched ? 1 : 0;
        if (g.format == "json") {
          std::cout << to_json(sr).dump(2) << '\n';
        } else {
          std::cout << "label,observed,expected\n" << std::setprecision(10);
          for (std::size_t i = 0; i < r.labels.size(); ++i)
            std::cout << r.labels[i] << ',' << r.observed[i] << ',' << r.expected[i] << '\n';
          std::cout << '\n';
          print_gof(r.gof, g.format, "goodness_of_fit");
        }
        return 0;
      }
      if (gof_observed.empty()) throw CLI::ValidationError("gof", "--observed or --test/--reference required");
      const auto observed = parse_counts(gof_observed);
      std::vector<double> probs;
      if (!gof_uniform.empty()) probs = parse_probs("u" + gof_uniform, "--uniform");
      else if (!gof_probs.empty()) probs = parse_probs(gof_probs, "--probs");
      else throw CLI::ValidationError("gof", "--probs or --uniform required");
      const auto n = std::accumulate(observed.begin(), observed.end(), std::int64_t{0});
      const auto result = gof_test(observed, probs, n);
      print_gof(result, g.format, "goodness_of_fit");
      if (gof_mc > 0) {
        const double mc = monte_carlo_p_value(observed, probs, gof_mc, RandomSource(g.seed), g.jobs);
        std::cout << "monte_carlo_p_value," << std::setprecision(10) << mc << '\n';
      }
      return 0;
    }

    if (*independence) {
      const auto a = parse_counts(ind_a);
      const auto b = parse_counts(ind_b);
      print_gof(independence_test(a, b), g.format, "independence");
      return 0;
    }

    if (*power_cmd) {
      PowerSpec ps;
      ps.null_probs = parse_probs(pow_null, "--null");
      ps.alt_probs = parse_probs(pow_alt, "--alt");
      ps.n = pow_n;
      ps.alpha = g.alpha;
      ps.convention = pow_convention == "null" ? NoncentralityConvention::null_weighted
                                               : NoncentralityConvention::alternative_weighted;
      const auto r = power(ps);
      if (g.format == "json") {
        std::cout << json{{"power", r.power}, {"lambda", r.lambda}, {"critical_value", r.critical_value},
                          {"df", r.df}, {"alpha", ps.alpha}}
                         .dump(2)
                  << '\n';
      } else {
        std::cout << "power,lambda,critical_value,df\n"
                  << std::setprecision(10) << r.power << ',' << r.lambda << ',' << r.critical_value
                  << ',' << r.df << '\n';
      }
      return 0;
    }

    if (*ci) {
      const auto c = wald_ci(ci_count, ci_n, ci_level);
      if (g.format == "json") {
        std::cout << json{{"center", c.center}, {"lower", c.lower}, {"upper", c.upper},
                          {"defined", c.defined}, {"level", c.level}}
                         .dump(2)
                  << '\n';
      } else {
        std::cout << "center,lower,upper,defined\n"
                  << std::setprecision(10) << c.center << ',' << c.lower << ',' << c.upper << ','
                  << (c.defined ? "true" : "false") << '\n';
      }
      return 0;
    }

    if (*boot) {
      const auto reference = load_distribution(boot_path, boot_filter.build());
      const auto prof = profile(reference);
      const auto spec = compute_bins(prof, std::min(g.bins, prof.classes.size()));
      BootstrapOptions opt;
      opt.draw_size = boot_draw;
      opt.replicates = boot_reps;
      opt.level = boot_level;
      opt.jobs = g.jobs;
      const auto intervals = bootstrap_uniform_ci(reference, spec, opt, RandomSource(g.seed));
      FigureData fig;
      for (const auto& b : spec.bins) fig.labels.push_back(b.label);
      append_series(fig, "uniform", intervals);
      if (g.format == "json") std::cout << to_json(fig).dump(2) << '\n';
      else write_figure_csv(std::cout, fig);
      return 0;
    }

    if (*rare) {
      std::vector<std::int64_t> ks;
      if (!rare_ks.empty()) ks = parse_counts(rare_ks);

      if (!rare_test.empty() || !rare_ref.empty()) {
        if (rare_test.empty() || rare_ref.empty())
          throw CLI::ValidationError("rare", "--test and --reference go together");
        if (rare_definition.empty())
          throw CLI::ValidationError("rare", "--definition is required with corpora (once or once_or_twice)");
        const auto def = rare_definition == "once" ? RareDefinition::once : RareDefinition::once_or_twice;
        const auto filter = rare_filter.build();
        const auto test = load_distribution(rare_test, filter);
        const auto reference = load_distribution(rare_ref, filter);
        rare_k = count_rare(test, reference, def);
        rare_n = test.total();
        rare_pool = reference.total();
        rare_occ = rare_occurrences(reference, def);
        if (rare_n > rare_pool) throw DataError("test sample is larger than the reference pool");
        std::cerr << "rare names in test: " << rare_k << " of " << rare_n << "; pool " << rare_pool
                  << " with " << rare_occ << " rare occurrences\n";
      }
      if (rare_n < 1) throw CLI::ValidationError("rare", "--n is required");

      std::vector<RareRow> rows;
      if (rare_target > 0.0 || rare_p >= 0.0) {
        double p = rare_p;
        if (rare_target > 0.0) {
          if (rare_k < 0) throw CLI::ValidationError("rare", "--calibrate needs --k");
          p = calibrate_binomial_p(rare_n, rare_k, rare_target);
          std::cerr << "calibrated p = " << std::setprecision(8) << p << '\n';
        }
        if (ks.empty())
          for (std::int64_t k = 0; k <= rare_n; ++k) ks.push_back(k);
        if (rare_pool > 0) {
          RareSpec spec{rare_pool, static_cast<std::int64_t>(std::llround(p * static_cast<double>(rare_pool))), rare_n};
          std::cerr << "exact column uses K = round(p * pool) = " << spec.rare_occurrences << '\n';
          rows = rare_sensitivity(spec, ks);
          for (std::size_t i = 0; i < rows.size(); ++i) {
            rows[i].tail_binomial = dist::binom_cdf(ks[i], rare_n, p);
            rows[i].approximation_flag =
                std::fabs(rows[i].tail_binomial - rows[i].tail_exact) > kRareApproximationFlag;
          }
        } else {
          rows = binomial_tail_rows(rare_n, p, ks);
        }
      } else {
        if (rare_pool < 1 || rare_occ < 0)
          throw CLI::ValidationError("rare", "--pool and --rare-occ (or --p / --calibrate) are required");
        RareSpec spec{rare_pool, rare_occ, rare_n};
        if (ks.empty()) {
          if (rare_k >= 0) rows.push_back(rare_tail(spec, rare_k).observed);
          else rows = rare_tail(spec, 0).table;
        } else {
          rows = rare_sensitivity(spec, ks);
        }
      }
      if (g.format == "json") {
        json j = json::array();
        for (const auto& r : rows)
          j.push_back({{"k", r.k},
                       {"tail_binomial", r.tail_binomial},
                       {"tail_exact", std::isnan(r.tail_exact) ? json(nullptr) : json(r.tail_exact)},
                       {"approximation_flag", r.approximation_flag}});
        std::cout << j.dump(2) << '\n';
      } else {
        write_rare_csv(std::cout, rows);
      }
      return 0;
    }

    if (*suite) {
      const auto cfg = load_suite_config(suite_config);
      const auto corpora = load_corpora(cfg);
      for (const auto& [tag, rej] : corpora.rejections)
        if (!rej.empty())
          std::cerr << "warning: corpus '" << tag << "' had " << rej.size() << " rejected row(s)\n";
      const auto result = run_suite(cfg, corpora.records, g.jobs);
      fs::create_directories(suite_out);
      std::ostringstream matrix;
      write_matrix_csv(matrix, result);
      write_file(fs::path(suite_out) / "matrix.csv", matrix.str());
      write_file(fs::path(suite_out) / "results.json", to_json(result).dump(2) + "\n");
      const auto manifest = make_manifest(suite_config, cfg, g.seed, g.jobs, g.command_line);
      write_file(fs::path(suite_out) / "manifest.json", to_json(manifest).dump(2) + "\n");
      std::cout << matrix.str();
      std::cout << "benchmark " << std::setprecision(8) << result.benchmark.adjusted << " ("
                << result.benchmark.alpha << "/" << result.benchmark.num_tests << "); "
                << result.matched << " of " << result.compared << " matched\n";
      return 0;
    }

    if (*figures) {
      std::ifstream in(fig_config);
      json j;
      in >> j;
      const auto cfg = parse_suite_config(j, fs::path(fig_config).parent_path());
      const auto figs = parse_figure_configs(j, j.value("bins", g.bins));
      const auto corpora = load_corpora(cfg);
      const auto built = build_figures(figs, corpora.records, g.seed, g.jobs);
      fs::create_directories(fig_out);
      for (const auto& f : built) {
        std::ostringstream csv;
        write_figure_csv(csv, f.data);
        write_file(fs::path(fig_out) / (f.id + ".csv"), csv.str());
        write_file(fs::path(fig_out) / (f.id + ".json"), to_json(f.data).dump(2) + "\n");
        std::cout << "wrote " << f.id << " (" << f.data.points.size() << " points)\n";
      }
      const auto manifest = make_manifest(fig_config, cfg, g.seed, g.jobs, g.command_line);
      write_file(fs::path(fig_out) / "manifest.json", to_json(manifest).dump(2) + "\n");
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}
