#include "namefit/suite.hpp"

#include <exception>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "namefit/error.hpp"

namespace namefit {

using nlohmann::json;

std::string_view to_string(Variable v) { return v == Variable::frequency ? "frequency" : "origin"; }

std::string_view to_string(ExpectedFit e) {
  switch (e) {
    case ExpectedFit::fit: return "fit";
    case ExpectedFit::not_fit: return "not_fit";
    case ExpectedFit::na: return "NA";
  }
  return "?";
}

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return it->get<T>();
}

RecordFilter parse_filter(const json& j) {
  RecordFilter f;
  if (j.is_null()) return f;
  if (auto w = j.find("window"); w != j.end() && !w->is_null()) {
    DateWindow window;
    window.start = w->at("start").get<int>();
    window.end = w->at("end").get<int>();
    const auto policy = get_or<std::string>(*w, "policy", "exclusive");
    if (policy == "inclusive") window.policy = DatePolicy::inclusive;
    else if (policy == "exclusive") window.policy = DatePolicy::exclusive;
    else throw DataError("filter window policy must be inclusive or exclusive");
    if (window.start > window.end) throw DataError("filter window start is after end");
    f.window = window;
  }
  if (auto g = j.find("gender"); g != j.end() && !g->is_null()) {
    f.gender = parse_gender(g->get<std::string>());
    if (!f.gender) throw DataError("unknown gender in filter: " + g->get<std::string>());
  }
  if (auto r = j.find("region"); r != j.end() && !r->is_null()) {
    f.region = parse_region(r->get<std::string>());
    if (!f.region) throw DataError("unknown region in filter: " + r->get<std::string>());
  }
  f.include_fictitious = get_or(j, "include_fictitious", false);
  f.include_nicknames = get_or(j, "include_nicknames", true);
  if (auto e = j.find("exclusions"); e != j.end())
    for (const auto& s : *e) f.exclusions.insert(s.get<std::string>());
  return f;
}

ScenarioConfig parse_scenario(const json& j, std::size_t index, std::size_t default_k) {
  ScenarioConfig s;
  s.id = get_or<std::string>(j, "id", "scenario-" + std::to_string(index + 1));
  s.test_source = j.at("test").get<std::string>();
  s.reference_source = j.at("reference").get<std::string>();
  const auto variable = j.at("variable").get<std::string>();
  if (variable == "frequency") s.variable = Variable::frequency;
  else if (variable == "origin") s.variable = Variable::origin;
  else throw DataError("scenario " + s.id + ": variable must be frequency or origin");
  const auto expected = get_or<std::string>(j, "expected_fit", "fit");
  if (expected == "fit") s.expected_fit = ExpectedFit::fit;
  else if (expected == "not_fit") s.expected_fit = ExpectedFit::not_fit;
  else if (expected == "NA" || expected == "na") s.expected_fit = ExpectedFit::na;
  else throw DataError("scenario " + s.id + ": expected_fit must be fit, not_fit or NA");
  s.subtract_from_reference = get_or(j, "subtract_from_reference", false);
  s.merge_semitic = get_or(j, "merge_semitic", false);
  s.k = get_or<std::size_t>(j, "bins", default_k);
  if (auto a = j.find("alternative"); a != j.end() && !a->is_null())
    s.alternative = a->get<std::vector<double>>();
  return s;
}

std::string format_p(double p) {
  std::ostringstream os;
  os << std::setprecision(10) << std::max(p, kPValueFloor);
  return os.str();
}

void run_frequency(ScenarioResult& r, const std::vector<OccurrenceRecord>& test_records,
                   const std::vector<OccurrenceRecord>& ref_records) {
  const auto test = build_frequency_distribution(test_records);
  auto reference = build_frequency_distribution(ref_records);
  if (r.config.subtract_from_reference) {
    auto sub = subtract_sample(reference, test);
    reference = std::move(sub.distribution);
    r.subtraction_exact = sub.exact;
    r.subtraction_diagnostics = std::move(sub.diagnostics);
  }
  const auto fitted = fit_bins(test, reference, r.config.k);
  std::vector<double> probs;
  std::vector<std::int64_t> ref_row;
  for (const auto& b : fitted.spec.bins) {
    probs.push_back(static_cast<double>(b.reference_mass) /
                    static_cast<double>(fitted.spec.reference_total));
    ref_row.push_back(b.reference_mass);
    r.labels.push_back(b.label);
  }
  r.gof = gof_test(fitted.counts.observed, probs, fitted.counts.n);
  r.gof.conditions = fitted.conditions;
  r.independence = independence_test(fitted.counts.observed, ref_row);
  r.observed = fitted.counts.observed;
  r.expected = fitted.counts.expected;
  r.bins = fitted.spec;
  r.test_n = test.total();
  r.reference_n = reference.total();
}

void run_origin(ScenarioResult& r, const std::vector<OccurrenceRecord>& test_records,
                const std::vector<OccurrenceRecord>& ref_records) {
  const bool merge = r.config.merge_semitic;
  const auto test = build_origin_distribution(test_records, merge);
  auto reference = build_origin_distribution(ref_records, merge);
  if (r.config.subtract_from_reference) {
    bool exact = true;
    reference = subtract_origins(reference, test, &exact);
    r.subtraction_exact = exact;
    if (!exact) r.subtraction_diagnostics.push_back("test origin count exceeds reference");
  }

  // Categories with no reference mass have no expected count; drop them
  // from both vectors and report.
  std::vector<std::int64_t> observed;
  std::vector<std::int64_t> ref_row;
  for (Origin o : origin_categories(merge)) {
    const auto ref_count = reference.count(o);
    if (ref_count == 0) {
      r.dropped_categories.emplace_back(to_string(o));
      r.dropped_observations += test.count(o);
      continue;
    }
    r.labels.emplace_back(to_string(o));
    observed.push_back(test.count(o));
    ref_row.push_back(ref_count);
  }
  std::int64_t ref_total = 0;
  std::int64_t n = 0;
  for (auto c : ref_row) ref_total += c;
  for (auto c : observed) n += c;
  if (observed.size() < 2) throw NumericError("fewer than two origin categories with reference mass");

  std::vector<double> probs;
  for (auto c : ref_row) probs.push_back(static_cast<double>(c) / static_cast<double>(ref_total));
  r.gof = gof_test(observed, probs, n);
  r.independence = independence_test(observed, ref_row);
  r.observed = observed;
  r.expected.clear();
  for (double p : probs) r.expected.push_back(static_cast<double>(n) * p);
  r.test_n = n;
  r.reference_n = ref_total;
}

}  // namespace

SuiteConfig parse_suite_config(const json& j, const std::filesystem::path& base_dir) {
  try {
    SuiteConfig cfg;
    cfg.alpha = get_or(j, "alpha", 0.05);
    const auto default_k = get_or<std::size_t>(j, "bins", 6);
    std::set<std::string> tags;
    for (const auto& c : j.at("corpora")) {
      CorpusSpec spec;
      spec.tag = c.at("tag").get<std::string>();
      std::filesystem::path p = c.at("path").get<std::string>();
      spec.path = p.is_relative() ? base_dir / p : p;
      spec.filter = parse_filter(c.value("filter", json()));
      if (!tags.insert(spec.tag).second) throw DataError("duplicate corpus tag '" + spec.tag + "'");
      cfg.corpora.push_back(std::move(spec));
    }
    const auto& scenarios = j.at("scenarios");
    for (std::size_t i = 0; i < scenarios.size(); ++i)
      cfg.scenarios.push_back(parse_scenario(scenarios[i], i, default_k));
    return cfg;
  } catch (const json::exception& e) {
    throw DataError(std::string("suite config: ") + e.what());
  }
}

SuiteConfig load_suite_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open suite config '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("suite config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_suite_config(j, path.parent_path());
}

LoadedCorpora load_corpora(const SuiteConfig& config) {
  LoadedCorpora out;
  for (const auto& spec : config.corpora) {
    auto loaded = load_corpus(spec.path);
    out.records[spec.tag] = filter_records(loaded.records, spec.filter);
    out.rejections[spec.tag] = std::move(loaded.rejections);
  }
  return out;
}

ScenarioResult run_scenario(const ScenarioConfig& scenario, const CorpusMap& corpora,
                            const Benchmark& benchmark) {
  ScenarioResult r;
  r.config = scenario;
  if (scenario.expected_fit == ExpectedFit::na) {
    r.skipped = true;
    return r;
  }
  const auto test_it = corpora.find(scenario.test_source);
  const auto ref_it = corpora.find(scenario.reference_source);
  if (test_it == corpora.end())
    throw DataError("scenario " + scenario.id + ": unknown corpus tag '" + scenario.test_source + "'");
  if (ref_it == corpora.end())
    throw DataError("scenario " + scenario.id + ": unknown corpus tag '" +
                    scenario.reference_source + "'");

  if (scenario.variable == Variable::frequency) run_frequency(r, test_it->second, ref_it->second);
  else run_origin(r, test_it->second, ref_it->second);
  r.gof.reference_adjusted = scenario.subtract_from_reference;
  if (r.independence) r.independence->reference_adjusted = scenario.subtract_from_reference;

  if (scenario.alternative) {
    PowerSpec ps;
    for (double e : r.expected) ps.null_probs.push_back(e / static_cast<double>(r.test_n));
    ps.alt_probs = *scenario.alternative;
    ps.n = r.test_n;
    ps.alpha = benchmark.adjusted;
    if (ps.alt_probs.size() != ps.null_probs.size())
      throw DataError("scenario " + scenario.id + ": alternative has " +
                      std::to_string(ps.alt_probs.size()) + " cells but the test uses " +
                      std::to_string(ps.null_probs.size()));
    r.power = power(ps);
  }

  r.fits = r.gof.p_value >= benchmark.adjusted;
  r.matched = r.fits == (scenario.expected_fit == ExpectedFit::fit);
  return r;
}

SuiteResult run_suite(const SuiteConfig& config, const CorpusMap& corpora, int jobs) {
  for (const auto& s : config.scenarios) {
    if (s.expected_fit == ExpectedFit::na) continue;
    for (const auto* tag : {&s.test_source, &s.reference_source})
      if (!corpora.contains(*tag))
        throw DataError("scenario " + s.id + ": unknown corpus tag '" + *tag + "'");
  }
  int active = 0;
  for (const auto& s : config.scenarios)
    if (s.expected_fit != ExpectedFit::na) ++active;

  SuiteResult result;
  result.benchmark = bonferroni(config.alpha, std::max(1, active));
  const auto count = static_cast<std::ptrdiff_t>(config.scenarios.size());
  result.scenarios.resize(config.scenarios.size());
  std::vector<std::exception_ptr> errors(config.scenarios.size());

#pragma omp parallel for num_threads(std::max(1, jobs)) schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      result.scenarios[idx] = run_scenario(config.scenarios[idx], corpora, result.benchmark);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (const auto& r : result.scenarios) {
    if (!r.matched) continue;
    ++result.compared;
    if (*r.matched) ++result.matched;
  }
  return result;
}

namespace {

json gof_json(const GofResult& g) {
  return {{"statistic", g.statistic},
          {"df", g.df},
          {"p_value", g.p_value},
          {"p_below_floor", g.p_value < kPValueFloor},
          {"bins_used", g.bins_used},
          {"reference_adjusted", g.reference_adjusted},
          {"conditions",
           {{"min_expected", g.conditions.min_expected},
            {"cells_below_five", g.conditions.cells_below_five},
            {"min_expected_ok", g.conditions.min_expected_ok},
            {"small_cell_share_ok", g.conditions.small_cell_share_ok}}}};
}

}  // namespace

json to_json(const SuiteResult& result) {
  json scenarios = json::array();
  for (const auto& r : result.scenarios) {
    json s = {{"id", r.config.id},
              {"test", r.config.test_source},
              {"reference", r.config.reference_source},
              {"variable", to_string(r.config.variable)},
              {"expected_fit", to_string(r.config.expected_fit)},
              {"subtract_from_reference", r.config.subtract_from_reference},
              {"merge_semitic", r.config.merge_semitic}};
    if (r.skipped) {
      s["skipped"] = true;
      scenarios.push_back(std::move(s));
      continue;
    }
    s["skipped"] = false;
    s["gof"] = gof_json(r.gof);
    if (r.independence) s["independence"] = gof_json(*r.independence);
    s["labels"] = r.labels;
    s["observed"] = r.observed;
    s["expected"] = r.expected;
    s["test_n"] = r.test_n;
    s["reference_n"] = r.reference_n;
    if (r.bins) {
      s["bins"] = to_json(*r.bins);
      s["requested_bins"] = r.config.k;
    }
    if (!r.dropped_categories.empty()) {
      s["dropped_categories"] = r.dropped_categories;
      s["dropped_observations"] = r.dropped_observations;
    }
    s["subtraction_exact"] = r.subtraction_exact;
    if (!r.subtraction_diagnostics.empty()) s["subtraction_diagnostics"] = r.subtraction_diagnostics;
    if (r.power)
      s["power"] = {{"power", r.power->power},
                    {"lambda", r.power->lambda},
                    {"critical_value", r.power->critical_value}};
    s["fits"] = r.fits;
    s["matched"] = *r.matched;
    scenarios.push_back(std::move(s));
  }
  return {{"benchmark",
           {{"alpha", result.benchmark.alpha},
            {"num_tests", result.benchmark.num_tests},
            {"adjusted", result.benchmark.adjusted}}},
          {"null_hypothesis", "the test sample fits the reference distribution"},
          {"scenarios", scenarios},
          {"compared", result.compared},
          {"matched", result.matched},
          {"summary", std::to_string(result.matched) + " of " + std::to_string(result.compared) +
                          " matched"}};
}

void write_matrix_csv(std::ostream& out, const SuiteResult& result) {
  std::vector<std::string> tests;
  std::vector<std::pair<std::string, Variable>> rows;
  for (const auto& r : result.scenarios) {
    if (std::find(tests.begin(), tests.end(), r.config.test_source) == tests.end())
      tests.push_back(r.config.test_source);
    const std::pair row{r.config.reference_source, r.config.variable};
    if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
  }
  out << "reference,variable";
  for (const auto& t : tests) out << ',' << t;
  out << '\n';
  for (const auto& [ref, var] : rows) {
    out << ref << ',' << to_string(var);
    for (const auto& t : tests) {
      out << ',';
      for (const auto& r : result.scenarios) {
        if (r.config.reference_source != ref || r.config.variable != var ||
            r.config.test_source != t)
          continue;
        out << (r.skipped ? std::string("NA") : format_p(r.gof.p_value));
        break;
      }
    }
    out << '\n';
  }
}

}  // namespace namefit
