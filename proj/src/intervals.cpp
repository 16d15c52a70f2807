#include "namefit/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>

#include <nlohmann/json.hpp>

#include "namefit/distributions.hpp"
#include "namefit/error.hpp"

namespace namefit {

ConfidenceInterval wald_ci(std::int64_t count, std::int64_t n, double level) {
  if (n < 1 || count < 0 || count > n) throw DataError("wald_ci: requires 0 <= count <= n, n >= 1");
  if (!(level > 0.0 && level < 1.0)) throw DataError("wald_ci: level must lie in (0, 1)");
  ConfidenceInterval ci;
  ci.level = level;
  ci.method = IntervalMethod::wald;
  ci.center = static_cast<double>(count) / static_cast<double>(n);
  if (count == 0 || count == n) {
    ci.defined = false;
    ci.lower = ci.upper = ci.center;
    return ci;
  }
  const double z = dist::normal_quantile(0.5 * (1.0 + level));
  const double half = z * std::sqrt(ci.center * (1.0 - ci.center) / static_cast<double>(n));
  ci.lower = std::max(0.0, ci.center - half);
  ci.upper = std::min(1.0, ci.center + half);
  return ci;
}

namespace {

struct BootstrapPlan {
  std::vector<std::size_t> name_bin;  // bin of each distinct reference name
  std::size_t k = 0;
};

BootstrapPlan make_plan(const FrequencyDistribution& reference, const BinSpec& spec,
                        const BootstrapOptions& opt) {
  if (opt.replicates < 1) throw DataError("bootstrap: at least one replicate is required");
  if (opt.draw_size < 1) throw DataError("bootstrap: draw size must be positive");
  if (opt.draw_size > reference.distinct())
    throw DataError("bootstrap: draw size " + std::to_string(opt.draw_size) +
                    " exceeds the " + std::to_string(reference.distinct()) +
                    " distinct reference names");
  BootstrapPlan plan;
  plan.k = spec.k();
  plan.name_bin.reserve(reference.distinct());
  for (const auto& [name, c] : reference.counts()) plan.name_bin.push_back(spec.bin_index(c));
  return plan;
}

// Partial Fisher-Yates over a fresh identity permutation, so a replicate
// depends only on the stream state it is handed.
void run_replicate(const BootstrapPlan& plan, std::size_t draw_size, RandomSource& rng,
                   std::vector<std::size_t>& scratch, double* out) {
  const std::size_t d = plan.name_bin.size();
  scratch.resize(d);
  std::iota(scratch.begin(), scratch.end(), std::size_t{0});
  std::vector<std::int64_t> counts(plan.k, 0);
  for (std::size_t i = 0; i < draw_size; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(d - i));
    std::swap(scratch[i], scratch[j]);
    ++counts[plan.name_bin[scratch[i]]];
  }
  for (std::size_t b = 0; b < plan.k; ++b)
    out[b] = static_cast<double>(counts[b]) / static_cast<double>(draw_size);
}

double type7_quantile(const std::vector<double>& sorted, double q) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

BootstrapReplicates bootstrap_uniform_replicates(const FrequencyDistribution& reference,
                                                 const BinSpec& spec, const BootstrapOptions& opt,
                                                 const RandomSource& rng) {
  const BootstrapPlan plan = make_plan(reference, spec, opt);
  BootstrapReplicates reps;
  reps.k = plan.k;
  reps.proportions.assign(opt.replicates * plan.k, 0.0);
  const std::size_t block = kReplicateBlock;
  const auto blocks = static_cast<std::ptrdiff_t>((opt.replicates + block - 1) / block);
#pragma omp parallel num_threads(std::max(1, opt.jobs))
  {
    std::vector<std::size_t> scratch;
#pragma omp for schedule(static)
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
      RandomSource child = rng.child(static_cast<std::uint64_t>(b));
      const std::size_t first = static_cast<std::size_t>(b) * block;
      const std::size_t end = std::min(opt.replicates, first + block);
      for (std::size_t r = first; r < end; ++r)
        run_replicate(plan, opt.draw_size, child, scratch, reps.proportions.data() + r * plan.k);
    }
  }
  return reps;
}

BootstrapReplicates bootstrap_uniform_replicates_serial(const FrequencyDistribution& reference,
                                                        const BinSpec& spec,
                                                        const BootstrapOptions& opt,
                                                        const RandomSource& rng) {
  const BootstrapPlan plan = make_plan(reference, spec, opt);
  BootstrapReplicates reps;
  reps.k = plan.k;
  reps.proportions.assign(opt.replicates * plan.k, 0.0);
  std::vector<std::size_t> scratch;
  RandomSource child = rng.child(0);
  for (std::size_t r = 0; r < opt.replicates; ++r) {
    if (r % kReplicateBlock == 0) child = rng.child(r / kReplicateBlock);
    run_replicate(plan, opt.draw_size, child, scratch, reps.proportions.data() + r * plan.k);
  }
  return reps;
}

std::vector<ConfidenceInterval> percentile_intervals(const BootstrapReplicates& reps, double level) {
  if (!(level > 0.0 && level < 1.0)) throw DataError("bootstrap: level must lie in (0, 1)");
  const std::size_t m = reps.replicates();
  if (m == 0) throw DataError("bootstrap: no replicates");
  const double alpha = 1.0 - level;
  std::vector<ConfidenceInterval> out(reps.k);
  std::vector<double> column(m);
  for (std::size_t b = 0; b < reps.k; ++b) {
    double sum = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      column[r] = reps.proportions[r * reps.k + b];
      sum += column[r];
    }
    std::sort(column.begin(), column.end());
    auto& ci = out[b];
    ci.method = IntervalMethod::bootstrap_percentile;
    ci.level = level;
    ci.center = sum / static_cast<double>(m);
    ci.lower = std::min(type7_quantile(column, 0.5 * alpha), ci.center);
    ci.upper = std::max(type7_quantile(column, 1.0 - 0.5 * alpha), ci.center);
    ci.defined = true;
  }
  return out;
}

std::vector<ConfidenceInterval> bootstrap_uniform_ci(const FrequencyDistribution& reference,
                                                     const BinSpec& spec,
                                                     const BootstrapOptions& opt,
                                                     const RandomSource& rng) {
  return percentile_intervals(bootstrap_uniform_replicates(reference, spec, opt, rng), opt.level);
}

// ---------------------------------------------------------------------------
// Figure data

namespace {

void add_reference_rows(FigureData& fig, const std::vector<double>& shares) {
  for (std::size_t i = 0; i < fig.labels.size(); ++i) {
    ConfidenceInterval ci;
    ci.center = ci.lower = ci.upper = shares[i];
    ci.defined = false;
    fig.points.push_back({"reference", fig.labels[i], ci});
  }
}

void add_count_series(FigureData& fig, const std::string& name,
                      const std::vector<std::int64_t>& counts, std::int64_t n) {
  for (std::size_t i = 0; i < fig.labels.size(); ++i) {
    ConfidenceInterval ci;
    if (n > 0) {
      ci = wald_ci(counts[i], n);
    } else {
      ci.defined = false;
    }
    fig.points.push_back({name, fig.labels[i], ci});
  }
}

}  // namespace

FigureData frequency_figure(const FrequencyDistribution& reference, const BinSpec& spec,
                            const std::vector<NamedSample>& tests) {
  FigureData fig;
  std::vector<double> shares;
  for (const auto& b : spec.bins) {
    fig.labels.push_back(b.label);
    shares.push_back(static_cast<double>(b.reference_mass) /
                     static_cast<double>(spec.reference_total));
  }
  add_reference_rows(fig, shares);
  for (const auto& t : tests) {
    const auto binned = bin_counts(t.distribution, reference, spec);
    add_count_series(fig, t.name, binned.observed, binned.n);
  }
  return fig;
}

FigureData origin_figure(const OriginDistribution& reference,
                         const std::vector<NamedOrigins>& tests) {
  FigureData fig;
  std::vector<double> shares;
  const auto cats = origin_categories(reference.merged_semitic);
  for (Origin o : cats) {
    fig.labels.emplace_back(to_string(o));
    shares.push_back(reference.total == 0 ? 0.0
                                          : static_cast<double>(reference.count(o)) /
                                                static_cast<double>(reference.total));
  }
  add_reference_rows(fig, shares);
  for (const auto& t : tests) {
    if (t.distribution.merged_semitic != reference.merged_semitic)
      throw DataError("origin figure: series '" + t.name + "' disagrees on Semitic merge");
    std::vector<std::int64_t> counts;
    for (Origin o : cats) counts.push_back(t.distribution.count(o));
    add_count_series(fig, t.name, counts, t.distribution.total);
  }
  return fig;
}

FigureData top_names_figure(const FrequencyDistribution& reference,
                            const std::vector<NamedSample>& tests, std::size_t top) {
  FigureData fig;
  const auto ranked = reference.ranked();
  const std::size_t shown = std::min(top, ranked.size());
  std::vector<double> shares;
  const double total = static_cast<double>(reference.total());
  std::int64_t rare_mass = 0;
  for (const auto& [name, c] : reference.counts())
    if (c == 1) rare_mass += 1;
  for (std::size_t i = 0; i < shown; ++i) {
    fig.labels.push_back(ranked[i].first);
    shares.push_back(static_cast<double>(ranked[i].second) / total);
  }
  fig.labels.emplace_back("rare");
  shares.push_back(static_cast<double>(rare_mass) / total);
  add_reference_rows(fig, shares);

  for (const auto& t : tests) {
    std::vector<std::int64_t> counts;
    for (std::size_t i = 0; i < shown; ++i) counts.push_back(t.distribution.count(ranked[i].first));
    std::int64_t rare = 0;
    for (const auto& [name, c] : t.distribution.counts())
      if (reference.count(name) <= 1) rare += c;
    counts.push_back(rare);
    add_count_series(fig, t.name, counts, t.distribution.total());
  }
  return fig;
}

void append_series(FigureData& fig, const std::string& series,
                   const std::vector<ConfidenceInterval>& intervals) {
  if (intervals.size() != fig.labels.size())
    throw DataError("figure series '" + series + "' has the wrong number of categories");
  for (std::size_t i = 0; i < intervals.size(); ++i)
    fig.points.push_back({series, fig.labels[i], intervals[i]});
}

void write_figure_csv(std::ostream& out, const FigureData& fig) {
  out << "series,bin_label,center,lower,upper,defined\n";
  out << std::setprecision(10);
  for (const auto& p : fig.points) {
    out << p.series << ',' << p.label << ',' << p.interval.center << ',' << p.interval.lower << ','
        << p.interval.upper << ',' << (p.interval.defined ? "true" : "false") << '\n';
  }
}

nlohmann::json to_json(const FigureData& fig) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : fig.points) {
    points.push_back({{"series", p.series},
                      {"bin_label", p.label},
                      {"center", p.interval.center},
                      {"lower", p.interval.lower},
                      {"upper", p.interval.upper},
                      {"defined", p.interval.defined},
                      {"method", p.interval.method == IntervalMethod::wald ? "wald"
                                                                            : "bootstrap_percentile"}});
  }
  return {{"labels", fig.labels}, {"points", points}};
}

}  // namespace namefit
