#include "namefit/binning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "namefit/error.hpp"

namespace namefit {

FrequencyClassProfile profile(const FrequencyDistribution& reference) {
  if (reference.empty()) throw DataError("cannot profile an empty reference distribution");
  std::map<std::int64_t, std::int64_t> by_frequency;
  for (const auto& [name, c] : reference.counts()) by_frequency[c] += c;
  FrequencyClassProfile p;
  p.total = reference.total();
  for (const auto& [f, mass] : by_frequency) p.classes.push_back({f, mass});
  return p;
}

std::size_t BinSpec::bin_index(std::int64_t frequency) const {
  for (std::size_t i = bins.size(); i-- > 0;) {
    if (frequency >= bins[i].lo) return i;
  }
  return 0;
}

double partition_rmse(const std::vector<std::int64_t>& masses, std::int64_t total) {
  const double k = static_cast<double>(masses.size());
  const double ideal = static_cast<double>(total) / k;
  double sum = 0.0;
  for (auto m : masses) {
    const double d = static_cast<double>(m) - ideal;
    sum += d * d;
  }
  return std::sqrt(sum / k);
}

namespace {

std::string make_label(std::int64_t lo, std::optional<std::int64_t> hi) {
  if (!hi) return std::to_string(lo) + "+";
  if (*hi == lo) return std::to_string(lo);
  return std::to_string(lo) + "-" + std::to_string(*hi);
}

}  // namespace

// The objective is evaluated in integers: sum_i (k*mass_i - total)^2 equals
// k^2 times the sum of squared deviations from total/k, so equal-RMSE
// partitions compare exactly equal and the tie-break is well defined.
BinSpec compute_bins(const FrequencyClassProfile& prof, std::size_t k) {
  const std::size_t n = prof.classes.size();
  if (k < 2) throw DataError("bin count must be at least 2");
  if (k > n)
    throw DataError("too many bins: " + std::to_string(k) + " requested but only " +
                    std::to_string(n) + " frequency classes");

  using Cost = long double;  // integer-exact while k * total < 2^32
  std::vector<std::int64_t> prefix(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + prof.classes[i].mass;
  const auto kk = static_cast<std::int64_t>(k);
  auto segment_cost = [&](std::size_t from, std::size_t to) -> Cost {  // classes [from, to)
    const std::int64_t d = kk * (prefix[to] - prefix[from]) - prof.total;
    return static_cast<Cost>(d) * static_cast<Cost>(d);
  };

  // best[c][j]: minimum cost to split classes [j, n) into c nonempty bins.
  const Cost inf = std::numeric_limits<Cost>::infinity();
  std::vector<std::vector<Cost>> best(k + 1, std::vector<Cost>(n + 1, inf));
  best[0][n] = 0;
  for (std::size_t c = 1; c <= k; ++c) {
    for (std::size_t j = 0; j + c <= n; ++j) {
      Cost b = inf;
      for (std::size_t e = j + 1; e + (c - 1) <= n; ++e) {
        if (best[c - 1][e] == inf) continue;
        b = std::min(b, segment_cost(j, e) + best[c - 1][e]);
      }
      best[c][j] = b;
    }
  }

  // Forward reconstruction taking the earliest cut that stays optimal gives
  // the lexicographically smallest upper boundaries.
  BinSpec spec;
  spec.reference_total = prof.total;
  std::vector<std::int64_t> masses;
  std::size_t j = 0;
  for (std::size_t c = k; c >= 1; --c) {
    std::size_t cut = n;
    for (std::size_t e = j + 1; e + (c - 1) <= n; ++e) {
      if (best[c - 1][e] == inf) continue;
      if (segment_cost(j, e) + best[c - 1][e] == best[c][j]) {
        cut = e;
        break;
      }
    }
    Bin bin;
    bin.lo = prof.classes[j].frequency;
    bin.reference_mass = prefix[cut] - prefix[j];
    masses.push_back(bin.reference_mass);
    spec.bins.push_back(bin);
    j = cut;
  }
  for (std::size_t i = 0; i < spec.bins.size(); ++i) {
    if (i + 1 < spec.bins.size()) spec.bins[i].hi = spec.bins[i + 1].lo - 1;
    spec.bins[i].label = make_label(spec.bins[i].lo, spec.bins[i].hi);
  }
  spec.rmse = partition_rmse(masses, prof.total);
  return spec;
}

BinnedCounts bin_counts(const FrequencyDistribution& test, const FrequencyDistribution& reference,
                        const BinSpec& spec) {
  BinnedCounts out;
  out.observed.assign(spec.k(), 0);
  out.expected.assign(spec.k(), 0.0);
  for (const auto& [name, c] : test.counts()) {
    const std::int64_t f = std::max<std::int64_t>(1, reference.count(name));
    out.observed[spec.bin_index(f)] += c;
  }
  out.n = test.total();
  const double n = static_cast<double>(out.n);
  const double total = static_cast<double>(spec.reference_total);
  for (std::size_t i = 0; i < spec.k(); ++i)
    out.expected[i] = n * static_cast<double>(spec.bins[i].reference_mass) / total;
  return out;
}

ConditionReport check_conditions(const std::vector<double>& expected) {
  ConditionReport r;
  r.cells = expected.size();
  r.min_expected = expected.empty() ? 0.0 : *std::min_element(expected.begin(), expected.end());
  r.cells_below_five = static_cast<std::size_t>(
      std::count_if(expected.begin(), expected.end(), [](double e) { return e < 5.0; }));
  r.min_expected_ok = !expected.empty() && r.min_expected >= 1.0;
  r.small_cell_share_ok = 5 * r.cells_below_five <= r.cells;
  return r;
}

FittedBins fit_bins(const FrequencyDistribution& test, const FrequencyDistribution& reference,
                    std::size_t k) {
  const auto prof = profile(reference);
  FittedBins fitted;
  fitted.requested_k = k;
  std::size_t current = std::min(k, prof.classes.size());
  if (current < 2)
    throw NumericError("reference has fewer than two frequency classes; cannot bin");
  for (; current >= 2; --current) {
    fitted.spec = compute_bins(prof, current);
    fitted.counts = bin_counts(test, reference, fitted.spec);
    fitted.conditions = check_conditions(fitted.counts);
    if (fitted.conditions.passed()) return fitted;
  }
  throw NumericError("test conditions fail for every bin count down to 2");
}

nlohmann::json to_json(const BinSpec& spec) {
  nlohmann::json bins = nlohmann::json::array();
  for (const auto& b : spec.bins) {
    bins.push_back({{"lo", b.lo},
                    {"hi", b.hi ? nlohmann::json(*b.hi) : nlohmann::json(nullptr)},
                    {"label", b.label},
                    {"reference_mass", b.reference_mass}});
  }
  return {{"k", spec.k()},
          {"reference_total", spec.reference_total},
          {"rmse", spec.rmse},
          {"bins", bins}};
}

}  // namespace namefit
