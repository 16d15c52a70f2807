#pragma once

// Shared fixtures and brute-force oracles for the test suites. Nothing in
// here calls into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "namefit/binning.hpp"
#include "namefit/corpus.hpp"

namespace namefit::oracle {

inline std::string name_of(std::size_t i) { return "N" + std::to_string(1000 + i); }

// Zipf-like reference: count of rank r is max(1, round(top / r^exponent)).
inline FrequencyDistribution zipf_reference(std::size_t names, double top, double exponent) {
  std::map<std::string, std::int64_t> counts;
  for (std::size_t r = 1; r <= names; ++r) {
    const auto c = static_cast<std::int64_t>(std::llround(top / std::pow(static_cast<double>(r), exponent)));
    counts[name_of(r)] = std::max<std::int64_t>(1, c);
  }
  return FrequencyDistribution(std::move(counts));
}

// 457 names and 2185 occurrences, with about 1/6 of the mass on
// singleton names: the shape of the male Palestinian reference population.
inline FrequencyDistribution synthetic_reference() { return zipf_reference(457, 580.0, 1.29); }

// Draws n occurrences with replacement, proportionally to reference counts.
template <typename Rng>
FrequencyDistribution sample_from(const FrequencyDistribution& reference, std::int64_t n, Rng& rng) {
  std::vector<std::string> names;
  std::vector<double> weights;
  for (const auto& [name, c] : reference.counts()) {
    names.push_back(name);
    weights.push_back(static_cast<double>(c));
  }
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::map<std::string, std::int64_t> counts;
  for (std::int64_t i = 0; i < n; ++i) ++counts[names[pick(rng)]];
  return FrequencyDistribution(std::move(counts));
}

struct BruteForcePartition {
  std::vector<std::size_t> cuts;  // index one past the last class of each bin
  double rmse = std::numeric_limits<double>::infinity();
};

// Enumerates every contiguous partition of `masses` into k nonempty bins.
// Among RMSE ties (relative 1e-12) keeps the lexicographically smallest
// cut vector.
inline BruteForcePartition brute_force_partition(const std::vector<std::int64_t>& masses,
                                                 std::size_t k) {
  const std::size_t n = masses.size();
  double total = 0.0;
  for (auto m : masses) total += static_cast<double>(m);
  BruteForcePartition best;
  std::vector<std::size_t> cuts(k);
  // Recursive enumeration of strictly increasing cut positions.
  auto recurse = [&](auto&& self, std::size_t bin, std::size_t start) -> void {
    if (bin == k - 1) {
      cuts[bin] = n;
      double sse = 0.0;
      std::size_t from = 0;
      for (std::size_t b = 0; b < k; ++b) {
        double mass = 0.0;
        for (std::size_t i = from; i < cuts[b]; ++i) mass += static_cast<double>(masses[i]);
        const double d = mass - total / static_cast<double>(k);
        sse += d * d;
        from = cuts[b];
      }
      const double rmse = std::sqrt(sse / static_cast<double>(k));
      const double tol = 1e-12 * std::max(1.0, best.rmse);
      if (best.cuts.empty() || rmse < best.rmse - tol ||
          (std::fabs(rmse - best.rmse) <= tol && cuts < best.cuts)) {
        best.rmse = rmse;
        best.cuts = cuts;
      }
      return;
    }
    for (std::size_t e = start + 1; e + (k - 1 - bin) <= n; ++e) {
      cuts[bin] = e;
      self(self, bin + 1, e);
    }
  };
  recurse(recurse, 0, 0);
  return best;
}

// Fixed origin for a synthetic name, spread over all eight categories with
// Biblical and SemiticHebrew dominant.
inline Origin origin_of(const std::string& name) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : name) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
  const auto u = h % 100;
  if (u < 38) return Origin::Biblical;
  if (u < 62) return Origin::SemiticHebrew;
  if (u < 76) return Origin::Greek;
  if (u < 84) return Origin::Latin;
  if (u < 91) return Origin::SemiticGreek;
  if (u < 95) return Origin::Persian;
  if (u < 98) return Origin::Arabian;
  return Origin::Egyptian;
}

// One record per occurrence, each its own person, dated inside the default
// window.
inline std::vector<OccurrenceRecord> records_from(const FrequencyDistribution& d,
                                                  const std::string& tag,
                                                  Origin (*origin)(const std::string&) = origin_of) {
  std::vector<OccurrenceRecord> out;
  std::size_t id = 0;
  for (const auto& [name, c] : d.counts()) {
    for (std::int64_t i = 0; i < c; ++i) {
      OccurrenceRecord r;
      r.person_id = tag + "-" + std::to_string(++id);
      r.name = name;
      r.gender = Gender::male;
      r.region = Region::palestine;
      r.date_start = 1;
      r.date_end = 50;
      r.origin = origin(name);
      r.source_tag = tag;
      out.push_back(std::move(r));
    }
  }
  return out;
}

inline void write_corpus_csv(std::ostream& out, const std::vector<OccurrenceRecord>& records) {
  out << "person_id,name,gender,region,date_start,date_end,fictitious,nickname,exclude_category,"
         "origin,source_tag\n";
  for (const auto& r : records) {
    out << r.person_id << ',' << r.name << ',' << to_string(r.gender) << ',' << to_string(r.region)
        << ',' << (r.date_start ? std::to_string(*r.date_start) : "") << ','
        << (r.date_end ? std::to_string(*r.date_end) : "") << ','
        << (r.fictitious ? "true" : "false") << ',' << (r.nickname ? "true" : "false") << ','
        << r.exclude_category.value_or("") << ','
        << (r.origin ? std::string(to_string(*r.origin)) : "") << ',' << r.source_tag << '\n';
  }
}

inline double binomial_coefficient(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace namefit::oracle
