#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "namefit/corpus.hpp"

namespace namefit {

// One frequency class: all names that occur exactly `frequency` times in
// the reference, and the occurrences they carry together.
struct FrequencyClass {
  std::int64_t frequency = 0;
  std::int64_t mass = 0;  // frequency * number of names with that frequency
};

struct FrequencyClassProfile {
  std::vector<FrequencyClass> classes;  // strictly increasing frequency
  std::int64_t total = 0;
};

FrequencyClassProfile profile(const FrequencyDistribution& reference);

struct Bin {
  std::int64_t lo = 0;
  std::optional<std::int64_t> hi;  // nullopt on the last, open-ended bin
  std::int64_t reference_mass = 0;
  std::string label;

  bool contains(std::int64_t frequency) const {
    return frequency >= lo && (!hi || frequency <= *hi);
  }
};

struct BinSpec {
  std::vector<Bin> bins;
  std::int64_t reference_total = 0;
  double rmse = 0.0;

  std::size_t k() const { return bins.size(); }
  // Frequencies below the first bin's lower edge (including names absent
  // from the reference, treated as frequency 1) route to bin 0.
  std::size_t bin_index(std::int64_t frequency) const;
};

// RMSE of per-bin masses against the equal share total/k.
double partition_rmse(const std::vector<std::int64_t>& masses, std::int64_t total);

// Minimum-RMSE contiguous partition of the profile into k bins. Ties go to
// the partition whose boundaries are lexicographically smallest. Throws
// DataError("too many bins") when k exceeds the class count, or when k < 2.
BinSpec compute_bins(const FrequencyClassProfile& profile, std::size_t k);

struct BinnedCounts {
  std::vector<std::int64_t> observed;
  std::vector<double> expected;
  std::int64_t n = 0;
};

BinnedCounts bin_counts(const FrequencyDistribution& test, const FrequencyDistribution& reference,
                        const BinSpec& spec);

struct ConditionReport {
  double min_expected = 0.0;
  std::size_t cells_below_five = 0;
  std::size_t cells = 0;
  bool min_expected_ok = false;     // no cell with expected < 1
  bool small_cell_share_ok = false;  // at most 20% of cells with expected < 5

  bool passed() const { return min_expected_ok && small_cell_share_ok; }
  double small_cell_share() const {
    return cells == 0 ? 0.0 : static_cast<double>(cells_below_five) / static_cast<double>(cells);
  }
};

ConditionReport check_conditions(const std::vector<double>& expected);
inline ConditionReport check_conditions(const BinnedCounts& binned) {
  return check_conditions(binned.expected);
}

struct FittedBins {
  BinSpec spec;
  BinnedCounts counts;
  ConditionReport conditions;
  std::size_t requested_k = 0;
};

// Bins with `k` and, while the test-condition check fails, re-bins with
// k - 1 down to k = 2. Starts at min(k, class count). Throws NumericError
// when even two bins fail the conditions.
FittedBins fit_bins(const FrequencyDistribution& test, const FrequencyDistribution& reference,
                    std::size_t k);

nlohmann::json to_json(const BinSpec& spec);

}  // namespace namefit
