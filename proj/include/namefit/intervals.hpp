#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "namefit/binning.hpp"
#include "namefit/corpus.hpp"
#include "namefit/random.hpp"

namespace namefit {

enum class IntervalMethod { wald, bootstrap_percentile };

// Per-category interval for plotting. These are visual aids; whether a
// sample fits is decided by the formal test, not by interval overlap.
struct ConfidenceInterval {
  double center = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;
  IntervalMethod method = IntervalMethod::wald;
  bool defined = true;  // false for Wald at count 0 or count n
};

ConfidenceInterval wald_ci(std::int64_t count, std::int64_t n, double level = 0.95);

struct BootstrapOptions {
  std::size_t draw_size = 52;
  std::size_t replicates = 10000;
  double level = 0.95;
  int jobs = 1;
};

// Per-bin proportions of every replicate, replicate-major (row r holds the
// k proportions of replicate r).
struct BootstrapReplicates {
  std::size_t k = 0;
  std::vector<double> proportions;
  std::size_t replicates() const { return k == 0 ? 0 : proportions.size() / k; }
};

// Each replicate draws `draw_size` distinct reference names uniformly
// without replacement and bins each by its reference frequency. Streams are
// assigned per kReplicateBlock, so output does not depend on `jobs`.
BootstrapReplicates bootstrap_uniform_replicates(const FrequencyDistribution& reference,
                                                 const BinSpec& spec, const BootstrapOptions& opt,
                                                 const RandomSource& rng);
// Single-threaded reference implementation of the same draw.
BootstrapReplicates bootstrap_uniform_replicates_serial(const FrequencyDistribution& reference,
                                                        const BinSpec& spec,
                                                        const BootstrapOptions& opt,
                                                        const RandomSource& rng);

// Percentile intervals (type 7 interpolation) with the replicate mean as
// center.
std::vector<ConfidenceInterval> percentile_intervals(const BootstrapReplicates& reps, double level);

std::vector<ConfidenceInterval> bootstrap_uniform_ci(const FrequencyDistribution& reference,
                                                     const BinSpec& spec,
                                                     const BootstrapOptions& opt,
                                                     const RandomSource& rng);

struct SeriesPoint {
  std::string series;
  std::string label;
  ConfidenceInterval interval;
};

// Plot data: one "reference" row per category (center = reference share,
// no interval) followed by each test series with Wald intervals.
struct FigureData {
  std::vector<std::string> labels;
  std::vector<SeriesPoint> points;
};

struct NamedSample {
  std::string name;
  FrequencyDistribution distribution;
};

struct NamedOrigins {
  std::string name;
  OriginDistribution distribution;
};

FigureData frequency_figure(const FrequencyDistribution& reference, const BinSpec& spec,
                            const std::vector<NamedSample>& tests);
FigureData origin_figure(const OriginDistribution& reference,
                         const std::vector<NamedOrigins>& tests);
// The `top` most frequent reference names plus a "rare" column holding the
// share of occurrences whose name has reference frequency 1.
FigureData top_names_figure(const FrequencyDistribution& reference,
                            const std::vector<NamedSample>& tests, std::size_t top = 12);

// Adds a bootstrap series (e.g. the uniform-sampling case) to frequency data.
void append_series(FigureData& fig, const std::string& series,
                   const std::vector<ConfidenceInterval>& intervals);

void write_figure_csv(std::ostream& out, const FigureData& fig);
nlohmann::json to_json(const FigureData& fig);

}  // namespace namefit
