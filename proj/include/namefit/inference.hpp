#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "namefit/binning.hpp"
#include "namefit/random.hpp"

namespace namefit {

// Smallest p-value R reports without extended precision; used as the
// display floor in result matrices.
inline constexpr double kPValueFloor = 2.2e-16;

// Pearson test result. The null hypothesis is always "the test sample fits
// the reference distribution"; a small p-value is evidence against fit.
struct GofResult {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
  std::size_t bins_used = 0;
  ConditionReport conditions;
  bool reference_adjusted = false;
};

// Pearson goodness-of-fit. Throws NumericError("empty expected cell") when
// some n * p_i is zero and DataError on inconsistent inputs.
GofResult gof_test(std::span<const std::int64_t> observed, std::span<const double> reference_probs,
                   std::int64_t n);

// Pearson test of independence on a 2 x K table, df = K - 1.
GofResult independence_test(std::span<const std::int64_t> row_a,
                            std::span<const std::int64_t> row_b);

// How the alternative's distance from the null enters the noncentrality.
//   alternative_weighted: lambda = n * sum (alt - null)^2 / alt
//   null_weighted:        lambda = n * sum (alt - null)^2 / null
// alternative_weighted is the default: it is the convention that yields
// the dice powers 0.189 and 0.952.
enum class NoncentralityConvention { alternative_weighted, null_weighted };

struct PowerSpec {
  std::vector<double> null_probs;
  std::vector<double> alt_probs;
  std::int64_t n = 0;
  double alpha = 0.05;
  NoncentralityConvention convention = NoncentralityConvention::alternative_weighted;
};

struct PowerResult {
  double power = 0.0;
  double lambda = 0.0;
  double critical_value = 0.0;
  int df = 0;
};

double noncentrality(const PowerSpec& spec);
PowerResult power(const PowerSpec& spec);

struct Benchmark {
  double alpha = 0.05;
  int num_tests = 1;
  double adjusted = 0.05;
};

Benchmark bonferroni(double alpha, int num_tests);

// One Multinomial(n, probs) sample; each of the n draws is located by
// binary search in the cumulative probability table.
std::vector<std::int64_t> sample_multinomial(std::span<const double> cumulative, std::int64_t n,
                                             RandomSource& rng);

// Monte Carlo p-value: fraction of `resamples` multinomial samples under
// the reference whose Pearson statistic is >= the observed one. Streams are
// assigned per kReplicateBlock, so the parallel and serial versions agree
// exactly.
double monte_carlo_p_value(std::span<const std::int64_t> observed,
                           std::span<const double> reference_probs, std::int64_t resamples,
                           const RandomSource& rng, int jobs);
double monte_carlo_p_value_serial(std::span<const std::int64_t> observed,
                                  std::span<const double> reference_probs,
                                  std::int64_t resamples, const RandomSource& rng);

double pearson_statistic(std::span<const std::int64_t> observed, std::span<const double> expected);

}  // namespace namefit
