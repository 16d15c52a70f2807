#include "namefit/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "namefit/distributions.hpp"
#include "namefit/error.hpp"

namespace namefit {

namespace {

constexpr double kProbSumTolerance = 1e-9;

void require_probability_vector(std::span<const double> p, const char* what) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0 && v <= 1.0)) throw DataError(std::string(what) + ": entries must lie in [0, 1]");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > kProbSumTolerance)
    throw DataError(std::string(what) + ": probabilities must sum to 1 (got " +
                    std::to_string(sum) + ")");
}

std::vector<double> cumulative_of(std::span<const double> probs) {
  std::vector<double> cum(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cum.begin());
  cum.back() = 1.0;
  return cum;
}

}  // namespace

double pearson_statistic(std::span<const std::int64_t> observed, std::span<const double> expected) {
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double d = static_cast<double>(observed[i]) - expected[i];
    stat += d * d / expected[i];
  }
  return stat;
}

GofResult gof_test(std::span<const std::int64_t> observed, std::span<const double> reference_probs,
                   std::int64_t n) {
  if (observed.size() != reference_probs.size())
    throw DataError("gof_test: observed and reference vectors differ in length");
  if (observed.size() < 2) throw DataError("gof_test: at least two cells are required");
  require_probability_vector(reference_probs, "gof_test reference");
  std::int64_t sum = 0;
  for (auto o : observed) {
    if (o < 0) throw DataError("gof_test: negative observed count");
    sum += o;
  }
  if (sum != n) throw DataError("gof_test: observed counts do not sum to n");

  std::vector<double> expected(observed.size());
  for (std::size_t i = 0; i < observed.size(); ++i) {
    expected[i] = static_cast<double>(n) * reference_probs[i];
    if (expected[i] == 0.0) throw NumericError("empty expected cell");
  }

  GofResult r;
  r.statistic = pearson_statistic(observed, expected);
  r.df = static_cast<int>(observed.size()) - 1;
  r.bins_used = observed.size();
  r.p_value = dist::chisq_sf(r.statistic, r.df);
  r.conditions = check_conditions(expected);
  return r;
}

GofResult independence_test(std::span<const std::int64_t> row_a,
                            std::span<const std::int64_t> row_b) {
  if (row_a.size() != row_b.size())
    throw DataError("independence_test: rows differ in length");
  const std::size_t k = row_a.size();
  if (k < 2) throw DataError("independence_test: at least two columns are required");

  std::vector<std::int64_t> col(k);
  std::int64_t total_a = 0;
  std::int64_t total_b = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (row_a[i] < 0 || row_b[i] < 0) throw DataError("independence_test: negative count");
    col[i] = row_a[i] + row_b[i];
    total_a += row_a[i];
    total_b += row_b[i];
    if (col[i] == 0) throw NumericError("independence_test: zero column total");
  }
  if (total_a == 0 || total_b == 0) throw NumericError("independence_test: zero row total");
  const double grand = static_cast<double>(total_a + total_b);

  std::vector<double> expected_a(k);
  std::vector<double> expected_b(k);
  for (std::size_t i = 0; i < k; ++i) {
    expected_a[i] = static_cast<double>(total_a) * static_cast<double>(col[i]) / grand;
    expected_b[i] = static_cast<double>(total_b) * static_cast<double>(col[i]) / grand;
  }
  GofResult r;
  r.statistic = pearson_statistic(row_a, expected_a) + pearson_statistic(row_b, expected_b);
  r.df = static_cast<int>(k) - 1;
  r.bins_used = k;
  r.p_value = dist::chisq_sf(r.statistic, r.df);
  std::vector<double> all = expected_a;
  all.insert(all.end(), expected_b.begin(), expected_b.end());
  r.conditions = check_conditions(all);
  return r;
}

double noncentrality(const PowerSpec& spec) {
  if (spec.null_probs.size() != spec.alt_probs.size() || spec.null_probs.size() < 2)
    throw DataError("power: null and alternative must have equal length >= 2");
  require_probability_vector(spec.null_probs, "power null");
  require_probability_vector(spec.alt_probs, "power alternative");
  if (spec.n < 1) throw DataError("power: n must be positive");

  double sum = 0.0;
  for (std::size_t i = 0; i < spec.null_probs.size(); ++i) {
    const double p0 = spec.null_probs[i];
    const double p1 = spec.alt_probs[i];
    const double d = p1 - p0;
    const double denom =
        spec.convention == NoncentralityConvention::alternative_weighted ? p1 : p0;
    if (denom == 0.0) {
      if (d != 0.0) throw NumericError("infinite noncentrality");
      continue;
    }
    sum += d * d / denom;
  }
  return static_cast<double>(spec.n) * sum;
}

PowerResult power(const PowerSpec& spec) {
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) throw DataError("power: alpha must lie in (0, 1)");
  PowerResult r;
  r.lambda = noncentrality(spec);
  r.df = static_cast<int>(spec.null_probs.size()) - 1;
  r.critical_value = dist::chisq_quantile(1.0 - spec.alpha, r.df);
  r.power = dist::noncentral_chisq_sf(r.critical_value, r.df, r.lambda);
  return r;
}

Benchmark bonferroni(double alpha, int num_tests) {
  if (num_tests < 1) throw DataError("bonferroni: num_tests must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DataError("bonferroni: alpha must lie in (0, 1)");
  return {alpha, num_tests, alpha / num_tests};
}

std::vector<std::int64_t> sample_multinomial(std::span<const double> cumulative, std::int64_t n,
                                             RandomSource& rng) {
  std::vector<std::int64_t> counts(cumulative.size(), 0);
  for (std::int64_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    ++counts[static_cast<std::size_t>(it - cumulative.begin())];
  }
  return counts;
}

namespace {

struct McSetup {
  std::vector<double> cumulative;
  std::vector<double> expected;
  double threshold = 0.0;
  std::int64_t n = 0;
};

McSetup mc_setup(std::span<const std::int64_t> observed, std::span<const double> probs,
                 std::int64_t resamples) {
  if (resamples < 1) throw DataError("monte carlo: resamples must be >= 1");
  McSetup s;
  s.n = std::accumulate(observed.begin(), observed.end(), std::int64_t{0});
  const auto base = gof_test(observed, probs, s.n);
  s.cumulative = cumulative_of(probs);
  s.expected.resize(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) s.expected[i] = static_cast<double>(s.n) * probs[i];
  // Statistics equal up to rounding count as "at least as extreme".
  s.threshold = base.statistic * (1.0 - 1e-12);
  return s;
}

}  // namespace

double monte_carlo_p_value(std::span<const std::int64_t> observed,
                           std::span<const double> reference_probs, std::int64_t resamples,
                           const RandomSource& rng, int jobs) {
  const McSetup s = mc_setup(observed, reference_probs, resamples);
  const auto block = static_cast<std::int64_t>(kReplicateBlock);
  const std::int64_t blocks = (resamples + block - 1) / block;
  std::int64_t hits = 0;
#pragma omp parallel for num_threads(std::max(1, jobs)) schedule(static) reduction(+ : hits)
  for (std::int64_t b = 0; b < blocks; ++b) {
    RandomSource child = rng.child(static_cast<std::uint64_t>(b));
    const std::int64_t end = std::min(resamples, (b + 1) * block);
    for (std::int64_t r = b * block; r < end; ++r) {
      const auto counts = sample_multinomial(s.cumulative, s.n, child);
      if (pearson_statistic(counts, s.expected) >= s.threshold) ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(resamples);
}

double monte_carlo_p_value_serial(std::span<const std::int64_t> observed,
                                  std::span<const double> reference_probs,
                                  std::int64_t resamples, const RandomSource& rng) {
  const McSetup s = mc_setup(observed, reference_probs, resamples);
  std::int64_t hits = 0;
  RandomSource child = rng.child(0);
  for (std::int64_t r = 0; r < resamples; ++r) {
    if (r % static_cast<std::int64_t>(kReplicateBlock) == 0)
      child = rng.child(static_cast<std::uint64_t>(r) / kReplicateBlock);
    const auto counts = sample_multinomial(s.cumulative, s.n, child);
    if (pearson_statistic(counts, s.expected) >= s.threshold) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(resamples);
}

}  // namespace namefit
