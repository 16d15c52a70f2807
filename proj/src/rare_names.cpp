#include "namefit/rare_names.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "namefit/distributions.hpp"
#include "namefit/error.hpp"

namespace namefit {

namespace {

bool is_rare(std::int64_t reference_frequency, RareDefinition definition) {
  return reference_frequency <= (definition == RareDefinition::once ? 1 : 2);
}

void validate(const RareSpec& spec) {
  if (spec.pool_occurrences < 1) throw DataError("rare: pool must be positive");
  if (spec.rare_occurrences < 0 || spec.rare_occurrences > spec.pool_occurrences)
    throw DataError("rare: rare occurrences must lie in [0, pool]");
  if (spec.draw_size < 1 || spec.draw_size > spec.pool_occurrences)
    throw DataError("rare: draw size must lie in [1, pool]");
}

RareRow make_row(const RareSpec& spec, std::int64_t k) {
  RareRow row;
  row.k = k;
  row.tail_binomial = dist::binom_cdf(k, spec.draw_size, spec.rare_share());
  row.tail_exact = dist::hypergeom_cdf(k, spec.pool_occurrences, spec.rare_occurrences,
                                       spec.draw_size);
  row.approximation_flag = std::fabs(row.tail_binomial - row.tail_exact) > kRareApproximationFlag;
  return row;
}

}  // namespace

std::int64_t count_rare(const FrequencyDistribution& test, const FrequencyDistribution& reference,
                        RareDefinition definition) {
  std::int64_t k = 0;
  for (const auto& [name, c] : test.counts())
    if (is_rare(reference.count(name), definition)) k += c;
  return k;
}

std::int64_t rare_occurrences(const FrequencyDistribution& reference, RareDefinition definition) {
  std::int64_t k = 0;
  for (const auto& [name, c] : reference.counts())
    if (is_rare(c, definition)) k += c;
  return k;
}

RareResult rare_tail(const RareSpec& spec, std::int64_t k) {
  validate(spec);
  if (k < 0 || k > spec.draw_size) throw DataError("rare: k must lie in [0, n]");
  RareResult result;
  for (std::int64_t i = 0; i <= spec.draw_size; ++i) result.table.push_back(make_row(spec, i));
  result.observed = result.table[static_cast<std::size_t>(k)];
  return result;
}

std::vector<RareRow> rare_sensitivity(const RareSpec& spec, const std::vector<std::int64_t>& ks) {
  validate(spec);
  std::vector<RareRow> rows;
  for (auto k : ks) {
    if (k < 0 || k > spec.draw_size) throw DataError("rare: k must lie in [0, n]");
    rows.push_back(make_row(spec, k));
  }
  return rows;
}

double calibrate_binomial_p(std::int64_t n, std::int64_t k, double target) {
  if (n < 1 || k < 0 || k >= n) throw DataError("calibrate: requires 0 <= k < n");
  if (!(target > 0.0 && target < 1.0)) throw DataError("calibrate: target must lie in (0, 1)");
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (dist::binom_cdf(k, n, mid) > target) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<RareRow> binomial_tail_rows(std::int64_t n, double p, const std::vector<std::int64_t>& ks) {
  std::vector<RareRow> rows;
  for (auto k : ks) {
    if (k < 0 || k > n) throw DataError("rare: k must lie in [0, n]");
    RareRow row;
    row.k = k;
    row.tail_binomial = dist::binom_cdf(k, n, p);
    row.tail_exact = std::nan("");
    rows.push_back(row);
  }
  return rows;
}

void write_rare_csv(std::ostream& out, const std::vector<RareRow>& rows) {
  out << "k,tail_binomial,tail_exact\n" << std::setprecision(10);
  for (const auto& r : rows) {
    out << r.k << ',' << r.tail_binomial << ',';
    if (std::isnan(r.tail_exact)) out << "NA";
    else out << r.tail_exact;
    out << '\n';
  }
}

}  // namespace namefit
