#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "namefit/corpus.hpp"

namespace namefit {

// once: reference frequency 1. once_or_twice: reference frequency <= 2.
// Names absent from the reference count as rare under either definition.
enum class RareDefinition { once, once_or_twice };

std::int64_t count_rare(const FrequencyDistribution& test, const FrequencyDistribution& reference,
                        RareDefinition definition);

// Occurrences in the reference that belong to rare names.
std::int64_t rare_occurrences(const FrequencyDistribution& reference, RareDefinition definition);

struct RareSpec {
  std::int64_t pool_occurrences = 0;  // N
  std::int64_t rare_occurrences = 0;  // K
  std::int64_t draw_size = 0;         // n

  double rare_share() const {
    return static_cast<double>(rare_occurrences) / static_cast<double>(pool_occurrences);
  }
};

struct RareRow {
  std::int64_t k = 0;
  double tail_binomial = 0.0;  // P(X <= k), X ~ Binomial(n, K/N)
  double tail_exact = 0.0;     // P(X <= k), X ~ Hypergeometric(N, K, n)
  bool approximation_flag = false;  // |binomial - exact| > 0.005
};

struct RareResult {
  RareRow observed;
  std::vector<RareRow> table;  // k' = 0..n
};

inline constexpr double kRareApproximationFlag = 0.005;

RareResult rare_tail(const RareSpec& spec, std::int64_t k);

// Rows for the listed k only; the layout of a sensitivity table.
std::vector<RareRow> rare_sensitivity(const RareSpec& spec, const std::vector<std::int64_t>& ks);

// Solves P(X <= k) = target for X ~ Binomial(n, p) by bisection on p. The
// tail is strictly decreasing in p for k < n.
double calibrate_binomial_p(std::int64_t n, std::int64_t k, double target);

// Binomial-only rows for a directly supplied success probability.
std::vector<RareRow> binomial_tail_rows(std::int64_t n, double p, const std::vector<std::int64_t>& ks);

void write_rare_csv(std::ostream& out, const std::vector<RareRow>& rows);

}  // namespace namefit
