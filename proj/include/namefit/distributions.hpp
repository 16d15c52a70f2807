#pragma once

#include <cstdint>

namespace namefit::dist {

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
// Series for x < a + 1, Lentz continued fraction otherwise.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

struct ChiSquareParams {
  int df = 1;
  double lambda = 0.0;  // noncentrality; 0 gives the central distribution
};

// Central chi-square. Domain errors throw std::domain_error.
double chisq_cdf(double x, int df);
double chisq_sf(double x, int df);
double chisq_quantile(double prob, int df);

// Noncentral chi-square survival function as a Poisson(lambda/2) mixture of
// central survival functions, summed outward from the Poisson mode until
// the untouched Poisson mass is below 1e-12.
double noncentral_chisq_sf(double x, int df, double lambda);
inline double noncentral_chisq_sf(double x, const ChiSquareParams& p) {
  return noncentral_chisq_sf(x, p.df, p.lambda);
}

double binom_pmf(std::int64_t k, std::int64_t n, double p);
// P(X <= k) for X ~ Binomial(n, p); terms summed smallest first.
double binom_cdf(std::int64_t k, std::int64_t n, double p);

// X ~ Hypergeometric: `draws` items without replacement from a population
// of `population` items of which `successes` are marked.
double hypergeom_pmf(std::int64_t k, std::int64_t population, std::int64_t successes,
                     std::int64_t draws);
double hypergeom_cdf(std::int64_t k, std::int64_t population, std::int64_t successes,
                     std::int64_t draws);

double normal_cdf(double z);
double normal_quantile(double prob);

}  // namespace namefit::dist
