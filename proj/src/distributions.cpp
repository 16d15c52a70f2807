#include "namefit/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "namefit/error.hpp"

namespace namefit::dist {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 100000;

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double gamma_q_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double chisq_pdf(double x, int df) {
  if (x <= 0.0) return df == 2 ? 0.5 : 0.0;
  const double k = 0.5 * df;
  return std::exp((k - 1.0) * std::log(x) - 0.5 * x - k * std::log(2.0) - std::lgamma(k));
}

double log_choose(std::int64_t n, std::int64_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double sum_ascending(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

}  // namespace

double gamma_p(double a, double x) {
  require(a > 0.0 && x >= 0.0, "gamma_p: requires a > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_fraction(a, x);
}

double gamma_q(double a, double x) {
  require(a > 0.0 && x >= 0.0, "gamma_q: requires a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double chisq_cdf(double x, int df) {
  require(df >= 1, "chisq: df must be >= 1");
  require(x >= 0.0, "chisq: x must be nonnegative");
  return gamma_p(0.5 * df, 0.5 * x);
}

double chisq_sf(double x, int df) {
  require(df >= 1, "chisq: df must be >= 1");
  require(x >= 0.0, "chisq: x must be nonnegative");
  return gamma_q(0.5 * df, 0.5 * x);
}

double chisq_quantile(double prob, int df) {
  require(df >= 1, "chisq_quantile: df must be >= 1");
  require(prob > 0.0 && prob < 1.0, "chisq_quantile: prob must lie in (0, 1)");
  // Residual measured on whichever tail is smaller, for accuracy near 1.
  const bool upper = prob > 0.5;
  const double target = upper ? 1.0 - prob : prob;
  auto residual = [&](double x) { return upper ? target - chisq_sf(x, df) : chisq_cdf(x, df) - target; };

  double lo = 0.0;
  double hi = std::max(1.0, static_cast<double>(df));
  while (residual(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw NumericError("chisq_quantile: failed to bracket");
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 500; ++i) {
    const double r = residual(x);
    if (r == 0.0) return x;
    if (r < 0.0) lo = x;
    else hi = x;
    const double pdf = chisq_pdf(x, df);
    double next = pdf > 0.0 ? x - r / pdf : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) <= 1e-15 * std::max(1.0, x)) return next;
    x = next;
  }
  return x;
}

double noncentral_chisq_sf(double x, int df, double lambda) {
  require(df >= 1, "noncentral_chisq_sf: df must be >= 1");
  require(x >= 0.0, "noncentral_chisq_sf: x must be nonnegative");
  require(lambda >= 0.0, "noncentral_chisq_sf: lambda must be nonnegative");
  if (lambda == 0.0) return chisq_sf(x, df);
  if (x == 0.0) return 1.0;

  constexpr double kTail = 1e-12;
  const double mu = 0.5 * lambda;
  const auto mode = static_cast<std::int64_t>(std::floor(mu));
  auto weight = [&](std::int64_t j) {
    const double jd = static_cast<double>(j);
    return std::exp(-mu + jd * std::log(mu) - std::lgamma(jd + 1.0));
  };
  auto term = [&](std::int64_t j) { return chisq_sf(x, df + 2 * static_cast<int>(j)); };

  double sum = 0.0;
  // Upward from the mode; the remaining Poisson mass beyond j is bounded by
  // w_j * r / (1 - r) with r = mu / (j + 1) < 1.
  for (std::int64_t j = mode; j < mode + kMaxIter; ++j) {
    const double w = weight(j);
    sum += w * term(j);
    const double r = mu / static_cast<double>(j + 1);
    if (r < 1.0 && w * r / (1.0 - r) < kTail) break;
  }
  // Downward; remaining mass below j is bounded by w_j * s / (1 - s) with
  // s = j / mu.
  for (std::int64_t j = mode - 1; j >= 0; --j) {
    const double w = weight(j);
    sum += w * term(j);
    const double s = static_cast<double>(j) / mu;
    if (s < 1.0 && w * s / (1.0 - s) < kTail) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double binom_pmf(std::int64_t k, std::int64_t n, double p) {
  require(n >= 0 && p >= 0.0 && p <= 1.0, "binom: requires n >= 0 and 0 <= p <= 1");
  if (k < 0 || k > n) return 0.0;
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == n ? 1.0 : 0.0;
  return std::exp(log_choose(n, k) + static_cast<double>(k) * std::log(p) +
                  static_cast<double>(n - k) * std::log1p(-p));
}

double binom_cdf(std::int64_t k, std::int64_t n, double p) {
  require(n >= 0 && k >= 0 && k <= n, "binom_cdf: requires 0 <= k <= n");
  require(p >= 0.0 && p <= 1.0, "binom_cdf: requires 0 <= p <= 1");
  if (k == n) return 1.0;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(k + 1));
  for (std::int64_t i = 0; i <= k; ++i) terms.push_back(binom_pmf(i, n, p));
  return std::min(1.0, sum_ascending(terms));
}

double hypergeom_pmf(std::int64_t k, std::int64_t population, std::int64_t successes,
                     std::int64_t draws) {
  require(population >= 0 && successes >= 0 && successes <= population,
          "hypergeom: requires 0 <= successes <= population");
  require(draws >= 0 && draws <= population, "hypergeom: requires 0 <= draws <= population");
  const std::int64_t lo = std::max<std::int64_t>(0, draws - (population - successes));
  const std::int64_t hi = std::min(draws, successes);
  if (k < lo || k > hi) return 0.0;
  return std::exp(log_choose(successes, k) + log_choose(population - successes, draws - k) -
                  log_choose(population, draws));
}

double hypergeom_cdf(std::int64_t k, std::int64_t population, std::int64_t successes,
                     std::int64_t draws) {
  require(population >= 0 && successes >= 0 && successes <= population,
          "hypergeom: requires 0 <= successes <= population");
  require(draws >= 0 && draws <= population, "hypergeom: requires 0 <= draws <= population");
  const std::int64_t lo = std::max<std::int64_t>(0, draws - (population - successes));
  const std::int64_t hi = std::min(draws, successes);
  if (k < lo) return 0.0;
  if (k >= hi) return 1.0;
  std::vector<double> terms;
  for (std::int64_t i = lo; i <= k; ++i)
    terms.push_back(hypergeom_pmf(i, population, successes, draws));
  return std::clamp(sum_ascending(terms), 0.0, 1.0);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_quantile(double prob) {
  require(prob > 0.0 && prob < 1.0, "normal_quantile: prob must lie in (0, 1)");
  // 1 - prob is exact here; the lower tail keeps the correction step accurate.
  if (prob > 0.5) return -normal_quantile(1.0 - prob);
  // Acklam's rational approximation (relative error ~1e-9) followed by one
  // Halley step against erfc, which brings it to working precision.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double z;
  if (prob < p_low) {
    const double q = std::sqrt(-2.0 * std::log(prob));
    z = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = prob - 0.5;
    const double r = q * q;
    z = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double e = normal_cdf(z) - prob;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * z * z);
  z -= u / (1.0 + 0.5 * z * u);
  return z;
}

}  // namespace namefit::dist
