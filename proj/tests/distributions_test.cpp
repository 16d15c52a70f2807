#include "namefit/distributions.hpp"

#include <gtest/gtest.h>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/hypergeometric.hpp>
#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <random>
#include <stdexcept>

#include "namefit/random.hpp"
#include "test_support.hpp"

using namespace namefit;
namespace bm = boost::math;

TEST(ChiSquare, KnownValues) {
  EXPECT_NEAR(dist::chisq_sf(13.4, 5), 0.01991, 5e-6);
  EXPECT_NEAR(dist::chisq_sf(2.0, 2), std::exp(-1.0), 1e-12);
  EXPECT_DOUBLE_EQ(dist::chisq_sf(0.0, 3), 1.0);
  EXPECT_DOUBLE_EQ(dist::chisq_cdf(0.0, 3), 0.0);
}

TEST(ChiSquare, TwoDegreesOfFreedomIsExponential) {
  for (double x : {0.01, 0.5, 1.0, 7.0, 30.0, 200.0})
    EXPECT_NEAR(dist::chisq_sf(x, 2) / std::exp(-x / 2.0), 1.0, 1e-12) << x;
}

TEST(ChiSquare, AgreesWithBoost) {
  for (int df = 1; df <= 60; df += 3) {
    const bm::chi_squared_distribution<double> ref(df);
    for (double x : {0.05, 0.7, 1.0, 3.3, 9.0, 17.5, 42.0, 95.0, 160.0}) {
      const double expect_sf = bm::cdf(bm::complement(ref, x));
      const double expect_cdf = bm::cdf(ref, x);
      EXPECT_NEAR(dist::chisq_sf(x, df), expect_sf, 1e-12 + 1e-9 * expect_sf) << df << " " << x;
      EXPECT_NEAR(dist::chisq_cdf(x, df), expect_cdf, 1e-12 + 1e-9 * expect_cdf) << df << " " << x;
    }
  }
}

TEST(ChiSquare, CdfPlusSurvivalIsOne) {
  for (int df : {1, 2, 5, 17, 99})
    for (double x = 0.0; x < 200.0; x += 3.7)
      EXPECT_NEAR(dist::chisq_cdf(x, df) + dist::chisq_sf(x, df), 1.0, 1e-13);
}

TEST(ChiSquare, SurvivalIsMonotone) {
  for (int df : {1, 5, 30}) {
    double prev = 1.0;
    for (double x = 0.0; x < 120.0; x += 0.25) {
      const double s = dist::chisq_sf(x, df);
      EXPECT_LE(s, prev + 1e-15);
      prev = s;
    }
  }
}

TEST(ChiSquare, Quantiles) {
  EXPECT_NEAR(dist::chisq_quantile(0.95, 5), 11.0705, 1e-4);
  EXPECT_NEAR(dist::chisq_quantile(0.5, 2), 2.0 * std::log(2.0), 1e-10);
  for (int df : {1, 3, 8, 40})
    for (double p : {1e-6, 0.01, 0.3, 0.5, 0.9, 0.999, 1.0 - 1e-9}) {
      const double q = dist::chisq_quantile(p, df);
      EXPECT_NEAR(dist::chisq_cdf(q, df), p, 1e-10) << df << " " << p;
      EXPECT_NEAR(q, bm::quantile(bm::chi_squared_distribution<double>(df), p),
                  1e-8 * std::max(1.0, q));
    }
}

TEST(ChiSquare, DomainErrors) {
  EXPECT_THROW(dist::chisq_sf(1.0, 0), std::domain_error);
  EXPECT_THROW(dist::chisq_sf(-1.0, 2), std::domain_error);
  EXPECT_THROW(dist::chisq_quantile(1.5, 2), std::domain_error);
  EXPECT_THROW(dist::noncentral_chisq_sf(1.0, 2, -0.5), std::domain_error);
}

TEST(NoncentralChiSquare, ZeroLambdaIsCentral) {
  for (int df : {1, 2, 5, 11})
    for (double x : {0.0, 0.3, 4.0, 11.07, 50.0})
      EXPECT_EQ(dist::noncentral_chisq_sf(x, df, 0.0), dist::chisq_sf(x, df));
}

TEST(NoncentralChiSquare, AgreesWithBoost) {
  for (int df : {1, 2, 5, 10, 25})
    for (double lambda : {0.1, 2.4, 2.5, 20.0, 55.0, 150.0})
      for (double x : {0.5, 5.0, 11.0705, 30.0, 90.0, 250.0}) {
        const double expect =
            bm::cdf(bm::complement(bm::non_central_chi_squared_distribution<double>(df, lambda), x));
        EXPECT_NEAR(dist::noncentral_chisq_sf(x, df, lambda), expect, 1e-10 + 1e-7 * expect)
            << df << " " << lambda << " " << x;
      }
}

TEST(NoncentralChiSquare, PowerAnchors) {
  const double crit = dist::chisq_quantile(0.95, 5);
  EXPECT_NEAR(dist::noncentral_chisq_sf(crit, 5, 2.5), 0.189, 5e-4);
  EXPECT_NEAR(dist::noncentral_chisq_sf(crit, 5, 20.0), 0.952, 5e-4);
  EXPECT_NEAR(dist::noncentral_chisq_sf(crit, 5, 2.4), 0.18246, 5e-5);
}

TEST(NoncentralChiSquare, IncreasesWithLambda) {
  const double crit = dist::chisq_quantile(0.95, 5);
  double prev = 0.0;
  for (double lambda = 0.0; lambda < 60.0; lambda += 0.5) {
    const double s = dist::noncentral_chisq_sf(crit, 5, lambda);
    EXPECT_GE(s, prev - 1e-14);
    prev = s;
  }
}

TEST(NoncentralChiSquare, MatchesSimulation) {
  // Sum of squared shifted normals with sum of squared shifts = lambda.
  std::mt19937_64 rng(99);
  std::normal_distribution<double> z(0.0, 1.0);
  const int df = 4;
  const double lambda = 6.0;
  const double shift = std::sqrt(lambda / df);
  const double x = 12.0;
  const int reps = 200000;
  int above = 0;
  for (int r = 0; r < reps; ++r) {
    double s = 0.0;
    for (int i = 0; i < df; ++i) {
      const double v = z(rng) + shift;
      s += v * v;
    }
    if (s > x) ++above;
  }
  const double p = dist::noncentral_chisq_sf(x, df, lambda);
  const double se = std::sqrt(p * (1.0 - p) / reps);
  EXPECT_NEAR(static_cast<double>(above) / reps, p, 4.0 * se);
}

TEST(Binomial, SmallValues) {
  EXPECT_DOUBLE_EQ(dist::binom_pmf(1, 2, 0.5), 0.5);
  EXPECT_NEAR(dist::binom_cdf(10, 10, 0.3), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(dist::binom_pmf(0, 5, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(dist::binom_pmf(5, 5, 1.0), 1.0);
  EXPECT_THROW(dist::binom_cdf(-1, 5, 0.4), std::domain_error);
}

TEST(Binomial, MatchesEnumerationOfSequences) {
  // Count successes over all 2^n outcome sequences.
  for (int n = 1; n <= 12; ++n) {
    for (double p : {0.1, 0.37, 0.5, 0.9}) {
      std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const int k = __builtin_popcount(mask);
        pmf[static_cast<std::size_t>(k)] += std::pow(p, k) * std::pow(1.0 - p, n - k);
      }
      double cdf = 0.0;
      for (int k = 0; k <= n; ++k) {
        cdf += pmf[static_cast<std::size_t>(k)];
        EXPECT_NEAR(dist::binom_pmf(k, n, p), pmf[static_cast<std::size_t>(k)], 1e-13);
        EXPECT_NEAR(dist::binom_cdf(k, n, p), cdf, 1e-13);
      }
    }
  }
}

TEST(Binomial, AgreesWithBoostAtTableScale) {
  const bm::binomial_distribution<double> ref(53, 0.2);
  for (int k = 0; k <= 53; ++k)
    EXPECT_NEAR(dist::binom_cdf(k, 53, 0.2), bm::cdf(ref, k), 1e-13) << k;
}

TEST(Hypergeometric, SmallExample) {
  // N=4, K=2, n=2: P(X=0) = C(2,0)C(2,2)/C(4,2) = 1/6.
  EXPECT_NEAR(dist::hypergeom_cdf(0, 4, 2, 2), 1.0 / 6.0, 1e-14);
  EXPECT_NEAR(dist::hypergeom_pmf(1, 4, 2, 2), 4.0 / 6.0, 1e-14);
  EXPECT_NEAR(dist::hypergeom_cdf(2, 4, 2, 2), 1.0, 1e-14);
}

TEST(Hypergeometric, EdgeCases) {
  EXPECT_DOUBLE_EQ(dist::hypergeom_pmf(3, 10, 10, 3), 1.0);
  EXPECT_DOUBLE_EQ(dist::hypergeom_pmf(0, 10, 0, 3), 1.0);
  EXPECT_DOUBLE_EQ(dist::hypergeom_pmf(4, 10, 3, 5), 0.0);
}

TEST(Hypergeometric, MatchesCombinatorics) {
  for (int N = 2; N <= 20; N += 3)
    for (int K = 0; K <= N; K += 2)
      for (int n = 0; n <= N; n += 3)
        for (int k = 0; k <= n; ++k) {
          double expect = 0.0;
          if (k <= K && n - k <= N - K)
            expect = oracle::binomial_coefficient(K, k) * oracle::binomial_coefficient(N - K, n - k) /
                     oracle::binomial_coefficient(N, n);
          EXPECT_NEAR(dist::hypergeom_pmf(k, N, K, n), expect, 1e-12);
        }
}

TEST(Hypergeometric, AgreesWithBoostAndBinomialAtScale) {
  const bm::hypergeometric_distribution<double> ref(520, 53, 2582);
  for (int k = 0; k <= 20; ++k) {
    const double h = dist::hypergeom_cdf(k, 2582, 520, 53);
    EXPECT_NEAR(h, bm::cdf(ref, static_cast<unsigned>(k)), 1e-10);
    EXPECT_NEAR(h, dist::binom_cdf(k, 53, 520.0 / 2582.0), 0.01);
  }
}

TEST(Normal, Quantiles) {
  EXPECT_NEAR(dist::normal_quantile(0.975), 1.959964, 1e-6);
  EXPECT_DOUBLE_EQ(dist::normal_quantile(0.5), 0.0);
  const bm::normal_distribution<double> ref;
  for (double p : {1e-10, 1e-4, 0.02, 0.3, 0.77, 0.999}) {
    // Symmetry uses the complement actually representable in double.
    const double upper = 1.0 - p;
    EXPECT_NEAR(dist::normal_quantile(1.0 - upper), -dist::normal_quantile(upper), 1e-9);
    EXPECT_NEAR(dist::normal_quantile(p), bm::quantile(ref, p), 1e-9);
    EXPECT_NEAR(dist::normal_cdf(dist::normal_quantile(p)), p, 1e-12 + 1e-9 * p);
  }
  for (double z : {-8.0, -2.0, -0.1, 0.0, 1.3, 5.0})
    EXPECT_NEAR(dist::normal_cdf(z), bm::cdf(ref, z), 1e-15 + 1e-12 * bm::cdf(ref, z));
}

TEST(RandomSource, ReproducibleAndChildrenIndependentOfOrder) {
  RandomSource a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());

  const RandomSource root(7);
  auto c5 = root.child(5);
  root.child(3).next_u64();
  auto c5b = root.child(5);
  EXPECT_EQ(c5.next_u64(), c5b.next_u64());
  EXPECT_NE(root.child(1).next_u64(), root.child(2).next_u64());
}

TEST(RandomSource, BoundedDrawsAreUniform) {
  RandomSource rng(11);
  std::vector<int> hist(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) ++hist[rng.below(7)];
  for (int h : hist) EXPECT_NEAR(h, n / 7.0, 5.0 * std::sqrt(n / 7.0));
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}
