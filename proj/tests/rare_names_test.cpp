#include "namefit/rare_names.hpp"

#include <gtest/gtest.h>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/hypergeometric.hpp>
#include <cmath>
#include <sstream>

#include "namefit/error.hpp"

using namespace namefit;

namespace {

const FrequencyDistribution kReference({{"A", 1}, {"B", 2}, {"C", 5}, {"D", 1}});
const FrequencyDistribution kTest({{"A", 1}, {"B", 2}, {"C", 3}, {"Z", 1}});

}  // namespace

TEST(CountRare, Definitions) {
  EXPECT_EQ(count_rare(kTest, kReference, RareDefinition::once), 2);           // A, Z
  EXPECT_EQ(count_rare(kTest, kReference, RareDefinition::once_or_twice), 4);  // A, B x2, Z
  EXPECT_EQ(rare_occurrences(kReference, RareDefinition::once), 2);
  EXPECT_EQ(rare_occurrences(kReference, RareDefinition::once_or_twice), 4);
  EXPECT_EQ(count_rare(FrequencyDistribution(), kReference, RareDefinition::once), 0);
}

TEST(RareTail, TableIsMonotoneAndEndsAtOne) {
  const RareSpec spec{2582, 520, 53};
  const auto r = rare_tail(spec, 4);
  ASSERT_EQ(r.table.size(), 54u);
  EXPECT_EQ(r.observed.k, 4);
  for (std::size_t i = 1; i < r.table.size(); ++i) {
    EXPECT_GE(r.table[i].tail_binomial, r.table[i - 1].tail_binomial);
    EXPECT_GE(r.table[i].tail_exact, r.table[i - 1].tail_exact);
  }
  EXPECT_NEAR(r.table.back().tail_binomial, 1.0, 1e-12);
  EXPECT_NEAR(r.table.back().tail_exact, 1.0, 1e-12);
}

TEST(RareTail, AgreesWithBoostOracles) {
  const RareSpec spec{2582, 520, 53};
  const boost::math::binomial_distribution<double> bin(53, 520.0 / 2582.0);
  const boost::math::hypergeometric_distribution<double> hyp(520, 53, 2582);
  for (const auto& row : rare_tail(spec, 0).table) {
    EXPECT_NEAR(row.tail_binomial, boost::math::cdf(bin, row.k), 1e-12);
    EXPECT_NEAR(row.tail_exact, boost::math::cdf(hyp, static_cast<unsigned>(row.k)), 1e-10);
  }
}

TEST(RareTail, LargePoolNeedsNoApproximationFlag) {
  const RareSpec spec{2582, 520, 53};
  for (const auto& row : rare_tail(spec, 0).table) {
    EXPECT_NEAR(row.tail_binomial, row.tail_exact, 0.01);
    EXPECT_EQ(row.approximation_flag,
              std::fabs(row.tail_binomial - row.tail_exact) > kRareApproximationFlag);
  }
}

TEST(RareTail, SmallPoolIsFlagged) {
  // Drawing 53 of 60 is far from sampling with replacement.
  const auto r = rare_tail({60, 12, 53}, 8);
  bool any = false;
  for (const auto& row : r.table) any = any || row.approximation_flag;
  EXPECT_TRUE(any);
  // Only 12 items are marked, so the exact tail reaches 1 at k = 12.
  EXPECT_NEAR(r.table[12].tail_exact, 1.0, 1e-12);
  EXPECT_LT(r.table[12].tail_binomial, 1.0);
}

TEST(RareTail, InvalidSpecs) {
  EXPECT_THROW(rare_tail({100, 120, 10}, 2), DataError);
  EXPECT_THROW(rare_tail({100, 20, 10}, 11), DataError);
  EXPECT_THROW(rare_tail({100, 20, 0}, 0), DataError);
  EXPECT_THROW(rare_sensitivity({100, 20, 10}, {3, -1}), DataError);
}

TEST(Calibration, SolvesForTarget) {
  const double p = calibrate_binomial_p(53, 4, 0.011);
  const boost::math::binomial_distribution<double> bin(53, p);
  EXPECT_NEAR(boost::math::cdf(bin, 4), 0.011, 1e-10);
  EXPECT_NEAR(p, 0.2015, 5e-4);
  EXPECT_THROW(calibrate_binomial_p(53, 53, 0.5), DataError);
  EXPECT_THROW(calibrate_binomial_p(53, 4, 1.0), DataError);
}

TEST(Calibration, RecoversKnownProbability) {
  for (double p : {0.05, 0.13, 0.2, 0.53}) {
    for (std::int64_t k : {2, 4, 10}) {
      const double target = boost::math::cdf(boost::math::binomial_distribution<double>(53, p), k);
      if (target < 1e-12 || target > 1.0 - 1e-12) continue;
      EXPECT_NEAR(calibrate_binomial_p(53, k, target), p, 1e-8) << p << " " << k;
    }
  }
}

TEST(Sensitivity, RowsForRequestedCounts) {
  const RareSpec spec{2582, 520, 53};
  const auto rows = rare_sensitivity(spec, {3, 4, 5, 6, 7, 8, 9, 10});
  ASSERT_EQ(rows.size(), 8u);
  const auto full = rare_tail(spec, 0);
  for (const auto& row : rows) {
    EXPECT_EQ(row.tail_binomial, full.table[static_cast<std::size_t>(row.k)].tail_binomial);
    EXPECT_EQ(row.tail_exact, full.table[static_cast<std::size_t>(row.k)].tail_exact);
  }
}

TEST(Sensitivity, TargetTableShapeAtShareOneFifth) {
  // The target percentages for 3..10 rare names in 53 draws sit within
  // half a point of a binomial with share 0.20.
  const std::vector<double> target{0.3, 1.1, 3.2, 7.3, 14, 24, 36, 50};
  const auto rows = binomial_tail_rows(53, 0.20, {3, 4, 5, 6, 7, 8, 9, 10});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_NEAR(100.0 * rows[i].tail_binomial, target[i], 0.5) << rows[i].k;
    EXPECT_TRUE(std::isnan(rows[i].tail_exact));
  }
}

TEST(RareCsv, WritesNaForMissingExactColumn) {
  std::ostringstream out;
  write_rare_csv(out, binomial_tail_rows(2, 0.5, {0, 2}));
  EXPECT_EQ(out.str(), "k,tail_binomial,tail_exact\n0,0.25,NA\n2,1,NA\n");
}
