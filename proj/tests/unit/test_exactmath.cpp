#include "symtail/exactmath.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace symtail;

TEST(Binomial, MatchesMultiplicativeFormula) {
  for (unsigned n = 0; n <= 80; ++n) {
    for (long k = -2; k <= static_cast<long>(n) + 2; ++k) EXPECT_EQ(binomial(n, k), oracle::choose(n, k));
  }
}

TEST(Binomial, KnownValues) {
  EXPECT_EQ(binomial(60, 30), BigNatural("118264581564861424"));
  EXPECT_EQ(binomial(5, 7), 0);
  EXPECT_EQ(binomial(5, -1), 0);
  EXPECT_EQ(binomial(0, 0), 1);
}

TEST(Binomial, BeyondCacheCap) {
  const unsigned n = static_cast<unsigned>(PascalCache::global().cap()) + 40;
  EXPECT_EQ(binomial(n, 17), oracle::choose(n, 17));
  EXPECT_EQ(binomial(n, n / 2), oracle::choose(n, n / 2));
}

TEST(PascalCacheRows, RowSumsArePowersOfTwo) {
  for (std::size_t n = 0; n <= 100; n += 9) {
    BigNatural s = 0;
    for (const auto& c : PascalCache::global().row(n)) s += c;
    EXPECT_EQ(s, pow2(static_cast<unsigned>(n)));
  }
}

TEST(LargestBinomialSum, Examples) {
  EXPECT_EQ(largest_binomial_sum(4, 2), 10);
  EXPECT_EQ(largest_binomial_sum(4, 1), 6);
  EXPECT_EQ(largest_binomial_sum(2, 2), 3);
  EXPECT_EQ(largest_binomial_sum(3, 1), 3);
  EXPECT_EQ(largest_binomial_sum(3, 2), 6);
  EXPECT_EQ(largest_binomial_sum(10, 2), 462);
  EXPECT_EQ(largest_binomial_sum(0, 3), 1);
  EXPECT_EQ(largest_binomial_sum(5, 0), 0);
  EXPECT_EQ(largest_binomial_sum(5, 6), 32);
  EXPECT_EQ(largest_binomial_ratio(4, 2), ExactRational(5, 8));
}

TEST(LargestBinomialSum, EqualsTopMCoefficients) {
  for (unsigned n = 0; n <= 30; ++n) {
    for (unsigned m = 0; m <= 33; ++m) EXPECT_EQ(largest_binomial_sum(n, m), oracle::top_m_sum(n, m)) << n << "," << m;
  }
}

TEST(LargestBinomialSum, WindowIsMaximal) {
  for (unsigned n = 1; n <= 20; ++n) {
    for (unsigned m = 1; m <= n; ++m) {
      BigNatural best = 0;
      for (long s = -static_cast<long>(m); s <= static_cast<long>(n); ++s) best = std::max(best, binomial_window_sum(n, s, m));
      EXPECT_EQ(largest_binomial_sum(n, m), best);
    }
  }
}

TEST(LargestBinomialSum, PascalRecursion) {
  for (unsigned n = 1; n <= 60; ++n) {
    for (unsigned m = 1; m <= 60; ++m) {
      EXPECT_EQ(largest_binomial_sum(n, m), largest_binomial_sum(n - 1, m - 1) + largest_binomial_sum(n - 1, m + 1));
    }
  }
}

TEST(LargestBinomialSum, RatioDecreasesInN) {
  for (unsigned m = 1; m <= 20; ++m) {
    for (unsigned n = 1; n <= 60; ++n) EXPECT_LE(largest_binomial_ratio(n, m), largest_binomial_ratio(n - 1, m));
  }
}
