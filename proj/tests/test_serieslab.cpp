#include <gtest/gtest.h>

#include <cstdint>
#include <optional>

#include "oracles.hpp"
#include "protower/serieslab/series.hpp"

using namespace protower;

namespace {

TEST(ObstructionSeries, Examples) {
  auto s1 = obstruction_series(1);
  EXPECT_EQ(s1.levels(), 1u);
  EXPECT_EQ(s1.coefficient(0), (TruncatedLaurentSeries::Poly{{-1, 1}}));
  auto s3 = obstruction_series(3);
  EXPECT_EQ(s3.coefficient(0), (TruncatedLaurentSeries::Poly{{-1, 1}}));
  EXPECT_EQ(s3.coefficient(1), (TruncatedLaurentSeries::Poly{{-2, 1}}));
  EXPECT_EQ(s3.coefficient(2), (TruncatedLaurentSeries::Poly{{-4, 1}}));
  EXPECT_EQ(s3.to_string(), "x^-1 + x^-2*y^1 + x^-4*y^2");
  EXPECT_THROW(obstruction_series(0), ValidationError);
  EXPECT_THROW(min_valuation_of_solution(0, 4), ValidationError);
}

TEST(TruncatedLaurentSeries, Arithmetic) {
  PrimeField k3{3};
  TruncatedLaurentSeries a(k3, 3), b(k3, 3);
  a.set(0, -1, 1);
  a.set(1, 2, 2);
  b.set(0, 1, 1);
  b.set(2, 0, 1);
  auto p = a * b;
  EXPECT_EQ(p.get(0, 0), 1u);
  EXPECT_EQ(p.get(1, 3), 2u);
  EXPECT_EQ(p.get(2, -1), 1u);
  EXPECT_EQ(p.coefficient(2).size(), 1u);  // y^3 term dropped
  auto sum = a + a + a;
  EXPECT_TRUE(sum.coefficient(0).empty());
  EXPECT_FALSE(a.is_polynomial());
  EXPECT_TRUE(b.is_polynomial());
  EXPECT_EQ(a.valuation(0), -1);
  EXPECT_FALSE(TruncatedLaurentSeries(k3, 2).valuation(1));
  EXPECT_THROW(a * TruncatedLaurentSeries(k3, 2), ValidationError);
}

TEST(MinValuation, LevelOne) {
  for (std::size_t d = 1; d <= 10; ++d) EXPECT_EQ(min_valuation_of_solution(1, d).valuation, 1u);
  EXPECT_FALSE(min_valuation_of_solution(1, 0).valuation);
}

TEST(MinValuation, MatchesExhaustiveEnumeration) {
  for (std::size_t levels = 1; levels <= 3; ++levels)
    for (std::size_t d = 0; d <= 8; ++d)
      EXPECT_EQ(min_valuation_of_solution(levels, d).valuation, oracle::series_min_valuation(levels, d))
          << "L=" << levels << " D=" << d;
}

TEST(MinValuation, SolutionsClearDenominators) {
  for (std::size_t levels = 1; levels <= 7; ++levels)
    for (std::size_t d : {1u, 4u, 8u, 16u, 32u, 64u}) {
      auto r = min_valuation_of_solution(levels, d);
      ASSERT_EQ(r.valuation.has_value(), r.q.has_value());
      if (!r.q) continue;
      EXPECT_TRUE(clears_denominators(*r.q));
      EXPECT_EQ(r.q->valuation(0), static_cast<std::int64_t>(*r.valuation));
    }
}

TEST(MinValuation, GrowthTable) {
  std::optional<std::size_t> prev;
  for (std::size_t levels = 1; levels <= 6; ++levels) {
    auto v = min_valuation_of_solution(levels, 64).valuation;
    ASSERT_TRUE(v);
    if (levels >= 2) {
      EXPECT_GE(*v, std::size_t{1} << (levels - 2));
    }
    if (prev) {
      EXPECT_GE(*v, *prev);
    }
    prev = v;
  }
}

TEST(MinValuation, NoBoundedDegreeSolution) {
  for (std::size_t d = 0; d <= 16; ++d) {
    bool some_level_fails = false;
    for (std::size_t levels = 1; levels <= 6 && !some_level_fails; ++levels)
      some_level_fails = !min_valuation_of_solution(levels, d).valuation;
    EXPECT_TRUE(some_level_fails) << "D=" << d;
  }
}

TEST(MinValuation, OtherCharacteristic) {
  PrimeField k3{3};
  for (std::size_t levels = 1; levels <= 4; ++levels) {
    auto r = min_valuation_of_solution(levels, 16, k3);
    ASSERT_TRUE(r.q);
    EXPECT_TRUE(clears_denominators(*r.q));
    if (levels >= 2) {
      EXPECT_GE(*r.valuation, std::size_t{1} << (levels - 2));
    }
  }
}

}  // namespace
