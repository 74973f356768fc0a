#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "jl/stats.hpp"

namespace jl {
namespace {

// Exact binomial coefficient for small arguments.
double choose(unsigned n, unsigned r) {
  if (r > n) return 0.0;
  unsigned long long acc = 1;
  for (unsigned i = 1; i <= r; ++i) acc = acc * (n - r + i) / i;
  return static_cast<double>(acc);
}

std::vector<std::vector<std::uint32_t>> all_subsets(std::uint32_t k, std::uint32_t s) {
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    if (static_cast<std::uint32_t>(__builtin_popcount(mask)) != s) continue;
    std::vector<std::uint32_t> subset;
    for (std::uint32_t r = 0; r < k; ++r) {
      if (mask & (1u << r)) subset.push_back(r);
    }
    out.push_back(subset);
  }
  return out;
}

TEST(Quantile, SmallExamples) {
  const std::vector<double> three = {3, 1, 2};
  EXPECT_EQ(quantile(three, 0.5), 2.0);
  const std::vector<double> one = {5};
  for (double p : {0.01, 0.5, 0.99}) EXPECT_EQ(quantile(one, p), 5.0);
  std::vector<double> hundred(100);
  std::iota(hundred.begin(), hundred.end(), 1.0);
  EXPECT_EQ(quantile(hundred, 0.99), 99.0);
  EXPECT_EQ(quantile(hundred, 0.5), 50.0);
  EXPECT_EQ(quantile(hundred, 0.07), 7.0);
}

TEST(Quantile, RejectsBadArguments) {
  const std::vector<double> none;
  const std::vector<double> some = {1.0};
  EXPECT_THROW(quantile(none, 0.5), std::invalid_argument);
  EXPECT_THROW(quantile(some, 0.0), std::invalid_argument);
  EXPECT_THROW(quantile(some, 1.0), std::invalid_argument);
}

TEST(Quantile, MatchesIntegerRankOracle) {
  // For probe m/100 the nearest rank is ceil(m n / 100), computed in integers.
  RandomStream rng({1, 0});
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(300);
    std::vector<double> samples(n);
    for (double& x : samples) x = rng.normal();
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    double previous = -INFINITY;
    for (std::size_t m = 1; m < 100; ++m) {
      const std::size_t rank = (m * n + 99) / 100;
      const double q = quantile(samples, static_cast<double>(m) / 100.0);
      ASSERT_EQ(q, sorted[rank - 1]) << "n=" << n << " m=" << m;
      ASSERT_GE(q, previous);
      previous = q;
    }
  }
}

TEST(Quantile, SummaryValuesAreMonotone) {
  RandomStream rng({2, 0});
  std::vector<double> samples(1000);
  for (double& x : samples) x = rng.uniform();
  const std::vector<double> probes = {0.1, 0.25, 0.5, 0.9, 0.99};
  const auto summary = quantiles(samples, probes);
  EXPECT_EQ(summary.n, 1000u);
  EXPECT_TRUE(std::is_sorted(summary.values.begin(), summary.values.end()));
  for (std::size_t i = 0; i < probes.size(); ++i) EXPECT_EQ(summary.values[i], quantile(samples, probes[i]));
}

TEST(EmpiricalCdf, Examples) {
  const std::vector<double> zero = {0.0};
  const std::vector<double> grid = {-1.0, 0.0, 1.0};
  EXPECT_EQ(empirical_cdf(zero, grid), (std::vector<double>{0, 1, 1}));
  const std::vector<double> samples = {0.5, 2.0, 3.0};
  const std::vector<double> low = {0.1};
  EXPECT_EQ(empirical_cdf(samples, low), (std::vector<double>{0.0}));
  const std::vector<double> unsorted = {1.0, 0.0};
  EXPECT_THROW(empirical_cdf(samples, unsorted), std::invalid_argument);
}

TEST(EmpiricalCdf, NormalMedian) {
  RandomStream rng({3, 0});
  std::vector<double> samples(10000);
  for (double& x : samples) x = rng.normal();
  const std::vector<double> grid = {0.0};
  EXPECT_LT(std::abs(empirical_cdf(samples, grid)[0] - 0.5), 4.0 * 0.5 / std::sqrt(10000.0));
}

TEST(EmpiricalCdf, MonotoneAndReachesOne) {
  RandomStream rng({4, 0});
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> samples(1 + rng.below(200));
    for (double& x : samples) x = rng.normal();
    std::vector<double> grid(1 + rng.below(50));
    for (double& g : grid) g = 3.0 * rng.normal();
    std::sort(grid.begin(), grid.end());
    grid.push_back(std::max(grid.back(), *std::max_element(samples.begin(), samples.end())));
    const auto cdf = empirical_cdf(samples, grid);
    ASSERT_TRUE(std::is_sorted(cdf.begin(), cdf.end()));
    for (double c : cdf) ASSERT_TRUE(c >= 0.0 && c <= 1.0);
    ASSERT_EQ(cdf.back(), 1.0);
  }
}

TEST(CollisionCount, FullColumnsCollideEverywhere) {
  const auto layout = sample_graph_layout(7, 20, 7, {5, 0});
  for (std::size_t i = 0; i < 20; ++i) {
    for (std::size_t j = i + 1; j < 20; ++j) ASSERT_EQ(collision_count(layout, i, j), 7u);
  }
}

TEST(CollisionCount, RejectsSameColumn) {
  const auto layout = sample_graph_layout(7, 3, 2, {5, 1});
  EXPECT_THROW(collision_count(layout, 1, 1), std::invalid_argument);
  EXPECT_THROW(collision_count(layout, 1, 3), std::invalid_argument);
}

TEST(CollisionCount, StaysInFeasibleRange) {
  RandomStream shape({6, 0});
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + shape.below(30);
    const std::size_t s = 1 + shape.below(k);
    const auto layout = sample_graph_layout(k, 2, s, SeedSpec{7, static_cast<std::uint64_t>(trial)});
    const std::size_t x = collision_count(layout, 0, 1);
    const std::size_t lo = 2 * s > k ? 2 * s - k : 0;
    ASSERT_GE(x, lo);
    ASSERT_LE(x, s);
  }
}

TEST(CollisionTailCheck, SingleRowOfTwo) {
  const auto report = collision_tail_check(2, 1, 100000, {8, 0});
  EXPECT_LT(std::abs(report.mean - 0.5), 4.0 * report.mean_se);
}

TEST(CollisionTailCheck, TypicalSettingsMean) {
  const auto report = collision_tail_check(50, 16, 10000, {9, 0});
  EXPECT_LT(std::abs(report.mean - 5.12), 4.0 * report.mean_se);
  EXPECT_DOUBLE_EQ(report.threshold, 10.24);
  EXPECT_LT(std::abs(report.empirical_exceedance - report.exact_exceedance), 4.0 * report.exceedance_se);
}

TEST(CollisionTailCheck, FullDensityNeverExceeds) {
  const auto report = collision_tail_check(6, 6, 1000, {10, 0});
  EXPECT_EQ(report.empirical_exceedance, 0.0);
  EXPECT_EQ(report.exact_exceedance, 0.0);
  EXPECT_EQ(report.histogram[6], 1000u);
}

TEST(CollisionTailCheck, SmallCaseMatchesEnumeration) {
  // Oracle: all C(4,2)^2 = 36 equally likely ordered column pairs.
  const auto subsets = all_subsets(4, 2);
  ASSERT_EQ(subsets.size(), 6u);
  std::vector<double> exact(3, 0.0);
  for (const auto& a : subsets) {
    for (const auto& b : subsets) {
      std::size_t common = 0;
      for (auto r : a) common += std::count(b.begin(), b.end(), r);
      exact[common] += 1.0 / 36.0;
    }
  }
  EXPECT_NEAR(exact[0], 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(exact[1], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(exact[2], 1.0 / 6.0, 1e-15);

  const auto report = collision_tail_check(4, 2, 100000, {11, 0}, 4);
  // Two degrees of freedom: the chi-square upper 0.001 quantile is -2 ln 0.001.
  EXPECT_LT(chi_square_statistic(report.histogram, exact), -2.0 * std::log(0.001));
}

TEST(HypergeometricPmf, Examples) {
  // Enumeration of C(4,2) = 6 subsets against a fixed pair: 4 share one row.
  EXPECT_NEAR(hypergeometric_pmf(4, 2, 2, 1), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(hypergeometric_pmf(4, 2, 2, 3), 0.0);
  EXPECT_EQ(hypergeometric_pmf(4, 2, 2, -1), 0.0);
  EXPECT_EQ(hypergeometric_pmf(4, 3, 3, 1), 0.0);  // at least 2 shared rows are forced
  EXPECT_THROW(hypergeometric_pmf(4, 5, 2, 1), std::invalid_argument);
}

TEST(HypergeometricPmf, MatchesIntegerBinomials) {
  for (unsigned k = 1; k <= 30; ++k) {
    for (unsigned s = 0; s <= k; ++s) {
      for (unsigned x = 0; x <= s; ++x) {
        const double exact = choose(s, x) * choose(k - s, s - x) / choose(k, s);
        ASSERT_NEAR(hypergeometric_pmf(k, s, s, x), exact, 1e-14 * std::max(1.0, exact)) << k << " " << s << " " << x;
      }
    }
  }
}

TEST(HypergeometricPmf, NormalizedWithMeanSSquaredOverK) {
  for (std::size_t k : {1u, 2u, 10u, 50u, 123u, 250u, 499u, 500u}) {
    for (std::size_t s = 1; s <= k; s += std::max<std::size_t>(1, k / 17)) {
      double total = 0.0;
      double mean = 0.0;
      for (std::size_t x = 0; x <= s; ++x) {
        const double p = hypergeometric_pmf(k, s, s, static_cast<long long>(x));
        total += p;
        mean += static_cast<double>(x) * p;
      }
      ASSERT_NEAR(total, 1.0, 1e-12) << "k=" << k << " s=" << s;
      ASSERT_NEAR(mean, static_cast<double>(s * s) / static_cast<double>(k), 1e-10) << "k=" << k << " s=" << s;
    }
  }
}

TEST(TailBoundReport, BoundArithmetic) {
  EXPECT_NEAR(tail_bound(ConstructionKind::rademacher(), 200, 0.5), 0.0311, 1e-4);
  EXPECT_NEAR(tail_bound(ConstructionKind::dense_gaussian(), 50, 0.5), 0.419, 1e-3);
  EXPECT_NEAR(tail_bound(ConstructionKind::achlioptas_sparse(), 400, 1.0) / 6.7e-15, 1.0, 0.01);
}

TEST(TailBoundReport, NearUnitEpsilonNeverFails) {
  const auto report = tail_bound_report(ConstructionKind::rademacher(), 400, 20, 1.0 - 1e-9, 10000, {12, 0});
  EXPECT_LT(report.bound, 7e-15);
  EXPECT_EQ(report.empirical_failure_rate, 0.0);
  EXPECT_EQ(report.n, 10000u);
}

TEST(TailBoundReport, EmpiricalRatesRespectBounds) {
  const auto rad = tail_bound_report(ConstructionKind::rademacher(), 200, 100, 0.5, 10000, {13, 0}, 4);
  EXPECT_LE(rad.empirical_failure_rate, rad.bound);
  const auto gauss = tail_bound_report(ConstructionKind::dense_gaussian(), 50, 100, 0.5, 10000, {14, 0}, 4);
  EXPECT_NEAR(gauss.bound, 0.419, 1e-3);
  EXPECT_LE(gauss.empirical_failure_rate, gauss.bound);
  EXPECT_GT(gauss.empirical_failure_rate, 0.0);
  EXPECT_THROW(tail_bound_report(ConstructionKind::rademacher(), 10, 10, 1.0, 10, {1, 1}), std::invalid_argument);
}

// Exact fourth moment of a unit-variance row on (1,...,1)/sqrt(d) when the
// entries have fourth moment m4: (d m4 + 3 d (d - 1)) / d^2.
double all_equal_fourth_moment(double m4, double d) { return 3.0 + (m4 - 3.0) / d; }

TEST(FourthMoment, DegenerateOneDimensionalCases) {
  const auto rad = fourth_moment_check(ConstructionKind::rademacher(), 4, 1, 100, {15, 0});
  EXPECT_EQ(rad.mean, 1.0);
  EXPECT_EQ(rad.standard_error, 0.0);

  const auto ach = fourth_moment_check(ConstructionKind::achlioptas_sparse(), 3, 1, 20000, {16, 0});
  EXPECT_EQ(all_equal_fourth_moment(9.0 / 3.0, 1.0), 3.0);
  EXPECT_LT(std::abs(ach.mean - 3.0), 4.0 * ach.standard_error);
}

TEST(FourthMoment, EstimatesMatchExactAllEqualMoment) {
  struct Case {
    ConstructionKind kind;
    double m4;
  };
  for (const auto& c : {Case{ConstructionKind::rademacher(), 1.0}, Case{ConstructionKind::achlioptas_sparse(), 3.0},
                        Case{ConstructionKind::dense_gaussian(), 3.0}}) {
    for (std::size_t d : {2u, 10u, 200u}) {
      const auto est = fourth_moment_check(c.kind, 50, d, 400, {17, d}, 4);
      const double exact = all_equal_fourth_moment(c.m4, static_cast<double>(d));
      EXPECT_LT(std::abs(est.mean - exact), 4.0 * est.standard_error) << c.kind.name() << " d=" << d;
      EXPECT_LE(est.mean, 3.0 + 4.0 * est.standard_error) << c.kind.name() << " d=" << d;
    }
  }
}

TEST(FourthMoment, RejectsGraphConstruction) {
  EXPECT_THROW(fourth_moment_check(ConstructionKind::graph_sparse(2), 4, 4, 1, {1, 1}), std::invalid_argument);
}

TEST(KsDistance, Extremes) {
  const std::vector<double> a = {1, 2, 3};
  const std::vector<double> b = {4, 5};
  EXPECT_EQ(ks_distance(a, a), 0.0);
  EXPECT_EQ(ks_distance(a, b), 1.0);
  const std::vector<double> c = {1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(ks_distance(a, c), 0.25);
}

TEST(ChiSquare, Statistic) {
  const std::vector<std::size_t> observed = {10, 20, 30};
  const std::vector<double> uniform = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  EXPECT_NEAR(chi_square_statistic(observed, uniform), 10.0, 1e-12);
  const std::vector<double> impossible = {0.5, 0.5, 0.0};
  EXPECT_TRUE(std::isinf(chi_square_statistic(observed, impossible)));
}

}  // namespace
}  // namespace jl
