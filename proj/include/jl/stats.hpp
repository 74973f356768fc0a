#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "jl/constructions.hpp"
#include "jl/core.hpp"

namespace jl {

struct QuantileSummary {
  std::vector<double> probes;
  std::vector<double> values;
  std::size_t n = 0;
};

/// Nearest-rank quantile: the sorted sample at 0-based index ceil(p*n) - 1.
/// Throws std::invalid_argument for empty samples or p outside (0, 1).
double quantile(std::span<const double> samples, double p);

/// Nearest-rank quantiles for several probes with a single sort.
QuantileSummary quantiles(std::span<const double> samples, std::span<const double> probes);

/// Quantile of an already ascending-sorted sample.
double sorted_quantile(std::span<const double> sorted, double p);

/// Fraction of samples <= grid[j] for each j. The grid must be ascending.
std::vector<double> empirical_cdf(std::span<const double> samples, std::span<const double> grid);

/// Number of rows where columns i and j of the layout are both nonzero.
std::size_t collision_count(const SparseColumnLayout& layout, std::size_t i, std::size_t j);

/// P[X = x] for X ~ Hypergeometric(population, successes, draws), computed in
/// log space. Returns 0 for impossible x.
double hypergeometric_pmf(std::size_t population, std::size_t successes, std::size_t draws, long long x);

/// Collision counts between independent column pairs of a GraphSparse(s)
/// layout with k rows, against the exact Hypergeometric(k, s, s) law.
struct CollisionReport {
  std::size_t k = 0;
  std::size_t s = 0;
  std::size_t pairs = 0;
  double threshold = 0.0;           // 2 s^2 / k
  double empirical_exceedance = 0.0;  // fraction of pairs with count > threshold
  double exact_exceedance = 0.0;      // hypergeometric tail at the same threshold
  double exceedance_se = 0.0;         // binomial SE of empirical_exceedance under the exact rate
  double mean = 0.0;
  double mean_se = 0.0;             // sample SD / sqrt(pairs)
  std::vector<std::size_t> histogram;  // histogram[x] = pairs with exactly x collisions
};

/// Samples `pairs` independent two-column layouts (one derived stream each).
CollisionReport collision_tail_check(std::size_t k, std::size_t s, std::size_t pairs, const SeedSpec& seed,
                                     std::size_t threads = 1);

/// Independent distortion draws: trial i samples a fresh k x d transform and a
/// fresh sphere vector from seed.child(i).
std::vector<double> sample_distortions(ConstructionKind kind, std::size_t k, std::size_t d, std::size_t trials,
                                       const SeedSpec& seed, std::size_t threads = 1);

struct TailReport {
  double epsilon = 0.0;
  double empirical_failure_rate = 0.0;
  double bound = 0.0;
  double standard_error = 0.0;  // binomial SE at the bound rate
  std::size_t n = 0;
};

/// Theoretical two-sided tail: 2 exp(-k eps^2 / 8) for DenseGaussian,
/// 2 exp(-k eps^2 / 12) otherwise.
double tail_bound(ConstructionKind kind, std::size_t k, double epsilon);

/// Fraction of independent (transform, unit vector) trials with |delta| > eps.
TailReport tail_bound_report(ConstructionKind kind, std::size_t k, std::size_t d, double epsilon,
                             std::size_t trials, const SeedSpec& seed, std::size_t threads = 1);

struct MomentEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t n = 0;
};

/// Monte Carlo estimate of E[(R_j v)^4] * k^2 on v = (1,...,1)/sqrt(d), so the
/// result is the fourth moment of a unit-variance row. Each trial samples one
/// k x d transform and contributes its k rows. GraphSparse is rejected since
/// its rows are not independent.
MomentEstimate fourth_moment_check(ConstructionKind kind, std::size_t k, std::size_t d, std::size_t trials,
                                   const SeedSpec& seed, std::size_t threads = 1);

/// Mean and SE of a sample (SE = sample SD / sqrt(n)).
MomentEstimate mean_estimate(std::span<const double> samples);

/// Pearson statistic sum (O - nP)^2 / (nP) with n = sum of observed counts.
double chi_square_statistic(std::span<const std::size_t> observed, std::span<const double> probabilities);

/// Two-sample Kolmogorov-Smirnov distance.
double ks_distance(std::span<const double> a, std::span<const double> b);

}  // namespace jl
