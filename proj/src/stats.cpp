#include "jl/stats.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "jl/apply.hpp"
#include "jl/parallel.hpp"

namespace jl {
namespace {

void check_probe(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("quantile: probability must lie in (0, 1)");
}

// log C(n, r) as a sum of log((n - r + i) / i); every term is O(log n), which
// keeps the absolute error far below what lgamma differences give at n ~ 10^3.
double log_binomial(std::size_t n, std::size_t r) {
  r = std::min(r, n - r);
  double acc = 0.0;
  for (std::size_t i = 1; i <= r; ++i) {
    acc += std::log(static_cast<double>(n - r + i) / static_cast<double>(i));
  }
  return acc;
}

std::size_t effective_threads(std::size_t threads) { return threads == 0 ? resolve_threads() : threads; }

}  // namespace

double sorted_quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile: samples must be non-empty");
  check_probe(p);
  const double n = static_cast<double>(sorted.size());
  const double r = p * n;
  double rank = std::ceil(r);
  // p * n lands a few ulps above an integer for probes such as 0.07 * 100.
  if (r - std::floor(r) <= 8.0 * DBL_EPSILON * r) rank = std::floor(r);
  rank = std::clamp(rank, 1.0, n);
  return sorted[static_cast<std::size_t>(rank) - 1];
}

double quantile(std::span<const double> samples, double p) {
  if (samples.empty()) throw std::invalid_argument("quantile: samples must be non-empty");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted_quantile(sorted, p);
}

QuantileSummary quantiles(std::span<const double> samples, std::span<const double> probes) {
  if (samples.empty()) throw std::invalid_argument("quantile: samples must be non-empty");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  QuantileSummary summary;
  summary.probes.assign(probes.begin(), probes.end());
  summary.n = sorted.size();
  for (double p : probes) summary.values.push_back(sorted_quantile(sorted, p));
  return summary;
}

std::vector<double> empirical_cdf(std::span<const double> samples, std::span<const double> grid) {
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument("empirical_cdf: grid must be sorted ascending");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out;
  out.reserve(grid.size());
  const double n = static_cast<double>(sorted.size());
  for (double g : grid) {
    if (sorted.empty()) {
      out.push_back(0.0);
      continue;
    }
    const auto below = std::upper_bound(sorted.begin(), sorted.end(), g) - sorted.begin();
    out.push_back(static_cast<double>(below) / n);
  }
  return out;
}

std::size_t collision_count(const SparseColumnLayout& layout, std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("collision_count: columns must differ");
  if (i >= layout.d() || j >= layout.d()) throw std::invalid_argument("collision_count: column out of range");
  const auto a = layout.column_rows(i);
  const auto b = layout.column_rows(j);
  std::size_t count = 0;
  std::size_t p = 0;
  std::size_t q = 0;
  while (p < a.size() && q < b.size()) {
    if (a[p] == b[q]) {
      ++count;
      ++p;
      ++q;
    } else if (a[p] < b[q]) {
      ++p;
    } else {
      ++q;
    }
  }
  return count;
}

double hypergeometric_pmf(std::size_t population, std::size_t successes, std::size_t draws, long long x) {
  if (successes > population || draws > population) {
    throw std::invalid_argument("hypergeometric_pmf: successes and draws must not exceed the population");
  }
  const long long lo = std::max(0LL, static_cast<long long>(draws + successes) - static_cast<long long>(population));
  const long long hi = static_cast<long long>(std::min(successes, draws));
  if (x < lo || x > hi) return 0.0;
  const auto ux = static_cast<std::size_t>(x);
  const double log_p = log_binomial(successes, ux) + log_binomial(population - successes, draws - ux) -
                       log_binomial(population, draws);
  return std::exp(log_p);
}

CollisionReport collision_tail_check(std::size_t k, std::size_t s, std::size_t pairs, const SeedSpec& seed,
                                     std::size_t threads) {
  if (s == 0 || s > k) throw std::invalid_argument("collision_tail_check: need 1 <= s <= k");
  std::vector<std::size_t> counts(pairs);
  parallel_for(pairs, effective_threads(threads), [&](std::size_t i) {
    const auto layout = sample_graph_layout(k, 2, s, seed.child(i));
    counts[i] = collision_count(layout, 0, 1);
  });

  CollisionReport report;
  report.k = k;
  report.s = s;
  report.pairs = pairs;
  report.threshold = 2.0 * static_cast<double>(s * s) / static_cast<double>(k);
  report.histogram.assign(s + 1, 0);
  std::vector<double> as_double(pairs);
  std::size_t exceed = 0;
  for (std::size_t i = 0; i < pairs; ++i) {
    ++report.histogram[counts[i]];
    as_double[i] = static_cast<double>(counts[i]);
    if (as_double[i] > report.threshold) ++exceed;
  }
  for (std::size_t x = 0; x <= s; ++x) {
    if (static_cast<double>(x) > report.threshold) {
      report.exact_exceedance += hypergeometric_pmf(k, s, s, static_cast<long long>(x));
    }
  }
  if (pairs > 0) {
    report.empirical_exceedance = static_cast<double>(exceed) / static_cast<double>(pairs);
    const double p = report.exact_exceedance;
    report.exceedance_se = std::sqrt(p * (1.0 - p) / static_cast<double>(pairs));
    const auto est = mean_estimate(as_double);
    report.mean = est.mean;
    report.mean_se = est.standard_error;
  }
  return report;
}

std::vector<double> sample_distortions(ConstructionKind kind, std::size_t k, std::size_t d, std::size_t trials,
                                       const SeedSpec& seed, std::size_t threads) {
  std::vector<double> deltas(trials);
  parallel_for(trials, effective_threads(threads), [&](std::size_t i) {
    const SeedSpec trial = seed.child(i);
    const auto transform = sample_transform(kind, k, d, trial.child(0));
    const auto x = sample_unit_sphere(d, trial.child(1));
    deltas[i] = distortion(transform, x);
  });
  return deltas;
}

double tail_bound(ConstructionKind kind, std::size_t k, double epsilon) {
  const double denom = kind.family == ConstructionFamily::kDenseGaussian ? 8.0 : 12.0;
  return 2.0 * std::exp(-static_cast<double>(k) * epsilon * epsilon / denom);
}

TailReport tail_bound_report(ConstructionKind kind, std::size_t k, std::size_t d, double epsilon,
                             std::size_t trials, const SeedSpec& seed, std::size_t threads) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("tail_bound_report: epsilon must lie in (0, 1)");
  const auto deltas = sample_distortions(kind, k, d, trials, seed, threads);
  TailReport report;
  report.epsilon = epsilon;
  report.bound = tail_bound(kind, k, epsilon);
  report.n = trials;
  const auto failures = std::count_if(deltas.begin(), deltas.end(), [&](double x) { return std::abs(x) > epsilon; });
  if (trials > 0) {
    report.empirical_failure_rate = static_cast<double>(failures) / static_cast<double>(trials);
    const double p = std::min(report.bound, 1.0);
    report.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  }
  return report;
}

MomentEstimate fourth_moment_check(ConstructionKind kind, std::size_t k, std::size_t d, std::size_t trials,
                                   const SeedSpec& seed, std::size_t threads) {
  if (kind.is_graph()) throw std::invalid_argument("fourth_moment_check: GraphSparse rows are not independent");
  if (k == 0 || d == 0) throw std::invalid_argument("fourth_moment_check: k and d must be positive");
  const double v = 1.0 / std::sqrt(static_cast<double>(d));
  const double k2 = static_cast<double>(k) * static_cast<double>(k);
  std::vector<double> samples(trials * k);
  parallel_for(trials, effective_threads(threads), [&](std::size_t t) {
    const auto transform = sample_transform(kind, k, d, seed.child(t));
    const auto& dense = std::get<DenseTransform>(transform);
    for (std::size_t r = 0; r < k; ++r) {
      double dot = 0.0;
      for (double e : dense.row(r)) dot += e * v;
      const double sq = dot * dot;
      samples[t * k + r] = sq * sq * k2;
    }
  });
  return mean_estimate(samples);
}

MomentEstimate mean_estimate(std::span<const double> samples) {
  MomentEstimate est;
  est.n = samples.size();
  if (samples.empty()) return est;
  double sum = 0.0;
  for (double x : samples) sum += x;
  est.mean = sum / static_cast<double>(est.n);
  if (est.n > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - est.mean) * (x - est.mean);
    est.standard_error = std::sqrt(ss / static_cast<double>(est.n - 1) / static_cast<double>(est.n));
  }
  return est;
}

double chi_square_statistic(std::span<const std::size_t> observed, std::span<const double> probabilities) {
  if (observed.size() != probabilities.size()) {
    throw std::invalid_argument("chi_square_statistic: observed and probabilities differ in length");
  }
  double n = 0.0;
  for (auto o : observed) n += static_cast<double>(o);
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = n * probabilities[i];
    if (expected <= 0.0) {
      if (observed[i] != 0) return std::numeric_limits<double>::infinity();
      continue;
    }
    const double diff = static_cast<double>(observed[i]) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

double ks_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_distance: samples must be non-empty");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double best = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return best;
}

}  // namespace jl
