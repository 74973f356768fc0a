#include <cmath>
#include <algorithm>

#include "jl/apply.hpp"
#include "jl/experiments.hpp"
#include "jl/stats.hpp"

namespace jl {
namespace {

// Suite-wide acceptance width, in standard errors.
constexpr double kSigmas = 4.0;

std::string fmt(double v) { return format_double(v); }

}  // namespace

std::vector<CheckResult> run_verification(std::uint64_t seed, std::size_t threads) {
  std::vector<CheckResult> out;
  const SeedSpec root{seed, 0};
  std::uint64_t tag = 0;
  auto next_seed = [&] { return root.child(++tag); };

  {
    const auto layout = sample_graph_layout(50, 1000, 16, next_seed());
    const Transform transform = layout;
    double worst = 0.0;
    for (std::size_t i = 0; i < layout.d(); ++i) {
      worst = std::max(worst, std::abs(distortion(transform, InputVector::basis(layout.d(), i))));
    }
    out.push_back({"one-hot distortion is zero", worst <= 1e-12, "max |delta| = " + fmt(worst)});
  }

  {
    double total = 0.0;
    double mean = 0.0;
    for (long long x = 0; x <= 16; ++x) {
      const double p = hypergeometric_pmf(50, 16, 16, x);
      total += p;
      mean += static_cast<double>(x) * p;
    }
    const bool ok = std::abs(total - 1.0) <= 1e-12 && std::abs(mean - 256.0 / 50.0) <= 1e-10;
    out.push_back({"hypergeometric pmf normalization", ok, "sum = " + fmt(total) + ", mean = " + fmt(mean)});
  }

  {
    const auto report = collision_tail_check(50, 16, 20000, next_seed(), threads);
    const double expected = 256.0 / 50.0;
    out.push_back({"collision mean s^2/k", std::abs(report.mean - expected) <= kSigmas * report.mean_se,
                   "mean = " + fmt(report.mean) + ", expected " + fmt(expected) + ", SE " + fmt(report.mean_se)});
    const bool tail_ok = std::abs(report.empirical_exceedance - report.exact_exceedance) <=
                         kSigmas * report.exceedance_se;
    out.push_back({"collision tail vs exact hypergeometric", tail_ok,
                   "empirical " + fmt(report.empirical_exceedance) + ", exact " + fmt(report.exact_exceedance)});
  }

  {
    const auto report = collision_tail_check(4, 2, 20000, next_seed(), threads);
    const std::vector<double> pmf = {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0};
    const double stat = chi_square_statistic(report.histogram, pmf);
    // Two degrees of freedom: the chi-square upper quantile is -2 ln(alpha).
    const double critical = -2.0 * std::log(0.001);
    out.push_back({"collision distribution k=4 s=2", stat <= critical,
                   "chi2 = " + fmt(stat) + ", critical " + fmt(critical)});
  }

  for (const auto kind : {ConstructionKind::rademacher(), ConstructionKind::achlioptas_sparse(),
                          ConstructionKind::dense_gaussian()}) {
    const auto est = fourth_moment_check(kind, 50, 100, 400, next_seed(), threads);
    const bool gaussian = kind.family == ConstructionFamily::kDenseGaussian;
    const bool ok = gaussian ? std::abs(est.mean - 3.0) <= kSigmas * est.standard_error
                             : est.mean <= 3.0 + kSigmas * est.standard_error;
    out.push_back({"fourth moment " + kind.name(), ok,
                   "estimate " + fmt(est.mean) + " +- " + fmt(est.standard_error)});
  }

  for (const auto kind : {ConstructionKind::rademacher(), ConstructionKind::achlioptas_sparse(),
                          ConstructionKind::dense_gaussian()}) {
    const auto report = tail_bound_report(kind, 200, 100, 0.5, 2000, next_seed(), threads);
    const bool ok = report.empirical_failure_rate <= report.bound + kSigmas * report.standard_error;
    out.push_back({"tail bound " + kind.name(), ok,
                   "rate " + fmt(report.empirical_failure_rate) + ", bound " + fmt(report.bound)});
  }

  {
    const auto deltas = sample_distortions(ConstructionKind::dense_gaussian(), 50, 50, 5000, next_seed(), threads);
    const auto est = mean_estimate(deltas);
    const double variance = est.standard_error * est.standard_error * static_cast<double>(est.n);
    const double target = 2.0 / 50.0;
    out.push_back({"Gaussian chi-squared variance", std::abs(variance - target) <= 0.15 * target,
                   "variance " + fmt(variance) + ", target " + fmt(target)});
  }

  for (const auto kind : {ConstructionKind::dense_gaussian(), ConstructionKind::rademacher(),
                          ConstructionKind::achlioptas_sparse(), ConstructionKind::graph_sparse(16)}) {
    const auto deltas = sample_distortions(kind, 50, 200, 2000, next_seed(), threads);
    const auto est = mean_estimate(deltas);
    out.push_back({"unbiased " + kind.name(), std::abs(est.mean) <= kSigmas * est.standard_error,
                   "mean delta " + fmt(est.mean) + " +- " + fmt(est.standard_error)});
  }
  return out;
}

}  // namespace jl
