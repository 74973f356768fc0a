#include "jl/experiments.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "jl/apply.hpp"
#include "jl/parallel.hpp"
#include "jl/stats.hpp"

namespace jl {
namespace {

// Stream tags under SeedSpec{master_seed, 0}.
constexpr std::uint64_t kVectorStreams = 1;
constexpr std::uint64_t kTransformStreams = 2;

std::size_t workers(const ExperimentConfig& cfg) { return cfg.threads == 0 ? resolve_threads() : cfg.threads; }

SeedSpec root_seed(const ExperimentConfig& cfg) { return SeedSpec{cfg.master_seed, 0}; }

/// Input vectors are a function of (family, t, index) only, so every
/// construction and instance in an experiment sees the same set.
std::vector<InputVector> make_inputs(const ExperimentConfig& cfg, InputFamily family, std::size_t t) {
  const SeedSpec base = root_seed(cfg)
                            .child(kVectorStreams)
                            .child(static_cast<std::uint64_t>(family))
                            .child(family == InputFamily::kSparse ? t : 0);
  std::vector<std::optional<InputVector>> slots(cfg.n);
  parallel_for(cfg.n, workers(cfg), [&](std::size_t i) {
    slots[i] = family == InputFamily::kSparse ? sample_sparse_unit(cfg.d, t, base.child(i))
                                              : sample_unit_sphere(cfg.d, base.child(i));
  });
  std::vector<InputVector> out;
  out.reserve(cfg.n);
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

/// Instance i of (series, k, s) is sampled from one fixed stream regardless of
/// which experiment asks for it or how many other instances exist.
SeedSpec instance_seed(const ExperimentConfig& cfg, Series series, std::size_t k, std::size_t s, std::size_t trial) {
  return root_seed(cfg)
      .child(kTransformStreams)
      .child(static_cast<std::uint64_t>(series))
      .child(k)
      .child(series == Series::kSparse ? s : 0)
      .child(trial);
}

std::vector<double> instance_abs_deltas(const Transform& transform, const std::vector<InputVector>& xs,
                                        std::size_t trial) {
  const auto samples = distortion_batch(transform, xs, trial, 1);
  std::vector<double> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) out[i] = std::abs(samples[i].delta);
  return out;
}

/// quantiles[trial][probe] of |delta|.
std::vector<std::vector<double>> instance_quantiles(const ExperimentConfig& cfg, Series series, std::size_t k,
                                                    std::size_t s, const std::vector<InputVector>& xs) {
  std::vector<std::vector<double>> out(cfg.trials);
  parallel_for(cfg.trials, workers(cfg), [&](std::size_t trial) {
    const auto transform = sample_transform(series_kind(series, s), k, cfg.d, instance_seed(cfg, series, k, s, trial));
    const auto abs_deltas = instance_abs_deltas(transform, xs, trial);
    out[trial] = quantiles(abs_deltas, cfg.probes).values;
  });
  return out;
}

void append_rows(SweepResult& result, const ExperimentConfig& cfg, Series series, InputFamily family,
                 std::size_t axis_value, const std::vector<std::vector<double>>& per_trial) {
  const double trials = static_cast<double>(per_trial.size());
  for (std::size_t p = 0; p < cfg.probes.size(); ++p) {
    double sum = 0.0;
    for (const auto& q : per_trial) sum += q[p];
    const double mean = sum / trials;
    double ss = 0.0;
    for (const auto& q : per_trial) ss += (q[p] - mean) * (q[p] - mean);
    const double sd = per_trial.size() > 1 ? std::sqrt(ss / (trials - 1.0)) : 0.0;
    result.rows.push_back(SweepRow{series_name(series), family_name(family), axis_value, cfg.probes[p], mean, sd,
                                   per_trial.size()});
  }
}

std::vector<double> spaced(double lo, double hi, std::size_t points, bool logarithmic) {
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(points - 1);
    out[i] = logarithmic ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
  }
  out.back() = hi;
  return out;
}

}  // namespace

std::string series_name(Series series) {
  switch (series) {
    case Series::kDense:
      return "Dense";
    case Series::kAch:
      return "Ach";
    case Series::kSparse:
      return "Sparse";
  }
  return "Unknown";
}

std::string family_name(InputFamily family) { return family == InputFamily::kSparse ? "sparse" : "dense"; }

Series parse_series(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "dense") return Series::kDense;
  if (lower == "ach") return Series::kAch;
  if (lower == "sparse") return Series::kSparse;
  throw std::invalid_argument("unknown construction '" + name + "' (expected Dense, Ach or Sparse)");
}

ConstructionKind series_kind(Series series, std::size_t s) {
  switch (series) {
    case Series::kDense:
      return ConstructionKind::dense_gaussian();
    case Series::kAch:
      return ConstructionKind::achlioptas_sparse();
    case Series::kSparse:
      return ConstructionKind::graph_sparse(s);
  }
  throw std::invalid_argument("unknown series");
}

ExperimentConfig ExperimentConfig::desk_scale() {
  ExperimentConfig cfg;
  cfg.n = 500;
  cfg.d = 1000;
  cfg.trials = 10;
  return cfg;
}

void ExperimentConfig::validate() const {
  if (n == 0 || d == 0 || k == 0) throw std::invalid_argument("config: n, d and k must be positive");
  if (trials == 0) throw std::invalid_argument("config: trials must be at least 1");
  if (s == 0 || s > k) throw std::invalid_argument("config: need 1 <= s <= k");
  if (t == 0 || t > d) throw std::invalid_argument("config: need 1 <= t <= d");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("config: epsilon must lie in (0, 1)");
  if (constructions.empty()) throw std::invalid_argument("config: at least one construction is required");
  if (probes.empty()) throw std::invalid_argument("config: at least one probe is required");
  for (double p : probes) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("config: probes must lie in (0, 1)");
  }
}

const SweepRow* SweepResult::find(const std::string& construction, const std::string& input_family,
                                  std::size_t axis_value, double probe) const {
  for (const auto& row : rows) {
    if (row.construction == construction && row.input_family == input_family && row.axis_value == axis_value &&
        row.probe == probe) {
      return &row;
    }
  }
  return nullptr;
}

SweepResult run_sparsity_sweep(const ExperimentConfig& cfg, const std::vector<std::size_t>& s_values) {
  cfg.validate();
  for (std::size_t s : s_values) {
    if (s == 0 || s > cfg.k) {
      throw std::invalid_argument("sweep-s: s=" + std::to_string(s) + " must lie in [1, k=" + std::to_string(cfg.k) +
                                  "]");
    }
  }
  SweepResult result{"s", s_values, {}};
  for (const InputFamily family : {InputFamily::kSparse, InputFamily::kDense}) {
    const auto xs = make_inputs(cfg, family, cfg.t);
    for (const Series series : cfg.constructions) {
      if (series == Series::kSparse) {
        for (std::size_t s : s_values) append_rows(result, cfg, series, family, s, instance_quantiles(cfg, series, cfg.k, s, xs));
      } else {
        const auto per_trial = instance_quantiles(cfg, series, cfg.k, cfg.s, xs);
        for (std::size_t s : s_values) append_rows(result, cfg, series, family, s, per_trial);
      }
    }
  }
  return result;
}

SweepResult run_input_sparsity_sweep(const ExperimentConfig& cfg, const std::vector<std::size_t>& t_values) {
  cfg.validate();
  for (std::size_t t : t_values) {
    if (t == 0 || t > cfg.d) {
      throw std::invalid_argument("sweep-t: t=" + std::to_string(t) + " must lie in [1, d=" + std::to_string(cfg.d) +
                                  "]");
    }
  }
  SweepResult result{"t", t_values, {}};
  for (std::size_t t : t_values) {
    const auto xs = make_inputs(cfg, InputFamily::kSparse, t);
    for (const Series series : cfg.constructions) {
      append_rows(result, cfg, series, InputFamily::kSparse, t, instance_quantiles(cfg, series, cfg.k, cfg.s, xs));
    }
  }
  return result;
}

SweepResult run_k_sweep(const ExperimentConfig& cfg, const std::vector<std::size_t>& k_values) {
  cfg.validate();
  const bool has_sparse =
      std::find(cfg.constructions.begin(), cfg.constructions.end(), Series::kSparse) != cfg.constructions.end();
  for (std::size_t k : k_values) {
    if (k == 0) throw std::invalid_argument("sweep-k: k must be positive");
    if (has_sparse && k < cfg.s) {
      throw std::invalid_argument("sweep-k: k=" + std::to_string(k) + " is below s=" + std::to_string(cfg.s) +
                                  " for the Sparse series");
    }
  }
  SweepResult result{"k", k_values, {}};
  for (const InputFamily family : {InputFamily::kSparse, InputFamily::kDense}) {
    const auto xs = make_inputs(cfg, family, cfg.t);
    for (const Series series : cfg.constructions) {
      for (std::size_t k : k_values) append_rows(result, cfg, series, family, k, instance_quantiles(cfg, series, k, cfg.s, xs));
    }
  }
  return result;
}

std::vector<double> CdfSpec::grid() const {
  if (grid_points == 0 || !(grid_min < grid_max)) throw std::invalid_argument("cdf: invalid grid");
  return spaced(grid_min, grid_max, grid_points, false);
}

std::vector<double> CdfSpec::tail_thresholds() const {
  if (tail_points == 0 || !(tail_min > 0.0 && tail_min < tail_max)) {
    throw std::invalid_argument("cdf: invalid tail thresholds");
  }
  return spaced(tail_min, tail_max, tail_points, true);
}

const CdfSeries* CdfResult::find(const std::string& construction) const {
  for (const auto& s : series) {
    if (s.construction == construction) return &s;
  }
  return nullptr;
}

CdfResult run_cdf(const ExperimentConfig& cfg, const CdfSpec& spec) {
  cfg.validate();
  CdfResult result;
  result.grid = spec.grid();
  result.tail_thresholds = spec.tail_thresholds();
  const std::vector<std::size_t> s_values = spec.s_values.empty() ? std::vector{cfg.s} : spec.s_values;
  for (std::size_t s : s_values) {
    if (s == 0 || s > cfg.k) throw std::invalid_argument("cdf: s=" + std::to_string(s) + " must lie in [1, k]");
  }

  const auto xs = make_inputs(cfg, spec.family, cfg.t);
  auto pooled = [&](Series series, std::size_t s) {
    std::vector<std::vector<double>> per_trial(cfg.trials);
    parallel_for(cfg.trials, workers(cfg), [&](std::size_t trial) {
      const auto transform =
          sample_transform(series_kind(series, s), cfg.k, cfg.d, instance_seed(cfg, series, cfg.k, s, trial));
      const auto samples = distortion_batch(transform, xs, trial, 1);
      per_trial[trial].reserve(samples.size());
      for (const auto& sample : samples) per_trial[trial].push_back(sample.delta);
    });
    std::vector<double> all;
    all.reserve(cfg.trials * xs.size());
    for (const auto& t : per_trial) all.insert(all.end(), t.begin(), t.end());
    return all;
  };
  auto finish = [&](std::string label, std::vector<double> deltas) {
    CdfSeries series{std::move(label), std::move(deltas), {}, {}};
    series.cdf = empirical_cdf(series.deltas, result.grid);
    std::vector<double> abs_deltas(series.deltas.size());
    std::transform(series.deltas.begin(), series.deltas.end(), abs_deltas.begin(), [](double x) { return std::abs(x); });
    std::sort(abs_deltas.begin(), abs_deltas.end());
    const double n = static_cast<double>(abs_deltas.size());
    for (double threshold : result.tail_thresholds) {
      const auto above = abs_deltas.end() - std::upper_bound(abs_deltas.begin(), abs_deltas.end(), threshold);
      series.tail.push_back(static_cast<double>(above) / n);
    }
    result.series.push_back(std::move(series));
  };

  for (const Series series : cfg.constructions) {
    if (series == Series::kSparse) {
      for (std::size_t s : s_values) finish("Sparse(s=" + std::to_string(s) + ")", pooled(series, s));
    } else {
      finish(series_name(series), pooled(series, cfg.s));
    }
  }
  return result;
}

std::size_t required_k(std::size_t n, double epsilon) {
  if (n < 2) throw std::invalid_argument("required_k: n must be at least 2");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("required_k: epsilon must lie in (0, 1)");
  const double k = 12.0 * (3.0 * std::log(static_cast<double>(n)) + std::log(2.0)) / (epsilon * epsilon);
  return static_cast<std::size_t>(std::ceil(k));
}

}  // namespace jl
