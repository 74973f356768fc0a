#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jl/constructions.hpp"
#include "jl/core.hpp"

namespace jl {

/// The three transforms compared by the experiments. Ach is the sparse
/// Achlioptas distribution; Sparse is the graph construction with column
/// sparsity s.
enum class Series : std::uint8_t { kDense = 0, kAch = 1, kSparse = 2 };

enum class InputFamily : std::uint8_t { kSparse = 0, kDense = 1 };

std::string series_name(Series series);       // "Dense", "Ach", "Sparse"
std::string family_name(InputFamily family);  // "sparse", "dense"
Series parse_series(const std::string& name);  // case-insensitive; throws std::invalid_argument
ConstructionKind series_kind(Series series, std::size_t s);

struct ExperimentConfig {
  std::size_t n = 5000;
  std::size_t d = 10000;
  std::size_t k = 50;
  std::size_t s = 16;
  std::size_t t = 5;
  std::size_t trials = 30;
  double epsilon = 0.5;
  std::uint64_t master_seed = 0;
  std::vector<Series> constructions = {Series::kDense, Series::kAch, Series::kSparse};
  std::vector<double> probes = {0.5, 0.99};
  /// Worker count; 0 resolves via resolve_threads(). Never affects results.
  std::size_t threads = 0;

  static ExperimentConfig paper_scale() { return {}; }
  /// n = 500, d = 1000, trials = 10.
  static ExperimentConfig desk_scale();

  /// Throws std::invalid_argument when an invariant is broken.
  void validate() const;
};

/// One aggregated cell: the per-instance quantile of |delta| for `probe`,
/// averaged over `trials` transform instances.
struct SweepRow {
  std::string construction;
  std::string input_family;
  std::size_t axis_value = 0;
  double probe = 0.0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation across instances (0 for one instance)
  std::size_t trials = 0;
};

struct SweepResult {
  std::string axis_name;
  std::vector<std::size_t> axis_values;
  std::vector<SweepRow> rows;

  /// nullptr when no such cell exists.
  const SweepRow* find(const std::string& construction, const std::string& input_family, std::size_t axis_value,
                       double probe) const;
};

/// Sweeps the Sparse column sparsity over s_values on sparse (t = cfg.t) and
/// dense inputs. Dense and Ach do not depend on s and are repeated at every
/// axis value as reference series.
SweepResult run_sparsity_sweep(const ExperimentConfig& cfg, const std::vector<std::size_t>& s_values);

/// Sweeps input sparsity t with s = cfg.s fixed. Only sparse inputs.
SweepResult run_input_sparsity_sweep(const ExperimentConfig& cfg, const std::vector<std::size_t>& t_values);

/// Sweeps the target dimension on sparse and dense inputs.
SweepResult run_k_sweep(const ExperimentConfig& cfg, const std::vector<std::size_t>& k_values);

struct CdfSpec {
  double grid_min = -1.0;
  double grid_max = 1.5;
  std::size_t grid_points = 251;
  /// |delta| thresholds, logarithmically spaced in [tail_min, tail_max].
  double tail_min = 1e-4;
  double tail_max = 1.0;
  std::size_t tail_points = 41;
  InputFamily family = InputFamily::kSparse;
  /// Column sparsities for the Sparse series; empty means {cfg.s}.
  std::vector<std::size_t> s_values;

  std::vector<double> grid() const;
  std::vector<double> tail_thresholds() const;
};

struct CdfSeries {
  std::string construction;   // "Dense", "Ach", "Sparse(s=16)"
  std::vector<double> deltas;  // pooled over all instances, instance-major
  std::vector<double> cdf;     // P[delta <= grid[j]]
  std::vector<double> tail;    // P[|delta| > threshold[j]]
};

struct CdfResult {
  std::vector<double> grid;
  std::vector<double> tail_thresholds;
  std::vector<CdfSeries> series;

  const CdfSeries* find(const std::string& construction) const;
};

CdfResult run_cdf(const ExperimentConfig& cfg, const CdfSpec& spec);

/// Smallest k with 2 exp(-k eps^2 / 12) <= n^-3:
/// ceil(12 (3 ln n + ln 2) / eps^2). Throws for n < 2 or eps outside (0, 1).
std::size_t required_k(std::size_t n, double epsilon);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

void write_sweep_csv(const SweepResult& result, std::ostream& out);
void write_cdf_csv(const CdfResult& result, std::ostream& out);
void write_tail_csv(const CdfResult& result, std::ostream& out);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Reduced-size versions of the statistical bound checks. Deterministic for a
/// fixed seed.
std::vector<CheckResult> run_verification(std::uint64_t seed, std::size_t threads = 0);

}  // namespace jl
