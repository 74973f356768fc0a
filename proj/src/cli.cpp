#include "jl/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "jl/experiments.hpp"
#include "jl/parallel.hpp"

#ifndef JL_VERSION
#define JL_VERSION "unknown"
#endif

namespace jl {
namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t k = 0;
  std::size_t s = 0;
  std::size_t t = 0;
  std::size_t trials = 0;
  double epsilon = 0.5;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  bool paper_scale = false;
  std::vector<std::string> constructions;
  std::vector<double> probes;
  std::string out;
  std::string manifest;

  CLI::Option* n_opt = nullptr;
  CLI::Option* d_opt = nullptr;
  CLI::Option* k_opt = nullptr;
  CLI::Option* s_opt = nullptr;
  CLI::Option* t_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
  CLI::Option* eps_opt = nullptr;
};

enum class Axis { kNone, kS, kT, kK };

/// Adds the shared experiment flags. The swept axis (if any) is registered
/// separately as a list by the caller.
void add_common(CLI::App* app, CommonOptions& o, Axis axis) {
  o.n_opt = app->add_option("--n", o.n, "number of input vectors");
  o.d_opt = app->add_option("--d", o.d, "ambient dimension");
  if (axis != Axis::kK) o.k_opt = app->add_option("--k", o.k, "target dimension");
  if (axis != Axis::kS) o.s_opt = app->add_option("--s", o.s, "Sparse column sparsity");
  if (axis != Axis::kT) o.t_opt = app->add_option("--t", o.t, "nonzeros per sparse input");
  o.trials_opt = app->add_option("--trials", o.trials, "transform instances per series");
  o.eps_opt = app->add_option("--eps", o.epsilon, "epsilon for tail reports");
  app->add_option("--seed", o.seed, "master seed");
  app->add_option("--threads", o.threads, "worker threads (0 = hardware; JL_THREADS caps)");
  app->add_flag("--paper-scale", o.paper_scale, "n=5000, d=10000, trials=30 defaults");
  app->add_option("--constructions", o.constructions, "subset of Dense,Ach,Sparse")->delimiter(',');
  app->add_option("--probes", o.probes, "quantile probes in (0,1)")->delimiter(',');
  app->add_option("--out", o.out, "output CSV path")->required();
  app->add_option("--manifest", o.manifest, "run manifest path (default <out>.manifest.json)");
}

ExperimentConfig build_config(const CommonOptions& o) {
  ExperimentConfig cfg = o.paper_scale ? ExperimentConfig::paper_scale() : ExperimentConfig::desk_scale();
  auto given = [](const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; };
  if (given(o.n_opt)) cfg.n = o.n;
  if (given(o.d_opt)) cfg.d = o.d;
  if (given(o.k_opt)) cfg.k = o.k;
  if (given(o.s_opt)) cfg.s = o.s;
  if (given(o.t_opt)) cfg.t = o.t;
  if (given(o.trials_opt)) cfg.trials = o.trials;
  if (given(o.eps_opt)) cfg.epsilon = o.epsilon;
  cfg.master_seed = o.seed;
  cfg.threads = resolve_threads(o.threads);
  if (!o.constructions.empty()) {
    cfg.constructions.clear();
    for (const auto& name : o.constructions) cfg.constructions.push_back(parse_series(name));
  }
  if (!o.probes.empty()) cfg.probes = o.probes;
  return cfg;
}

json config_json(const ExperimentConfig& cfg) {
  json constructions = json::array();
  for (auto c : cfg.constructions) constructions.push_back(series_name(c));
  return json{{"n", cfg.n},
              {"d", cfg.d},
              {"k", cfg.k},
              {"s", cfg.s},
              {"t", cfg.t},
              {"trials", cfg.trials},
              {"epsilon", cfg.epsilon},
              {"master_seed", cfg.master_seed},
              {"constructions", constructions},
              {"probes", cfg.probes}};
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  file << content;
  if (!file) throw std::runtime_error("failed writing " + path);
}

void write_manifest(const std::string& path, const std::string& command, json config, std::uint64_t seed,
                    const std::string& started_at, json extra) {
  json manifest{{"command", command},
                {"config", std::move(config)},
                {"seed", seed},
                {"version", JL_VERSION},
                {"started_at", started_at}};
  for (auto& [key, value] : extra.items()) manifest["config"][key] = value;
  write_text(path, manifest.dump(2) + "\n");
}

std::string manifest_path(const CommonOptions& o) { return o.manifest.empty() ? o.out + ".manifest.json" : o.manifest; }

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Johnson-Lindenstrauss distortion experiments", "jl_experiments"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  CommonOptions sweep_s_opts;
  std::vector<std::size_t> s_values = {1, 2, 4, 8, 16, 32};
  auto* sweep_s = app.add_subcommand("sweep-s", "quantiles of |delta| vs column sparsity s");
  add_common(sweep_s, sweep_s_opts, Axis::kS);
  sweep_s->add_option("--s", s_values, "column sparsities")->delimiter(',');

  CommonOptions sweep_t_opts;
  std::vector<std::size_t> t_values = {1, 2, 5, 10, 50, 100, 1000};
  auto* sweep_t = app.add_subcommand("sweep-t", "quantiles of |delta| vs input sparsity t");
  add_common(sweep_t, sweep_t_opts, Axis::kT);
  sweep_t->add_option("--t", t_values, "input sparsities")->delimiter(',');

  CommonOptions sweep_k_opts;
  std::vector<std::size_t> k_values = {25, 50, 100, 200, 400};
  auto* sweep_k = app.add_subcommand("sweep-k", "quantiles of |delta| vs target dimension k");
  add_common(sweep_k, sweep_k_opts, Axis::kK);
  sweep_k->add_option("--k", k_values, "target dimensions")->delimiter(',');

  CommonOptions cdf_opts;
  CdfSpec cdf_spec;
  std::string cdf_input = "sparse";
  std::string tail_out;
  auto* cdf = app.add_subcommand("cdf", "pooled CDF of delta and |delta| tail table per construction");
  add_common(cdf, cdf_opts, Axis::kS);
  cdf->add_option("--s", cdf_spec.s_values, "Sparse column sparsities (default: 16)")->delimiter(',');
  cdf->add_option("--grid-min", cdf_spec.grid_min);
  cdf->add_option("--grid-max", cdf_spec.grid_max);
  cdf->add_option("--grid-points", cdf_spec.grid_points);
  cdf->add_option("--tail-min", cdf_spec.tail_min);
  cdf->add_option("--tail-max", cdf_spec.tail_max);
  cdf->add_option("--tail-points", cdf_spec.tail_points);
  cdf->add_option("--input", cdf_input, "input family")->check(CLI::IsMember({"sparse", "dense"}));
  cdf->add_option("--tail-out", tail_out, "tail table path (default <out>.tail.csv)");

  std::uint64_t verify_seed = 0;
  std::size_t verify_threads = 0;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "run the statistical bound checks");
  verify->add_option("--seed", verify_seed, "master seed");
  verify->add_option("--threads", verify_threads, "worker threads");
  verify->add_option("--out", verify_out, "optional CSV of check results");

  std::size_t rk_n = 0;
  double rk_eps = 0.0;
  std::string rk_out;
  auto* req_k = app.add_subcommand("required-k", "target dimension for n points at distortion eps");
  req_k->add_option("--n", rk_n, "number of points")->required();
  req_k->add_option("--eps", rk_eps, "distortion epsilon in (0,1)")->required();
  req_k->add_option("--out", rk_out, "optional CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string started_at = utc_now();
  try {
    if (sweep_s->parsed() || sweep_t->parsed() || sweep_k->parsed()) {
      const bool is_s = sweep_s->parsed();
      const bool is_t = sweep_t->parsed();
      const CommonOptions& o = is_s ? sweep_s_opts : (is_t ? sweep_t_opts : sweep_k_opts);
      const ExperimentConfig cfg = build_config(o);
      SweepResult result = is_s ? run_sparsity_sweep(cfg, s_values)
                                : (is_t ? run_input_sparsity_sweep(cfg, t_values) : run_k_sweep(cfg, k_values));
      std::ostringstream csv;
      write_sweep_csv(result, csv);
      write_text(o.out, csv.str());
      write_manifest(manifest_path(o), app.get_subcommands().front()->get_name(), config_json(cfg), cfg.master_seed,
                     started_at, json{{"axis_name", result.axis_name}, {"axis_values", result.axis_values}});
      out << "wrote " << result.rows.size() << " rows to " << o.out << "\n";
      return kExitOk;
    }

    if (cdf->parsed()) {
      const ExperimentConfig cfg = build_config(cdf_opts);
      cdf_spec.family = cdf_input == "dense" ? InputFamily::kDense : InputFamily::kSparse;
      const CdfResult result = run_cdf(cfg, cdf_spec);
      std::ostringstream csv;
      write_cdf_csv(result, csv);
      write_text(cdf_opts.out, csv.str());
      std::ostringstream tail;
      write_tail_csv(result, tail);
      const std::string tail_path = tail_out.empty() ? cdf_opts.out + ".tail.csv" : tail_out;
      write_text(tail_path, tail.str());
      write_manifest(manifest_path(cdf_opts), "cdf", config_json(cfg), cfg.master_seed, started_at,
                     json{{"input_family", cdf_input},
                          {"grid", {cdf_spec.grid_min, cdf_spec.grid_max, cdf_spec.grid_points}},
                          {"tail", {cdf_spec.tail_min, cdf_spec.tail_max, cdf_spec.tail_points}},
                          {"s_values", cdf_spec.s_values}});
      out << "wrote " << result.series.size() << " series to " << cdf_opts.out << " and " << tail_path << "\n";
      return kExitOk;
    }

    if (verify->parsed()) {
      const auto checks = run_verification(verify_seed, resolve_threads(verify_threads));
      std::size_t failed = 0;
      std::ostringstream csv;
      csv << "check,passed,detail\n";
      for (const auto& check : checks) {
        out << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail << "\n";
        csv << '"' << check.name << "\"," << (check.passed ? 1 : 0) << ",\"" << check.detail << "\"\n";
        if (!check.passed) ++failed;
      }
      if (!verify_out.empty()) {
        write_text(verify_out, csv.str());
        write_manifest(verify_out + ".manifest.json", "verify", json::object(), verify_seed, started_at,
                       json::object());
      }
      if (failed > 0) {
        err << failed << " check(s) failed:\n";
        for (const auto& check : checks) {
          if (!check.passed) err << "  " << check.name << "\n";
        }
        return kExitFailure;
      }
      return kExitOk;
    }

    if (req_k->parsed()) {
      const std::size_t k = required_k(rk_n, rk_eps);
      out << k << "\n";
      if (!rk_out.empty()) {
        write_text(rk_out, "n,epsilon,k\n" + std::to_string(rk_n) + "," + format_double(rk_eps) + "," +
                               std::to_string(k) + "\n");
        write_manifest(rk_out + ".manifest.json", "required-k", json{{"n", rk_n}, {"epsilon", rk_eps}}, 0,
                       started_at, json::object());
      }
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace jl
