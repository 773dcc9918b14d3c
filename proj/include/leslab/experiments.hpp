#pragma once

// Config-driven orchestration: parse experiment configs from JSON, run the
// prediction + simulation jobs they describe, and emit deterministic
// artifacts (report.json, samples.csv, summary.txt) plus a timestamped
// sidecar log.  Reruns of the same config are byte-identical in everything
// except the sidecar log, for any thread count.

#include <json.hpp>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "leslab/ensembles.hpp"
#include "leslab/stats.hpp"
#include "leslab/thread_pool.hpp"

namespace leslab {

// Invalid config contents; the message names the offending field.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
  moments,
  covariance,
  clt,
  process,
  schatten,
  hankel_check,
  oracle_check,
  nonzero_diag,
};

ExperimentKind experiment_kind_from_string(const std::string& s);
std::string to_string(ExperimentKind k);

// One sweep cell: an ensemble plus the kind-specific knobs that apply to it.
// `lambda` is the configured aspect ratio; the ensemble's p is derived as
// round(lambda * n) and required to be >= 1.
struct ExperimentCell {
  EnsembleSpec ensemble;
  double lambda = 1.0;
  std::vector<int> orders;                  // moments: trace powers r
  std::vector<std::array<int, 2>> pairs;    // covariance: (k1,k2) pairs
  std::vector<double> coeffs;               // clt: Q coefficients, [0] -> x^1
  int k = 0;                                // process / nonzero_diag / oracle trace
  std::vector<double> times;                // process: Brownian grid times
  int r = 0;                                // schatten: trace order
  std::vector<int> n_grid;                  // schatten: size grid for the limit

  // Deterministic check-id prefix derived from the cell content, e.g.
  // "symmetric_gaussian_lam1_n512" (plus "_k2" when k > 0).
  std::string label() const;
};

struct ExperimentConfig {
  std::string id;
  ExperimentKind kind = ExperimentKind::moments;
  std::uint64_t seed = 0;
  int replicates = 0;
  std::uint64_t mc_samples = 0;          // 0 -> library default
  std::string check;                     // oracle_check: "partition_counts" | "trace_formula"
  std::vector<double> m1_lambdas;        // moments: analytic first-moment checks
  bool gaussianity = true;               // covariance / clt: emit shape diagnostics
  std::vector<ExperimentCell> cells;

  static ExperimentConfig from_json(const nlohmann::ordered_json& j);
  static ExperimentConfig from_json_text(const std::string& text);  // line diagnostics
  nlohmann::ordered_json to_json() const;  // canonical, round-trips losslessly
  void validate() const;                   // throws ConfigError naming the field
};

struct RunArtifacts {
  ExperimentReport report;
  std::vector<FluctuationSample> samples;  // replicate samples drawn at this layer
};

// Runs the experiment described by the config. Throws ConfigError for invalid
// configs and propagates "budget exceeded" errors from the libraries.
RunArtifacts run_experiment(const ExperimentConfig& config,
                            const ThreadPool* pool = nullptr);

// Runs and writes report.json, samples.csv, summary.txt, and run.log into
// out_dir (created if needed). Returns 0 when every check passes, 1 otherwise.
int run_to_directory(const ExperimentConfig& config, const std::string& out_dir,
                     int threads);

// Exit-code classification for errors escaping run_to_directory:
// ConfigError -> 2, "budget exceeded" -> 3, anything else -> 2.
int exit_code_for(const std::exception& error);

// ---- bundled suites ----

// Names of the shipped acceptance-suite configs, in registry order.
std::vector<std::string> list_suites();

// The JSON text of a bundled config (as shipped under configs/).
const std::string& suite_config_text(const std::string& name);

// Parsed and validated bundled config.
ExperimentConfig suite_config(const std::string& name);

}  // namespace leslab
