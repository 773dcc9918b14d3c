#include "leslab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "leslab/integrals.hpp"
#include "leslab/matrix_lab.hpp"
#include "leslab/partitions.hpp"
#include "leslab/rng.hpp"

namespace leslab {

namespace {

using json = nlohmann::ordered_json;

std::string fmt_g(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

std::string fmt_g6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config error at " + path + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing required field");
  return *it;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& path) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail(path + "." + item.key(), "unknown field");
  }
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

std::uint64_t as_u64(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected a non-negative integer");
  if (!v.is_number_unsigned() && v.get<std::int64_t>() < 0) {
    fail(path, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

double as_double(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected a boolean");
  return v.get<bool>();
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
  return v;
}

template <typename Parse>
auto parse_list(const json& v, const std::string& path, Parse parse) {
  const json& arr = as_array(v, path);
  std::vector<decltype(parse(arr.front(), path))> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(parse(arr[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

EnsembleSpec parse_ensemble(const json& j, double& lambda_out, const std::string& path) {
  check_keys(j, {"kind", "n", "lambda", "entries", "diagonal"}, path);
  MatrixKind kind = MatrixKind::symmetric;
  EntryDist entries = EntryDist::gaussian;
  DiagonalMode diagonal = DiagonalMode::zero;
  try {
    kind = matrix_kind_from_string(as_string(field(j, "kind", path), path + ".kind"));
  } catch (const std::invalid_argument& e) {
    fail(path + ".kind", e.what());
  }
  const int n = as_int(field(j, "n", path), path + ".n");
  if (n < 1) fail(path + ".n", "matrix size must be >= 1");
  const double lambda = as_double(field(j, "lambda", path), path + ".lambda");
  if (!(lambda > 0.0)) fail(path + ".lambda", "aspect ratio must be positive");
  if (std::lround(lambda * n) < 1) {
    fail(path + ".lambda", "p = round(lambda * n) must be >= 1");
  }
  try {
    entries =
        entry_dist_from_string(as_string(field(j, "entries", path), path + ".entries"));
  } catch (const std::invalid_argument& e) {
    fail(path + ".entries", e.what());
  }
  if (j.contains("diagonal")) {
    try {
      diagonal = diagonal_mode_from_string(
          as_string(j.at("diagonal"), path + ".diagonal"));
    } catch (const std::invalid_argument& e) {
      fail(path + ".diagonal", e.what());
    }
  }
  lambda_out = lambda;
  try {
    return make_ensemble(kind, n, lambda, entries, diagonal);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

json ensemble_json(const EnsembleSpec& spec, double lambda) {
  json j;
  j["kind"] = to_string(spec.kind);
  j["n"] = spec.n;
  j["lambda"] = lambda;
  j["entries"] = to_string(spec.entries);
  j["diagonal"] = to_string(spec.diagonal);
  return j;
}

// Lines in a report that delegate to a stats-layer check get this prefix glue.
void absorb(ExperimentReport& into, const ExperimentReport& sub,
            const std::string& prefix) {
  for (CheckLine line : sub.checks) {
    line.id = prefix + "." + line.id;
    into.checks.push_back(std::move(line));
  }
  into.details[prefix] = sub.details;
}

IntegralEstimate moment_limit(MatrixKind kind, int r, double lambda,
                              std::uint64_t mc_samples, std::uint64_t seed,
                              const ThreadPool* pool) {
  if (kind == MatrixKind::non_symmetric) {
    return estimate_M_nonsym(r, lambda, mc_samples, seed, pool);
  }
  return estimate_M(r, lambda, mc_samples, seed, pool);
}

// ---- experiment runners ----

void run_moments(const ExperimentConfig& cfg, const ThreadPool* pool,
                 RunArtifacts& out) {
  for (std::size_t i = 0; i < cfg.m1_lambdas.size(); ++i) {
    const double lam = cfg.m1_lambdas[i];
    const IntegralEstimate est =
        estimate_M(1, lam, cfg.mc_samples, mix_keys(cfg.seed, 0x4D310000ULL + i), pool);
    CheckLine line;
    line.id = "m1_lambda" + fmt_g(lam);
    line.predicted = lam;
    line.predicted_se = 0.0;
    line.empirical = est.value;
    line.empirical_se = est.std_error;
    line.tolerance = 3.0 * est.std_error;
    line.rule = "within 3 Monte-Carlo standard errors of the analytic value";
    line.pass = std::abs(est.value - lam) <= line.tolerance;
    out.report.checks.push_back(line);
  }

  for (std::size_t ci = 0; ci < cfg.cells.size(); ++ci) {
    const ExperimentCell& cell = cfg.cells[ci];
    const EnsembleSpec& spec = cell.ensemble;
    const std::string label = cell.label();
    const double inv_n = 1.0 / static_cast<double>(spec.n);
    for (const int r : cell.orders) {
      std::vector<double> traces = sample_traces(
          spec, r, cfg.replicates, mix_keys(cfg.seed, ci * 32 + r), pool);
      for (double& t : traces) t *= inv_n;
      const MomentSummary s = summarize(traces);

      const IntegralEstimate pred = moment_limit(
          spec.kind, r, spec.aspect(), cfg.mc_samples, mix_keys(cfg.seed, 0xF0), pool);
      CheckLine line;
      line.id = label + ".mean_r" + std::to_string(r);
      line.predicted = pred.value;
      line.predicted_se = pred.std_error;
      line.empirical = s.mean;
      line.empirical_se = s.se_mean;
      const double four_se = 4.0 * std::sqrt(pred.std_error * pred.std_error +
                                             s.se_mean * s.se_mean);
      line.tolerance = std::max(0.05 * std::abs(pred.value), four_se);
      line.rule =
          "within max(5% relative, 4 combined standard errors) of the limit moment";
      line.pass = std::abs(s.mean - pred.value) <= line.tolerance;
      out.report.checks.push_back(line);

      if (r == 1) {
        const double exact = expected_trace_power(spec, 1) * inv_n;
        out.report.checks.push_back(make_check(label + ".finite_n", exact, 0.0,
                                               s.mean, s.se_mean, s.degenerate));
      }

      FluctuationSample fs;
      fs.label = label + ".r" + std::to_string(r);
      fs.values = std::move(traces);
      fs.centering = Centering::oracle_mean;  // raw normalized traces, no centering
      fs.spec = spec;
      fs.seed = mix_keys(cfg.seed, ci * 32 + r);
      out.samples.push_back(std::move(fs));
    }
  }
}

void run_covariance(const ExperimentConfig& cfg, const ThreadPool* pool,
                    RunArtifacts& out) {
  const std::uint64_t pred_seed = mix_keys(cfg.seed, 0xC0);
  for (std::size_t ci = 0; ci < cfg.cells.size(); ++ci) {
    const ExperimentCell& cell = cfg.cells[ci];
    const EnsembleSpec& spec = cell.ensemble;
    const std::string label = cell.label();

    std::vector<int> ks;
    for (const auto& pair : cell.pairs) {
      ks.push_back(pair[0]);
      ks.push_back(pair[1]);
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

    const std::vector<FluctuationSample> samples = sample_w_multi(
        spec, ks, cfg.replicates, mix_keys(cfg.seed, 1 + ci), pool);
    const auto sample_for = [&](int k) -> const FluctuationSample& {
      const auto it = std::find(ks.begin(), ks.end(), k);
      return samples[static_cast<std::size_t>(it - ks.begin())];
    };

    std::map<int, CovPrediction> diag_pred;
    for (const auto& pair : cell.pairs) {
      const int k1 = pair[0], k2 = pair[1];
      const CovPrediction pred = predict_cov(spec.kind, k1, k2, spec.aspect(),
                                             spec.kappa(), cfg.mc_samples,
                                             pred_seed, pool);
      if (k1 == k2) diag_pred.emplace(k1, pred);
      const CovEstimate emp =
          empirical_covariance(sample_for(k1).values, sample_for(k2).values);
      out.report.checks.push_back(make_check(
          label + ".cov(" + std::to_string(k1) + "," + std::to_string(k2) + ")",
          pred.estimate.value, pred.estimate.std_error, emp.value, emp.std_error,
          emp.degenerate));
    }

    if (cfg.gaussianity) {
      // Shape diagnostics attach to the orders whose variance is predicted in
      // this cell.  A prediction of exactly zero variance means the limit is
      // the degenerate distribution at 0: the sample must be a constant at
      // numerical zero rather than Gaussian-shaped.
      for (const auto& [k, pred] : diag_pred) {
        const MomentSummary s = summarize(sample_for(k));
        const std::string prefix = label + ".w" + std::to_string(k) + "_";
        if (pred.estimate.value == 0.0) {
          const bool at_zero = s.degenerate && std::abs(s.mean) <= 1e-12;
          CheckLine line;
          line.id = prefix + "degenerate_at_zero";
          line.predicted = 1.0;
          line.empirical = at_zero ? 1.0 : 0.0;
          line.tolerance = 0.0;
          line.rule =
              "predicted variance is exactly zero: the sample must be a "
              "constant at numerical zero";
          line.degenerate = s.degenerate;
          line.pass = at_zero;
          out.report.checks.push_back(line);
        } else {
          append_gaussianity_checks(out.report, prefix, s);
        }
      }
    }

    for (const int k : ks) {
      FluctuationSample fs = sample_for(k);
      fs.label = label + ".w" + std::to_string(k);
      out.samples.push_back(std::move(fs));
    }
  }
}

void run_clt(const ExperimentConfig& cfg, const ThreadPool* pool, RunArtifacts& out) {
  const std::uint64_t pred_seed = mix_keys(cfg.seed, 0xC1);
  for (std::size_t ci = 0; ci < cfg.cells.size(); ++ci) {
    const ExperimentCell& cell = cfg.cells[ci];
    const EnsembleSpec& spec = cell.ensemble;
    const std::string label = cell.label();

    FluctuationSample fs = sample_w_poly(spec, cell.coeffs, cfg.replicates,
                                         mix_keys(cfg.seed, 1 + ci), pool);
    const MomentSummary s = summarize(fs);
    const IntegralEstimate pred =
        predict_var_Q(spec.kind, cell.coeffs, spec.aspect(), spec.kappa(),
                      cfg.mc_samples, pred_seed, pool);
    out.report.checks.push_back(make_check(label + ".var_Q", pred.value,
                                           pred.std_error, s.variance, s.se_variance,
                                           s.degenerate));
    if (cfg.gaussianity) {
      append_gaussianity_checks(out.report, label + ".wQ_", s);
    }

    json cd;
    cd["coefficients"] = cell.coeffs;
    cd["replicates"] = cfg.replicates;
    out.report.details[label] = std::move(cd);

    fs.label = label + ".wQ";
    out.samples.push_back(std::move(fs));
  }
}

void run_process(const ExperimentConfig& cfg, const ThreadPool* pool,
                 RunArtifacts& out) {
  for (std::size_t ci = 0; ci < cfg.cells.size(); ++ci) {
    const ExperimentCell& cell = cfg.cells[ci];
    const ExperimentReport sub =
        process_cov_check(cell.ensemble, cell.k, cell.times, cfg.replicates,
                          mix_keys(cfg.seed, 1 + ci), cfg.mc_samples, pool);
    absorb(out.report, sub, cell.label());
  }
}

void run_schatten(const ExperimentConfig& cfg, const ThreadPool* pool,
                  RunArtifacts& out) {
  for (std::size_t ci = 0; ci < cfg.cells.size(); ++ci) {
    const ExperimentCell& cell = cfg.cells[ci];
    const std::string label = cell.label();
    const ExperimentReport limit = schatten_limit_check(
        cell.ensemble, cell.r, cell.n_grid, cfg.replicates,
        mix_keys(cfg.seed, 2 * ci + 1), cfg.mc_samples, pool);
    absorb(out.report, limit, label + ".limit");
    const ExperimentReport clt =
        schatten_clt_check(cell.ensemble, cell.r, cfg.replicates,
                           mix_keys(cfg.seed, 2 * ci + 2), cfg.mc_samples, pool);
    absorb(out.report, clt, label + ".clt");
  }
}

void run_hankel(const ExperimentConfig& cfg, const ThreadPool* pool,
                RunArtifacts& out) {
  (void)pool;  // per-draw eigensolves at toy sizes; serial on purpose
  for (std::size_t ci = 0; ci < cfg.cells.size(); ++ci) {
    const ExperimentCell& cell = cfg.cells[ci];
    const std::uint64_t cell_seed = mix_keys(cfg.seed, 1 + ci);
    double worst = 0.0;
    for (int d = 0; d < cfg.replicates; ++d) {
      const HankelCheck hc =
          hankel_spectrum_check(cell.ensemble, mix_keys(cell_seed, d));
      worst = std::max(worst,
                       hc.max_deviation / (1.0 + hc.largest_eigenvalue));
    }
    CheckLine line;
    line.id = cell.label() + ".spectrum_match";
    line.predicted = 0.0;
    line.empirical = worst;
    line.tolerance = 1e-10;
    line.rule =
        "sorted eigenvalue deviation <= 1e-10 * (1 + largest eigenvalue) on "
        "every draw";
    line.pass = worst <= 1e-10;
    out.report.checks.push_back(line);
  }
  out.report.details["draws_per_shape"] = cfg.replicates;
}

void run_partition_counts(RunArtifacts& out) {
  const auto exact_line = [&](const std::string& id, std::uint64_t predicted,
                              std::uint64_t counted, const char* rule) {
    CheckLine line;
    line.id = id;
    line.predicted = static_cast<double>(predicted);
    line.empirical = static_cast<double>(counted);
    line.tolerance = 0.0;
    line.rule = rule;
    line.pass = predicted == counted;
    out.report.checks.push_back(line);
  };

  for (int r = 1; r <= 6; ++r) {
    std::uint64_t count = 0;
    for_each_pair_partition(2 * r, [&](const Partition&) { ++count; });
    exact_line("p2_count_r" + std::to_string(r), double_factorial_odd(2 * r - 1),
               count, "pair partition count equals (2r-1)!!");
  }

  for (int k1 = 1; k1 <= 4; ++k1) {
    for (int k2 = 1; k1 + k2 <= 5; ++k2) {
      std::uint64_t count = 0;
      for_each_pair_partition(2 * (k1 + k2), [&](const Partition& pi) {
        if (cross_pair_count(pi, 2 * k1) >= 1) ++count;
      });
      exact_line("cross_count_" + std::to_string(k1) + "_" + std::to_string(k2),
                 cross_matched_count(k1, k2), count,
                 "cross-matched count equals the inclusion-exclusion formula");
    }
  }

  for (int k1 = 1; k1 <= 3; ++k1) {
    for (int k2 = 1; k1 + k2 <= 4; ++k2) {
      // Brute-force filter: every 4-subset split 2+2 across the sides, with
      // all remaining elements paired inside a single side.
      const int m = 2 * (k1 + k2);
      std::uint64_t brute = 0;
      std::vector<int> quad(4);
      for (quad[0] = 1; quad[0] <= m - 3; ++quad[0])
        for (quad[1] = quad[0] + 1; quad[1] <= m - 2; ++quad[1])
          for (quad[2] = quad[1] + 1; quad[2] <= m - 1; ++quad[2])
            for (quad[3] = quad[2] + 1; quad[3] <= m; ++quad[3]) {
              if (side1_count(quad, 2 * k1) != 2) continue;
              std::vector<int> rest;
              for (int e = 1; e <= m; ++e) {
                if (std::find(quad.begin(), quad.end(), e) == quad.end())
                  rest.push_back(e);
              }
              for_each_pair_partition_of(rest, [&](const Partition& pi) {
                if (cross_pair_count(pi, 2 * k1) == 0) ++brute;
              });
            }
      std::uint64_t enumerated = 0;
      for_each_p24(k1, k2, [&](const Partition&) { ++enumerated; });
      exact_line("p24_count_" + std::to_string(k1) + "_" + std::to_string(k2),
                 brute, enumerated,
                 "one-quad family enumeration matches brute-force filtering");
    }
  }

  for (int r = 1; r <= 6; ++r) {
    std::uint64_t count = 0;
    for_each_pair_partition(2 * r, [&](const Partition& pi) {
      if (all_pairs_dp(pi)) ++count;
    });
    exact_line("dp_count_r" + std::to_string(r), dp_pair_count(r), count,
               "different-parity pair partition count equals r!");
  }
}

void run_trace_formula(const ExperimentConfig& cfg, RunArtifacts& out) {
  for (std::size_t ci = 0; ci < cfg.cells.size(); ++ci) {
    const ExperimentCell& cell = cfg.cells[ci];
    const EnsembleSpec& spec = cell.ensemble;
    const std::uint64_t cell_seed = mix_keys(cfg.seed, 1 + ci);
    double worst = 0.0;
    for (int d = 0; d < cfg.replicates; ++d) {
      Rng rng(cell_seed, static_cast<std::uint64_t>(d));
      const OffsetSequence a = draw_offsets(spec, rng);
      const double oracle = trace_formula_oracle(a, cell.k);
      const double direct =
          spec.complex_entries()
              ? trace_powers(build_matrix_complex(a), cell.k).back()
              : trace_powers(build_matrix_real(a), cell.k).back();
      worst = std::max(worst, std::abs(direct - oracle) / (1.0 + std::abs(oracle)));
    }
    CheckLine line;
    line.id = cell.label() + ".trace_match";
    line.predicted = 0.0;
    line.empirical = worst;
    line.tolerance = 1e-10;
    line.rule =
        "offset-walk trace formula equals the matrix trace to relative 1e-10";
    line.pass = worst <= 1e-10;
    out.report.checks.push_back(line);
  }
  out.report.details["draws_per_cell"] = cfg.replicates;
}

void run_nonzero_diag(const ExperimentConfig& cfg, const ThreadPool* pool,
                      RunArtifacts& out) {
  for (std::size_t ci = 0; ci < cfg.cells.size(); ++ci) {
    const ExperimentCell& cell = cfg.cells[ci];
    const ExperimentReport sub =
        nonzero_diag_check(cell.ensemble, cell.k, cfg.replicates,
                           mix_keys(cfg.seed, 1 + ci), cfg.mc_samples, pool);
    absorb(out.report, sub, cell.label());
  }
}

}  // namespace

std::string ExperimentCell::label() const {
  std::string s = to_string(ensemble.kind) + "_" + to_string(ensemble.entries) +
                  "_lam" + fmt_g(lambda) + "_n" + std::to_string(ensemble.n);
  if (k > 0) s += "_k" + std::to_string(k);
  return s;
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
  if (s == "moments") return ExperimentKind::moments;
  if (s == "covariance") return ExperimentKind::covariance;
  if (s == "clt") return ExperimentKind::clt;
  if (s == "process") return ExperimentKind::process;
  if (s == "schatten") return ExperimentKind::schatten;
  if (s == "hankel_check") return ExperimentKind::hankel_check;
  if (s == "oracle_check") return ExperimentKind::oracle_check;
  if (s == "nonzero_diag") return ExperimentKind::nonzero_diag;
  throw std::invalid_argument(
      "unknown experiment kind \"" + s +
      "\" (expected moments, covariance, clt, process, schatten, hankel_check, "
      "oracle_check, or nonzero_diag)");
}

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::moments: return "moments";
    case ExperimentKind::covariance: return "covariance";
    case ExperimentKind::clt: return "clt";
    case ExperimentKind::process: return "process";
    case ExperimentKind::schatten: return "schatten";
    case ExperimentKind::hankel_check: return "hankel_check";
    case ExperimentKind::oracle_check: return "oracle_check";
    case ExperimentKind::nonzero_diag: return "nonzero_diag";
  }
  throw std::invalid_argument("unknown experiment kind");
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  const std::string root = "config";
  check_keys(j,
             {"id", "kind", "seed", "replicates", "mc_samples", "check",
              "m1_lambdas", "gaussianity", "cells"},
             root);
  ExperimentConfig cfg;
  cfg.id = as_string(field(j, "id", root), root + ".id");
  try {
    cfg.kind = experiment_kind_from_string(
        as_string(field(j, "kind", root), root + ".kind"));
  } catch (const std::invalid_argument& e) {
    fail(root + ".kind", e.what());
  }
  cfg.seed = as_u64(field(j, "seed", root), root + ".seed");
  cfg.replicates = as_int(field(j, "replicates", root), root + ".replicates");
  if (j.contains("mc_samples")) {
    cfg.mc_samples = as_u64(j.at("mc_samples"), root + ".mc_samples");
  }
  if (j.contains("check")) {
    cfg.check = as_string(j.at("check"), root + ".check");
  }
  if (j.contains("m1_lambdas")) {
    cfg.m1_lambdas = parse_list(j.at("m1_lambdas"), root + ".m1_lambdas",
                                [](const json& v, const std::string& p) {
                                  return as_double(v, p);
                                });
  }
  if (j.contains("gaussianity")) {
    cfg.gaussianity = as_bool(j.at("gaussianity"), root + ".gaussianity");
  }

  const json empty_cells = json::array();
  const json& cells =
      j.contains("cells") ? as_array(j.at("cells"), root + ".cells") : empty_cells;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string path = root + ".cells[" + std::to_string(i) + "]";
    const json& cj = cells[i];
    check_keys(cj,
               {"ensemble", "orders", "pairs", "coeffs", "k", "times", "r",
                "n_grid"},
               path);
    ExperimentCell cell;
    cell.ensemble =
        parse_ensemble(field(cj, "ensemble", path), cell.lambda, path + ".ensemble");
    if (cj.contains("orders")) {
      cell.orders = parse_list(cj.at("orders"), path + ".orders", as_int);
    }
    if (cj.contains("pairs")) {
      cell.pairs = parse_list(
          cj.at("pairs"), path + ".pairs",
          [](const json& v, const std::string& p) -> std::array<int, 2> {
            const json& arr = as_array(v, p);
            if (arr.size() != 2) fail(p, "expected a pair [k1, k2]");
            return {as_int(arr[0], p + "[0]"), as_int(arr[1], p + "[1]")};
          });
    }
    if (cj.contains("coeffs")) {
      cell.coeffs = parse_list(cj.at("coeffs"), path + ".coeffs",
                               [](const json& v, const std::string& p) {
                                 return as_double(v, p);
                               });
    }
    if (cj.contains("k")) cell.k = as_int(cj.at("k"), path + ".k");
    if (cj.contains("times")) {
      cell.times = parse_list(cj.at("times"), path + ".times",
                              [](const json& v, const std::string& p) {
                                return as_double(v, p);
                              });
    }
    if (cj.contains("r")) cell.r = as_int(cj.at("r"), path + ".r");
    if (cj.contains("n_grid")) {
      cell.n_grid = parse_list(cj.at("n_grid"), path + ".n_grid", as_int);
    }
    cfg.cells.push_back(std::move(cell));
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config error: ") + e.what());
  }
  return from_json(j);
}

json ExperimentConfig::to_json() const {
  json j;
  j["id"] = id;
  j["kind"] = to_string(kind);
  j["seed"] = seed;
  j["replicates"] = replicates;
  j["mc_samples"] = mc_samples;
  if (kind == ExperimentKind::oracle_check) j["check"] = check;
  if (!m1_lambdas.empty()) j["m1_lambdas"] = m1_lambdas;
  if (kind == ExperimentKind::covariance || kind == ExperimentKind::clt) {
    j["gaussianity"] = gaussianity;
  }
  json cells = json::array();
  for (const ExperimentCell& cell : this->cells) {
    json cj;
    cj["ensemble"] = ensemble_json(cell.ensemble, cell.lambda);
    if (!cell.orders.empty()) cj["orders"] = cell.orders;
    if (!cell.pairs.empty()) {
      json pairs = json::array();
      for (const auto& p : cell.pairs) pairs.push_back({p[0], p[1]});
      cj["pairs"] = std::move(pairs);
    }
    if (!cell.coeffs.empty()) cj["coeffs"] = cell.coeffs;
    if (cell.k > 0) cj["k"] = cell.k;
    if (!cell.times.empty()) cj["times"] = cell.times;
    if (cell.r > 0) cj["r"] = cell.r;
    if (!cell.n_grid.empty()) cj["n_grid"] = cell.n_grid;
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  return j;
}

void ExperimentConfig::validate() const {
  const std::string root = "config";
  if (id.empty()) fail(root + ".id", "must be non-empty");
  if (replicates < 1) fail(root + ".replicates", "must be >= 1");

  const auto need_cells = [&] {
    if (cells.empty()) fail(root + ".cells", "must contain at least one cell");
  };
  const auto cell_path = [&](std::size_t i) {
    return root + ".cells[" + std::to_string(i) + "]";
  };

  for (std::size_t i = 0; i < cells.size(); ++i) {
    try {
      cells[i].ensemble.validate();
    } catch (const std::invalid_argument& e) {
      fail(cell_path(i) + ".ensemble", e.what());
    }
  }

  switch (kind) {
    case ExperimentKind::moments: {
      if (cells.empty() && m1_lambdas.empty()) {
        fail(root + ".cells", "moments needs cells or m1_lambdas");
      }
      for (double lam : m1_lambdas) {
        if (!(lam > 0.0)) fail(root + ".m1_lambdas", "aspect ratios must be positive");
      }
      if (!cells.empty() && replicates < 8) {
        fail(root + ".replicates", "moment summaries need at least 8 replicates");
      }
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].orders.empty()) {
          fail(cell_path(i) + ".orders", "must list at least one trace power");
        }
        for (int r : cells[i].orders) {
          if (r < 1 || r > 8) {
            fail(cell_path(i) + ".orders", "trace powers must lie in [1, 8]");
          }
        }
      }
      break;
    }
    case ExperimentKind::covariance: {
      need_cells();
      if (replicates < 8) {
        fail(root + ".replicates", "covariance needs at least 8 replicates");
      }
      if (gaussianity && replicates < 500) {
        fail(root + ".replicates",
             "gaussianity diagnostics need at least 500 replicates");
      }
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].pairs.empty()) {
          fail(cell_path(i) + ".pairs", "must list at least one (k1, k2) pair");
        }
        for (const auto& p : cells[i].pairs) {
          if (p[0] < 1 || p[1] < 1 || p[0] + p[1] > 8) {
            fail(cell_path(i) + ".pairs",
                 "orders must be >= 1 with k1 + k2 <= 8");
          }
        }
      }
      break;
    }
    case ExperimentKind::clt: {
      need_cells();
      if (replicates < 8) fail(root + ".replicates", "needs at least 8 replicates");
      if (gaussianity && replicates < 500) {
        fail(root + ".replicates",
             "gaussianity diagnostics need at least 500 replicates");
      }
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].coeffs.empty() || cells[i].coeffs.size() > 6) {
          fail(cell_path(i) + ".coeffs",
               "polynomial must have between 1 and 6 coefficients");
        }
      }
      break;
    }
    case ExperimentKind::process: {
      need_cells();
      if (replicates < 2000) {
        fail(root + ".replicates",
             "process covariance needs at least 2000 replicates");
      }
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].k < 1) fail(cell_path(i) + ".k", "must be >= 1");
        if (cells[i].times.size() < 2) {
          fail(cell_path(i) + ".times", "needs at least 2 grid times");
        }
      }
      break;
    }
    case ExperimentKind::schatten: {
      need_cells();
      if (replicates < 2000) {
        fail(root + ".replicates",
             "Schatten CLT verdicts need at least 2000 replicates");
      }
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].r < 1 || cells[i].r > 8) {
          fail(cell_path(i) + ".r", "trace order must lie in [1, 8]");
        }
        const auto& grid = cells[i].n_grid;
        if (grid.size() < 3) {
          fail(cell_path(i) + ".n_grid", "needs at least 3 increasing sizes");
        }
        for (std::size_t g = 0; g + 1 < grid.size(); ++g) {
          if (grid[g] < 1 || grid[g] >= grid[g + 1]) {
            fail(cell_path(i) + ".n_grid", "sizes must be strictly increasing");
          }
        }
      }
      break;
    }
    case ExperimentKind::hankel_check: {
      need_cells();
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].ensemble.kind != MatrixKind::non_symmetric) {
          fail(cell_path(i) + ".ensemble.kind",
               "the Hankel comparison is defined for the non_symmetric kind");
        }
      }
      break;
    }
    case ExperimentKind::oracle_check: {
      if (check != "partition_counts" && check != "trace_formula") {
        fail(root + ".check",
             "must be \"partition_counts\" or \"trace_formula\"");
      }
      if (check == "partition_counts") {
        if (!cells.empty()) {
          fail(root + ".cells", "partition_counts takes no cells");
        }
      } else {
        need_cells();
        for (std::size_t i = 0; i < cells.size(); ++i) {
          if (cells[i].k < 1 || cells[i].k > 6) {
            fail(cell_path(i) + ".k", "trace power must lie in [1, 6]");
          }
        }
      }
      break;
    }
    case ExperimentKind::nonzero_diag: {
      need_cells();
      if (replicates < 500) {
        fail(root + ".replicates",
             "diagonal-shift verdicts need at least 500 replicates");
      }
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].k < 1) fail(cell_path(i) + ".k", "must be >= 1");
        if (cells[i].ensemble.diagonal != DiagonalMode::random) {
          fail(cell_path(i) + ".ensemble.diagonal",
               "nonzero_diag requires diagonal \"random\"");
        }
      }
      break;
    }
  }
}

RunArtifacts run_experiment(const ExperimentConfig& config, const ThreadPool* pool) {
  config.validate();
  RunArtifacts out;
  out.report.id = config.id;
  switch (config.kind) {
    case ExperimentKind::moments: run_moments(config, pool, out); break;
    case ExperimentKind::covariance: run_covariance(config, pool, out); break;
    case ExperimentKind::clt: run_clt(config, pool, out); break;
    case ExperimentKind::process: run_process(config, pool, out); break;
    case ExperimentKind::schatten: run_schatten(config, pool, out); break;
    case ExperimentKind::hankel_check: run_hankel(config, pool, out); break;
    case ExperimentKind::oracle_check:
      if (config.check == "partition_counts") {
        run_partition_counts(out);
      } else {
        run_trace_formula(config, out);
      }
      break;
    case ExperimentKind::nonzero_diag: run_nonzero_diag(config, pool, out); break;
  }
  return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << content;
}

std::string summary_text(const ExperimentReport& report) {
  int passed = 0;
  for (const CheckLine& c : report.checks) passed += c.pass ? 1 : 0;
  std::string out = "experiment: " + report.id + "\n";
  out += "checks: " + std::to_string(report.checks.size()) + " total, " +
         std::to_string(passed) + " passed, " +
         std::to_string(report.checks.size() - passed) + " failed\n\n";
  for (const CheckLine& c : report.checks) {
    out += c.pass ? "[PASS] " : "[FAIL] ";
    out += c.id + ": empirical " + fmt_g6(c.empirical) + " vs predicted " +
           fmt_g6(c.predicted) + " (tolerance " + fmt_g6(c.tolerance) + ")";
    if (c.degenerate) out += " [degenerate]";
    out += "\n";
  }
  out += "\noverall: ";
  out += report.pass() ? "PASS" : "FAIL";
  out += "\n";
  return out;
}

}  // namespace

int run_to_directory(const ExperimentConfig& config, const std::string& out_dir,
                     int threads) {
  config.validate();
  std::filesystem::create_directories(out_dir);
  const ThreadPool pool(threads);

  const auto wall_start = std::chrono::system_clock::now();
  const auto tick_start = std::chrono::steady_clock::now();
  const RunArtifacts art = run_experiment(config, &pool);
  const auto elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - tick_start)
                              .count();

  json root;
  root["config"] = config.to_json();
  root["report"] = art.report.to_json();
  const std::filesystem::path dir(out_dir);
  write_file(dir / "report.json", root.dump(2) + "\n");

  {
    std::ofstream os(dir / "samples.csv", std::ios::binary);
    if (!os) throw std::runtime_error("cannot write samples.csv");
    write_samples_csv(os, art.samples);
  }
  write_file(dir / "summary.txt", summary_text(art.report));

  // Timestamps live only here; every other artifact is byte-stable.
  {
    const std::time_t t = std::chrono::system_clock::to_time_t(wall_start);
    char stamp[64];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    std::ofstream os(dir / "run.log", std::ios::binary | std::ios::app);
    os << stamp << " id=" << config.id << " threads=" << threads
       << " elapsed_ms=" << elapsed_ms
       << " overall=" << (art.report.pass() ? "PASS" : "FAIL") << "\n";
  }
  return art.report.pass() ? 0 : 1;
}

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const ConfigError*>(&error) != nullptr) return 2;
  if (std::strstr(error.what(), "budget exceeded") != nullptr) return 3;
  return 2;
}

}  // namespace leslab
