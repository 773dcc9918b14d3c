#pragma once

// Verdict layer: moment summaries with standard errors, Gaussianity
// diagnostics, and the comparison experiments that match empirical samples
// against the Monte-Carlo limit predictions.
//
// The standard tolerance rule is 4 combined standard errors: a check passes
// iff |empirical - predicted| <= 4 * sqrt(se_emp^2 + se_pred^2).  The
// comparison uses <=, so an exactly-zero prediction met by an exactly-zero
// empirical value passes with zero tolerance.

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "leslab/integrals.hpp"
#include "leslab/matrix_lab.hpp"

namespace leslab {

// Moment summary of one replicate sample.  A sample is degenerate when all
// values are bitwise identical; its variance is then exactly 0 and the shape
// statistics are reported as 0 with the degenerate flag set.
struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double se_mean = 0.0;
  double se_variance = 0.0;  // jackknife
  double se_skewness = 0.0;  // sqrt(6/R)
  double se_excess_kurtosis = 0.0;  // sqrt(24/R)
  int replicates = 0;
  bool degenerate = false;
};

// Requires R >= 8.  The FluctuationSample overload additionally asserts the
// sample-mean centering contract (mean at rounding scale).
MomentSummary summarize(const std::vector<double>& values);
MomentSummary summarize(const FluctuationSample& sample);

struct GaussianityVerdict {
  bool pass = false;
  bool degenerate = false;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double skew_threshold = 0.0;  // 4*sqrt(6/R)
  double kurt_threshold = 0.0;  // 4*sqrt(24/R)
};

// Requires R >= 500.  Degenerate samples fail with the degenerate flag.
GaussianityVerdict gaussianity_check(const MomentSummary& summary);

struct CovEstimate {
  double value = 0.0;
  double std_error = 0.0;  // jackknife (leave-one-out)
  int replicates = 0;
  bool degenerate = false;  // either input was constant; value is exactly 0
};

// Unbiased empirical covariance of paired replicates.  If either input is
// constant the covariance is exactly 0 with zero error.  Throws on mismatched
// lengths or R < 8.
CovEstimate empirical_covariance(const std::vector<double>& a,
                                 const std::vector<double>& b);

// One predicted-vs-empirical comparison.
struct CheckLine {
  std::string id;
  double predicted = 0.0;
  double predicted_se = 0.0;
  double empirical = 0.0;
  double empirical_se = 0.0;
  double tolerance = 0.0;
  std::string rule;
  bool pass = false;
  bool degenerate = false;
};

struct ExperimentReport {
  std::string id;
  std::vector<CheckLine> checks;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  bool pass() const;
  nlohmann::ordered_json to_json() const;  // stable field order
  // One line per check: "<report id>/<check id>,predicted,empirical,tolerance,verdict".
  std::string csv_summary() const;
};

// Builds a standard 4-combined-SE check line.
CheckLine make_check(const std::string& id, double predicted, double predicted_se,
                     double empirical, double empirical_se, bool degenerate = false);

// Appends the two shape-diagnostic lines ("<prefix>skewness" and
// "<prefix>excess_kurtosis") for a summary; degenerate samples fail both.
// Requires the gaussianity_check precondition (R >= 500).
void append_gaussianity_checks(ExperimentReport& report, const std::string& prefix,
                               const MomentSummary& summary);

// Matches the empirical covariance of two replicate-paired samples against a
// predicted limit.  Throws on mismatched replicate counts.
ExperimentReport covariance_match(const std::string& id, const FluctuationSample& a,
                                  const FluctuationSample& b,
                                  const IntegralEstimate& predicted);

// Limit of the normalized Schatten statistic along an n-grid: the mean at the
// largest size must match the predicted limit, and the cross-size SD sequence
// must decrease with a log-log slope in [-0.7, -0.3].  The grid must be
// increasing with at least 3 points; `spec` provides kind/entries/aspect and
// its n is replaced by each grid value.
ExperimentReport schatten_limit_check(const EnsembleSpec& spec, int r,
                                      const std::vector<int>& n_grid, int replicates,
                                      std::uint64_t seed, std::uint64_t mc_samples = 0,
                                      const ThreadPool* pool = nullptr);

// CLT of the normalized Schatten statistic at a single size: variance of
// sqrt(n) * (y - limit) against the delta-method prediction, plus a
// Gaussianity check.  Requires R >= 2000.
ExperimentReport schatten_clt_check(const EnsembleSpec& spec, int r, int replicates,
                                    std::uint64_t seed, std::uint64_t mc_samples = 0,
                                    const ThreadPool* pool = nullptr);

// Empirical time-pair covariance matrix of the Brownian-path fluctuations
// against the process predictions, all pairs.  Requires R >= 2000 and at
// least 2 grid times.
ExperimentReport process_cov_check(const EnsembleSpec& spec, int k,
                                   const std::vector<double>& times, int replicates,
                                   std::uint64_t seed, std::uint64_t mc_samples = 0,
                                   const ThreadPool* pool = nullptr);

// Random-diagonal variance against sigma_{k,k} + k^2 M_{k-1}^2 Var(a0).
// M_0 is fixed to 0 by the k=1 diagonal-shift regression (recorded in the
// report details); M_1 uses the aspect ratio; higher orders are estimated.
// Gaussian diagonals also run the Gaussianity check; non-Gaussian diagonals
// instead assert that the limit fails it (recorded as an expected failure).
ExperimentReport nonzero_diag_check(const EnsembleSpec& spec, int k, int replicates,
                                    std::uint64_t seed, std::uint64_t mc_samples = 0,
                                    const ThreadPool* pool = nullptr);

}  // namespace leslab
