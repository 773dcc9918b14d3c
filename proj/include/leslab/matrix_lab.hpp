#pragma once

// Matrix-level laboratory: builds Toeplitz/Hankel ensembles, computes trace
// powers along independent linear-algebra paths, evaluates the exact
// offset-walk trace formula, and collects centered fluctuation samples.

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "leslab/ensembles.hpp"
#include "leslab/thread_pool.hpp"

namespace leslab {

enum class Centering { sample_mean, oracle_mean };

// Replicate-indexed observations of w = (trace statistic - centering)/sqrt(n).
// values[r] comes from RNG stream (seed, r), so the collection is bitwise
// deterministic at any worker count.
struct FluctuationSample {
  std::string label;
  std::vector<double> values;
  Centering centering = Centering::sample_mean;
  EnsembleSpec spec;
  std::uint64_t seed = 0;
  // Grid time for process samples; NaN marks a static sample.
  double time = std::numeric_limits<double>::quiet_NaN();

  bool has_time() const { return time == time; }
};

// CSV export: header "replicate,k_or_Q,value,time", time blank for static
// samples, rows in (sample, replicate) order, full-precision values.
void write_samples_csv(std::ostream& os, const std::vector<FluctuationSample>& samples);

// ---- construction ----

Eigen::MatrixXd build_matrix_real(const OffsetSequence& offsets);
Eigen::MatrixXcd build_matrix_complex(const OffsetSequence& offsets);

// Builds one matrix from RNG stream (seed, 0).  The real overload rejects the
// hermitian kind; the complex one accepts any kind (real kinds produce a zero
// imaginary part).
Eigen::MatrixXd build_matrix(const EnsembleSpec& spec, std::uint64_t seed);
Eigen::MatrixXcd build_matrix_complex(const EnsembleSpec& spec, std::uint64_t seed);

// ---- trace powers ----

// Returns [Tr (TT')^k for k = 1..kmax].  kmax <= 12.  Uses the Gram-matrix
// path for kmax <= 4 and the singular-value path otherwise; both specialized
// paths are exposed for cross-checking.  Throws std::runtime_error on
// non-finite entries or an excessive imaginary residue.
std::vector<double> trace_powers(const Eigen::MatrixXd& T, int kmax);
std::vector<double> trace_powers(const Eigen::MatrixXcd& T, int kmax);
std::vector<double> trace_powers_gram(const Eigen::MatrixXd& T, int kmax);
std::vector<double> trace_powers_gram(const Eigen::MatrixXcd& T, int kmax);
std::vector<double> trace_powers_singular(const Eigen::MatrixXd& T, int kmax);
std::vector<double> trace_powers_singular(const Eigen::MatrixXcd& T, int kmax);

// ---- exact offset-walk evaluations ----

// Evaluates Tr (TT')^k exactly from the entry sequence by enumerating offset
// walks: sum over (d_1..d_{2k}) with alternating partial sums confined to
// column/row ranges and the closure constraint fixing d_{2k}; even-position
// factors are conjugated (a no-op for real sequences).  Includes the n^{-k}
// entry scaling.  Enumeration budget: (n+p-1)^{2k-1} <= 1e8.
double trace_formula_oracle(const OffsetSequence& offsets, int k);

// Exact finite-size expectation E[Tr (TT')^k] for the given ensemble, via the
// same enumeration with entry products replaced by their joint moments.
// Same budget as trace_formula_oracle.
double expected_trace_power(const EnsembleSpec& spec, int k);

// ---- fluctuation sampling ----

// Draws `replicates` independent matrices and returns one sample per requested
// power k, jointly observed on the shared draws.  Centering::sample_mean
// subtracts the cross-replicate mean (refined so the returned values average
// to ~1 ulp of zero); Centering::oracle_mean subtracts the exact expectation
// (tiny sizes only, per the trace-formula budget).
std::vector<FluctuationSample> sample_w_multi(const EnsembleSpec& spec,
                                              const std::vector<int>& ks,
                                              int replicates, std::uint64_t seed,
                                              const ThreadPool* pool = nullptr,
                                              Centering centering = Centering::sample_mean);

FluctuationSample sample_w(const EnsembleSpec& spec, int k, int replicates,
                           std::uint64_t seed, const ThreadPool* pool = nullptr,
                           Centering centering = Centering::sample_mean);

// Polynomial statistic Q(x) = sum_j coeffs[j] * x^{j+1} (constants drop under
// centering, so none is representable).  Empty coeffs give identically zero.
FluctuationSample sample_w_poly(const EnsembleSpec& spec,
                                const std::vector<double>& coeffs, int replicates,
                                std::uint64_t seed, const ThreadPool* pool = nullptr);

// Brownian-path version: one coupled entry path per replicate, observed at
// every grid time, centered per time.  A grid time of 0 yields exact zeros.
std::vector<FluctuationSample> sample_w_process(const EnsembleSpec& spec, int k,
                                                const BrownianPathSpec& path,
                                                int replicates, std::uint64_t seed,
                                                const ThreadPool* pool = nullptr);

// Random-diagonal fluctuations; requires diagonal == DiagonalMode::random
// (the diagonal entry is drawn from the ensemble's own entry family, after
// the off-diagonals).
FluctuationSample sample_nonzero_diag(const EnsembleSpec& spec, int k,
                                      int replicates, std::uint64_t seed,
                                      const ThreadPool* pool = nullptr);

// Same draws as sample_nonzero_diag, with the per-replicate diagonal value
// recorded so the diagonal-shift coefficient can be regressed.
struct DiagSample {
  FluctuationSample w;
  std::vector<double> a0;
};

DiagSample sample_nonzero_diag_with_a0(const EnsembleSpec& spec, int k,
                                       int replicates, std::uint64_t seed,
                                       const ThreadPool* pool = nullptr);

// Raw per-replicate traces Tr (TT')^k (no centering or 1/sqrt(n) scale).
std::vector<double> sample_traces(const EnsembleSpec& spec, int k, int replicates,
                                  std::uint64_t seed, const ThreadPool* pool = nullptr);

// ---- Schatten norms and Hankel spectra ----

// ||T||_{2r} = (Tr (TT')^r)^{1/(2r)} for the given matrix; r2 = 2r.
double schatten_norm(const Eigen::MatrixXd& T, int r2);
double schatten_norm(const Eigen::MatrixXcd& T, int r2);

// Normalized per-replicate statistics ((1/n) Tr (TT')^r)^{1/(2r)}.
std::vector<double> sample_schatten_norms(const EnsembleSpec& spec, int r,
                                          int replicates, std::uint64_t seed,
                                          const ThreadPool* pool = nullptr);

struct HankelCheck {
  double max_deviation = 0.0;
  double largest_eigenvalue = 0.0;
  bool pass = false;
};

// Builds T, forms the Hankel companion H (rows of T reversed), and compares
// the sorted spectra of HH' and TT'.  Passes iff the maximum deviation is at
// most 1e-10 * (1 + largest eigenvalue).  non_symmetric kind only.
HankelCheck hankel_spectrum_check(const EnsembleSpec& spec, std::uint64_t seed);

}  // namespace leslab
