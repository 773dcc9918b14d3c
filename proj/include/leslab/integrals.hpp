#pragma once

// Monte-Carlo evaluation of the partition-indexed limit integrals and the
// covariance/moment predictions assembled from them.
//
// Every estimate derives its random stream from the caller seed mixed with a
// content key of (partition, integrand form, trace split), so the same
// integral evaluated from different call sites with the same seed and sample
// count reproduces bit-identical values. Family sums are accumulated with
// compensated addition in canonical enumeration order, independent of the
// thread count used to evaluate members.

#include <cstdint>
#include <vector>

#include "leslab/partitions.hpp"
#include "leslab/thread_pool.hpp"
#include "leslab/types.hpp"

namespace leslab {

struct IntegralEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;  // per-member sample count used
};

// Two-trace integrand variants: I_* carry the trace-closure delta (pair
// partitions with at least one cross pair); II_* are the one-quad integrands.
// The *_plus variants flip the orientation of all second-trace positions.
enum class FVariant { I_minus, I_plus, II_minus, II_plus };

// Sample count used when the caller passes samples == 0.
std::uint64_t default_f_samples(int k_total);

// Integral of one partition under the given variant; k1,k2 >= 1.
IntegralEstimate estimate_f(const Partition& pi, FVariant variant, int k1, int k2,
                            double lambda, std::uint64_t samples, std::uint64_t seed);

// Equal-orientation integrand (all positions keep sign +1) used by the
// non-symmetric family; valid for pair partitions whose cross pairs all fall
// in one parity class.
IntegralEstimate estimate_f_equal_offsets(const Partition& pi, int k1, int k2,
                                          double lambda, std::uint64_t samples,
                                          std::uint64_t seed);

// Moment limits: M_r over all pair partitions of {1..2r}; the non-symmetric
// variant restricts to different-parity pairs. 1 <= r <= 8.
IntegralEstimate estimate_M(int r, double lambda, std::uint64_t samples,
                            std::uint64_t seed, const ThreadPool* pool = nullptr);
IntegralEstimate estimate_M_nonsym(int r, double lambda, std::uint64_t samples,
                                   std::uint64_t seed, const ThreadPool* pool = nullptr);

// Covariance prediction with family breakdown. pair/quad sums are reported
// before the fourth-moment weight is applied; estimate.value =
// pair_sum + kappa_weight * quad_sum.
struct CovPrediction {
  IntegralEstimate estimate;
  double pair_sum = 0.0, quad_sum = 0.0;
  double pair_se2 = 0.0, quad_se2 = 0.0;
  std::uint64_t pair_terms = 0, quad_terms = 0;
  double kappa_weight = 0.0;
};

CovPrediction predict_cov(MatrixKind kind, int k1, int k2, double lambda,
                          double kappa, std::uint64_t samples, std::uint64_t seed,
                          const ThreadPool* pool = nullptr);

IntegralEstimate predict_cov_sym(int k1, int k2, double lambda, double kappa,
                                 std::uint64_t samples, std::uint64_t seed,
                                 const ThreadPool* pool = nullptr);
IntegralEstimate predict_cov_nonsym(int k1, int k2, double lambda, double kappa,
                                    std::uint64_t samples, std::uint64_t seed,
                                    const ThreadPool* pool = nullptr);
IntegralEstimate predict_cov_hermitian(int k1, int k2, double lambda, double kappa_c,
                                       std::uint64_t samples, std::uint64_t seed,
                                       const ThreadPool* pool = nullptr);

// Variance of w_Q for Q(x) = sum_j coeffs[j-1] x^j (coeffs[0] multiplies x).
// Each distinct order pair is estimated once and enters the standard error
// with its aggregated coefficient.
IntegralEstimate predict_var_Q(MatrixKind kind, const std::vector<double>& coeffs,
                               double lambda, double kappa, std::uint64_t samples,
                               std::uint64_t seed, const ThreadPool* pool = nullptr);

// Process covariance Cov(w_{k1}(t1), w_{k2}(t2)) for the Brownian-coefficient
// flow (Gaussian entry families). Symmetric in its two (k,t) arguments.
IntegralEstimate predict_cov_process(MatrixKind kind, int k1, int k2, double t1,
                                     double t2, double lambda, std::uint64_t samples,
                                     std::uint64_t seed, const ThreadPool* pool = nullptr);

}  // namespace leslab
