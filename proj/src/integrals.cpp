#include "leslab/integrals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

#include "leslab/rng.hpp"

namespace leslab {

namespace {

constexpr std::uint64_t kMaxSamplesPerEstimate = 1'000'000'000ULL;
constexpr std::uint64_t kMaxFamilyWork = 4'000'000'000ULL;

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void check_sample_budget(std::uint64_t samples) {
  if (samples > kMaxSamplesPerEstimate)
    throw std::invalid_argument(
        "budget exceeded: samples per integral estimate capped at " +
        std::to_string(kMaxSamplesPerEstimate));
}

void check_family_budget(std::uint64_t members, std::uint64_t samples) {
  if (members > 0 && samples > kMaxFamilyWork / members)
    throw std::invalid_argument(
        "budget exceeded: total family Monte-Carlo work capped at " +
        std::to_string(kMaxFamilyWork) + " samples");
}

// Compensated accumulator; used so family sums are independent of how members
// were scheduled across threads.
struct Kahan {
  double sum = 0.0, c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

enum class SignConvention { variant, equal };

Partition canonical_blocks(const Partition& pi) {
  Partition out = pi;
  std::sort(out.begin(), out.end(),
            [](const Block& a, const Block& b) { return a[0] < b[0]; });
  return out;
}

constexpr int kMaxBlocks = kMaxPartitionElements / 2;

struct McPlan {
  int m = 0, split = 0;
  bool two_traces = true;
  int n_blocks = 0;
  int elim = -1;
  double elim_coef = 1.0;
  double volume = 1.0;
  std::array<double, kMaxBlocks> lo{}, hi{};
  std::array<std::pair<int, double>, kMaxBlocks> delta{};
  int n_delta = 0;
  std::array<int, kMaxPartitionElements + 1> pos_block{};
  std::array<double, kMaxPartitionElements + 1> pos_weight{};
  std::array<double, kMaxPartitionElements + 1> pos_ub{};
};

// Builds the sampling plan of one integrand: per-block domains from the
// effective orientation signs, the walk weights and bounds, and (for the
// trace-joining integrands) the closure constraint that eliminates the cross
// pair holding the smallest first-trace element.
McPlan build_plan(const Partition& pi, FVariant variant, SignConvention conv,
                  int k1, int k2, double lambda) {
  const int m = 2 * (k1 + k2);
  validate_partition(pi, m);
  const bool is_I = (variant == FVariant::I_minus || variant == FVariant::I_plus);
  const bool is_plus = (variant == FVariant::I_plus || variant == FVariant::II_plus);
  const int split = 2 * k1;

  int quads = 0;
  for (const auto& b : pi) {
    if (b.size() == 4) {
      ++quads;
      require(side1_count(b, split) == 2,
              "partition/variant mismatch: quad must take two elements per side");
    }
  }
  if (is_I) {
    require(quads == 0,
            "partition/variant mismatch: pair integrand given a quad block");
    require(k2 == 0 || cross_pair_count(pi, split) >= 1,
            "partition/variant mismatch: trace-joining integrand needs a cross pair");
  } else {
    require(quads == 1,
            "partition/variant mismatch: one-quad integrand needs exactly one quad");
    for (const auto& b : pi)
      require(b.size() == 4 || !is_cross_pair(b, split),
              "partition/variant mismatch: one-quad integrand allows only within-side pairs");
  }
  if (conv == SignConvention::equal)
    require(cross_class(pi, split) != CrossClass::mixed,
            "equal-orientation integrand undefined for mixed-parity cross pairs");

  const std::vector<int> sigma = base_signs(pi, m);
  std::vector<double> sig_eff(static_cast<std::size_t>(m) + 1, 1.0);
  for (int i = 1; i <= m; ++i) {
    if (conv == SignConvention::equal) continue;
    double s = static_cast<double>(sigma[i]);
    if (is_plus && i > split) s = -s;
    sig_eff[i] = s;
  }

  McPlan plan;
  plan.m = m;
  plan.split = split;
  plan.two_traces = (k2 > 0);
  plan.n_blocks = static_cast<int>(pi.size());
  const double mcap = std::min(lambda, 1.0);
  for (int b = 0; b < plan.n_blocks; ++b) {
    bool equal_signs = true;
    for (int x : pi[b]) equal_signs = equal_signs && (sig_eff[x] == sig_eff[pi[b][0]]);
    plan.lo[b] = equal_signs ? -lambda : -mcap;
    plan.hi[b] = equal_signs ? 1.0 : mcap;
    for (int x : pi[b]) plan.pos_block[x] = b;
  }
  for (int i = 1; i <= m; ++i) {
    plan.pos_weight[i] = ((i & 1) ? -1.0 : 1.0) * sig_eff[i];
    const int pos = (i <= split) ? i : i - split;
    plan.pos_ub[i] = (pos & 1) ? lambda : 1.0;
  }

  std::array<double, kMaxBlocks> coef{};
  for (int b = 0; b < plan.n_blocks; ++b) {
    double c = 0.0;
    for (int x : pi[b])
      if (x <= split) c += ((x & 1) ? -1.0 : 1.0) * sig_eff[x];
    coef[b] = c;
  }
  if (is_I && k2 > 0) {
    int elim = -1, best = m + 1;
    for (int b = 0; b < plan.n_blocks; ++b) {
      if (coef[b] == 0.0) continue;
      int u = m + 1;
      for (int x : pi[b])
        if (x <= split) u = std::min(u, x);
      if (u < best) {
        best = u;
        elim = b;
      }
    }
    plan.elim = elim;
    plan.elim_coef = coef[elim];
    for (int b = 0; b < plan.n_blocks; ++b)
      if (b != elim && coef[b] != 0.0) plan.delta[plan.n_delta++] = {b, coef[b]};
  } else {
    for (int b = 0; b < plan.n_blocks; ++b)
      if (coef[b] != 0.0)
        throw std::logic_error("trace closure coefficient unexpectedly nonzero");
  }

  plan.volume = 1.0;
  for (int b = 0; b < plan.n_blocks; ++b)
    if (b != plan.elim) plan.volume *= (plan.hi[b] - plan.lo[b]);
  return plan;
}

// Content key of one integral, taken over the compiled plan. Two call paths
// that produce the same integrand draw the same stream for a given caller
// seed, which makes shared estimates bit-identical across call sites.
std::uint64_t plan_key(const McPlan& p) {
  std::vector<unsigned char> bytes;
  bytes.reserve(64 + 24 * static_cast<std::size_t>(p.n_blocks));
  auto push_u64 = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<unsigned char>(v >> (8 * i)));
  };
  auto push_double = [&](double d) {
    std::uint64_t v;
    std::memcpy(&v, &d, sizeof(v));
    push_u64(v);
  };
  push_u64(static_cast<std::uint64_t>(p.m));
  push_u64(static_cast<std::uint64_t>(p.split));
  push_u64(p.two_traces ? 1 : 0);
  push_u64(static_cast<std::uint64_t>(p.n_blocks));
  push_u64(static_cast<std::uint64_t>(p.elim + 1));
  push_double(p.elim_coef);
  for (int b = 0; b < p.n_blocks; ++b) {
    push_double(p.lo[b]);
    push_double(p.hi[b]);
  }
  push_u64(static_cast<std::uint64_t>(p.n_delta));
  for (int d = 0; d < p.n_delta; ++d) {
    push_u64(static_cast<std::uint64_t>(p.delta[d].first));
    push_double(p.delta[d].second);
  }
  for (int i = 1; i <= p.m; ++i) {
    push_u64(static_cast<std::uint64_t>(p.pos_block[i]));
    push_double(p.pos_weight[i]);
    push_double(p.pos_ub[i]);
  }
  return fnv1a64(bytes.data(), bytes.size());
}

IntegralEstimate run_mc(const McPlan& p, std::uint64_t samples, std::uint64_t seed) {
  Rng rng(seed, 0);
  std::uint64_t hits = 0;
  std::array<double, kMaxBlocks> x{};
  for (std::uint64_t s = 0; s < samples; ++s) {
    const double x0 = rng.uniform();
    const double y0 = p.two_traces ? rng.uniform() : 0.0;
    for (int b = 0; b < p.n_blocks; ++b)
      if (b != p.elim) x[b] = rng.uniform(p.lo[b], p.hi[b]);
    if (p.elim >= 0) {
      double lin = 0.0;
      for (int d = 0; d < p.n_delta; ++d)
        lin += p.delta[d].second * x[p.delta[d].first];
      const double xe = -lin / p.elim_coef;
      if (xe < p.lo[p.elim] || xe > p.hi[p.elim]) continue;
      x[p.elim] = xe;
    }
    double acc = 0.0;
    bool ok = true;
    for (int i = 1; i <= p.m; ++i) {
      if (i == p.split + 1) acc = 0.0;
      acc += p.pos_weight[i] * x[p.pos_block[i]];
      const double v = (i <= p.split ? x0 : y0) + acc;
      if (v < 0.0 || v > p.pos_ub[i]) {
        ok = false;
        break;
      }
    }
    hits += ok;
  }
  const double phat = static_cast<double>(hits) / static_cast<double>(samples);
  IntegralEstimate est;
  est.value = p.volume * phat;
  est.std_error =
      p.volume * std::sqrt(std::max(phat * (1.0 - phat), 0.0) /
                           static_cast<double>(samples));
  est.samples = samples;
  return est;
}

struct EvalJob {
  Partition pi;
  FVariant variant = FVariant::I_minus;
  SignConvention conv = SignConvention::variant;
  int k1 = 0, k2 = 0;
  bool quad = false;
  int term = 0;  // process r-term index; 0 for static families
};

void eval_jobs(const std::vector<EvalJob>& jobs, double lambda,
               std::uint64_t samples, std::uint64_t seed,
               std::vector<IntegralEstimate>& out, const ThreadPool* pool) {
  out.assign(jobs.size(), IntegralEstimate{});
  auto body = [&](std::size_t i) {
    const EvalJob& j = jobs[i];
    const McPlan plan = build_plan(j.pi, j.variant, j.conv, j.k1, j.k2, lambda);
    out[i] = run_mc(plan, samples, mix_keys(seed, plan_key(plan)));
  };
  if (pool)
    pool->parallel_for(jobs.size(), body);
  else
    for (std::size_t i = 0; i < jobs.size(); ++i) body(i);
}

void common_cov_checks(int k1, int k2, double lambda, double kappa) {
  require(k1 >= 1 && k2 >= 1, "covariance orders must satisfy k1, k2 >= 1");
  require(2 * (k1 + k2) <= kMaxPartitionElements,
          "budget exceeded: partition ground set capped at " +
              std::to_string(kMaxPartitionElements) + " elements");
  require(lambda > 0.0, "aspect ratio must be positive");
  require(kappa >= 1.0, "fourth absolute moment must be >= 1");
}

// Pair-family membership for one kind; side split at 2*k1.
bool pair_family_member(MatrixKind kind, const Partition& p, int split) {
  const int crosses = cross_pair_count(p, split);
  if (crosses < 4) return false;
  if (kind == MatrixKind::non_symmetric) {
    if (!within_pairs_dp(p, split)) return false;
    const CrossClass cc = cross_class(p, split);
    return cc == CrossClass::all_dp || cc == CrossClass::all_sp;
  }
  return true;
}

bool quad_family_member(MatrixKind kind, const Partition& p) {
  if (kind != MatrixKind::non_symmetric) return true;
  for (const auto& b : p) {
    if (b.size() == 4) {
      if (!quad_is_dp(b)) return false;
    } else if (!is_dp_pair(b[0], b[1])) {
      return false;
    }
  }
  return true;
}

void push_pair_jobs(MatrixKind kind, std::vector<EvalJob>& jobs, const Partition& p,
                    int k1, int k2, int term) {
  if (kind == MatrixKind::symmetric) {
    jobs.push_back({p, FVariant::I_minus, SignConvention::variant, k1, k2, false, term});
    jobs.push_back({p, FVariant::I_plus, SignConvention::variant, k1, k2, false, term});
  } else if (kind == MatrixKind::non_symmetric) {
    jobs.push_back({p, FVariant::I_minus, SignConvention::equal, k1, k2, false, term});
  } else {
    jobs.push_back({p, FVariant::I_minus, SignConvention::variant, k1, k2, false, term});
  }
}

void push_quad_jobs(MatrixKind kind, std::vector<EvalJob>& jobs, const Partition& p,
                    int k1, int k2, int term) {
  if (kind == MatrixKind::non_symmetric) {
    jobs.push_back({p, FVariant::II_minus, SignConvention::variant, k1, k2, true, term});
  } else {
    jobs.push_back({p, FVariant::II_minus, SignConvention::variant, k1, k2, true, term});
    jobs.push_back({p, FVariant::II_plus, SignConvention::variant, k1, k2, true, term});
  }
}

double binom(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

IntegralEstimate moment_family(int r, double lambda, bool dp_only,
                               std::uint64_t samples, std::uint64_t seed,
                               const ThreadPool* pool) {
  require(r >= 1 && r <= 8, "budget exceeded: moment order capped at 8");
  require(lambda > 0.0, "aspect ratio must be positive");
  if (samples == 0) samples = default_f_samples(r);
  check_sample_budget(samples);
  const std::uint64_t members =
      dp_only ? dp_pair_count(r) : pair_partition_count(2 * r);
  check_family_budget(members, samples);

  // Large families are streamed serially; small ones are materialized so the
  // pool can spread members over threads. Accumulation order is canonical in
  // both paths.
  if (members > 65536) {
    Kahan sum;
    double se2 = 0.0;
    for_each_pair_partition(2 * r, [&](const Partition& p) {
      if (dp_only && !all_pairs_dp(p)) return;
      const McPlan plan =
          build_plan(p, FVariant::I_minus, SignConvention::variant, r, 0, lambda);
      const IntegralEstimate v = run_mc(plan, samples, mix_keys(seed, plan_key(plan)));
      sum.add(v.value);
      se2 += v.std_error * v.std_error;
    });
    return {sum.sum, std::sqrt(se2), samples};
  }

  std::vector<EvalJob> jobs;
  jobs.reserve(members);
  for_each_pair_partition(2 * r, [&](const Partition& p) {
    if (dp_only && !all_pairs_dp(p)) return;
    jobs.push_back({p, FVariant::I_minus, SignConvention::variant, r, 0, false, 0});
  });

  std::vector<IntegralEstimate> vals;
  eval_jobs(jobs, lambda, samples, seed, vals, pool);
  Kahan sum;
  double se2 = 0.0;
  for (const auto& v : vals) {
    sum.add(v.value);
    se2 += v.std_error * v.std_error;
  }
  return {sum.sum, std::sqrt(se2), samples};
}

}  // namespace

std::uint64_t default_f_samples(int k_total) {
  return k_total <= 3 ? 1'000'000ULL : 100'000ULL;
}

IntegralEstimate estimate_f(const Partition& pi, FVariant variant, int k1, int k2,
                            double lambda, std::uint64_t samples, std::uint64_t seed) {
  require(k1 >= 1 && k2 >= 1, "estimate_f needs k1, k2 >= 1");
  require(lambda > 0.0, "aspect ratio must be positive");
  if (samples == 0) samples = default_f_samples(k1 + k2);
  check_sample_budget(samples);
  const Partition p = canonical_blocks(pi);
  const McPlan plan = build_plan(p, variant, SignConvention::variant, k1, k2, lambda);
  return run_mc(plan, samples, mix_keys(seed, plan_key(plan)));
}

IntegralEstimate estimate_f_equal_offsets(const Partition& pi, int k1, int k2,
                                          double lambda, std::uint64_t samples,
                                          std::uint64_t seed) {
  require(k1 >= 1 && k2 >= 1, "estimate_f_equal_offsets needs k1, k2 >= 1");
  require(lambda > 0.0, "aspect ratio must be positive");
  if (samples == 0) samples = default_f_samples(k1 + k2);
  check_sample_budget(samples);
  const Partition p = canonical_blocks(pi);
  const McPlan plan =
      build_plan(p, FVariant::I_minus, SignConvention::equal, k1, k2, lambda);
  return run_mc(plan, samples, mix_keys(seed, plan_key(plan)));
}

IntegralEstimate estimate_M(int r, double lambda, std::uint64_t samples,
                            std::uint64_t seed, const ThreadPool* pool) {
  return moment_family(r, lambda, false, samples, seed, pool);
}

IntegralEstimate estimate_M_nonsym(int r, double lambda, std::uint64_t samples,
                                   std::uint64_t seed, const ThreadPool* pool) {
  return moment_family(r, lambda, true, samples, seed, pool);
}

CovPrediction predict_cov(MatrixKind kind, int k1, int k2, double lambda,
                          double kappa, std::uint64_t samples, std::uint64_t seed,
                          const ThreadPool* pool) {
  common_cov_checks(k1, k2, lambda, kappa);
  if (samples == 0) samples = default_f_samples(k1 + k2);
  check_sample_budget(samples);
  const int m = 2 * (k1 + k2), split = 2 * k1;
  // Conservative pre-check before any enumeration work.
  check_family_budget(2 * pair_partition_count(m) + 2 * p24_count(k1, k2), samples);

  std::vector<EvalJob> jobs;
  for_each_pair_partition(m, [&](const Partition& p) {
    if (pair_family_member(kind, p, split)) push_pair_jobs(kind, jobs, p, k1, k2, 0);
  });
  for_each_p24(k1, k2, [&](const Partition& p) {
    if (quad_family_member(kind, p)) push_quad_jobs(kind, jobs, p, k1, k2, 0);
  });

  std::vector<IntegralEstimate> vals;
  eval_jobs(jobs, lambda, samples, seed, vals, pool);

  CovPrediction out;
  out.kappa_weight = kappa - 1.0;
  Kahan pair_sum, quad_sum;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (jobs[i].quad) {
      quad_sum.add(vals[i].value);
      out.quad_se2 += vals[i].std_error * vals[i].std_error;
      ++out.quad_terms;
    } else {
      pair_sum.add(vals[i].value);
      out.pair_se2 += vals[i].std_error * vals[i].std_error;
      ++out.pair_terms;
    }
  }
  out.pair_sum = pair_sum.sum;
  out.quad_sum = quad_sum.sum;
  out.estimate.value = out.pair_sum + out.kappa_weight * out.quad_sum;
  out.estimate.std_error =
      std::sqrt(out.pair_se2 + out.kappa_weight * out.kappa_weight * out.quad_se2);
  out.estimate.samples = samples;
  return out;
}

IntegralEstimate predict_cov_sym(int k1, int k2, double lambda, double kappa,
                                 std::uint64_t samples, std::uint64_t seed,
                                 const ThreadPool* pool) {
  return predict_cov(MatrixKind::symmetric, k1, k2, lambda, kappa, samples, seed, pool)
      .estimate;
}

IntegralEstimate predict_cov_nonsym(int k1, int k2, double lambda, double kappa,
                                    std::uint64_t samples, std::uint64_t seed,
                                    const ThreadPool* pool) {
  return predict_cov(MatrixKind::non_symmetric, k1, k2, lambda, kappa, samples, seed,
                     pool)
      .estimate;
}

IntegralEstimate predict_cov_hermitian(int k1, int k2, double lambda, double kappa_c,
                                       std::uint64_t samples, std::uint64_t seed,
                                       const ThreadPool* pool) {
  return predict_cov(MatrixKind::hermitian, k1, k2, lambda, kappa_c, samples, seed,
                     pool)
      .estimate;
}

IntegralEstimate predict_var_Q(MatrixKind kind, const std::vector<double>& coeffs,
                               double lambda, double kappa, std::uint64_t samples,
                               std::uint64_t seed, const ThreadPool* pool) {
  require(!coeffs.empty(), "polynomial needs at least one coefficient");
  const int K = static_cast<int>(coeffs.size());
  common_cov_checks(1, 1, lambda, kappa);
  require(4 * K <= kMaxPartitionElements,
          "budget exceeded: polynomial degree capped at " +
              std::to_string(kMaxPartitionElements / 4));

  Kahan total;
  double se2 = 0.0;
  std::uint64_t used_samples = samples;
  for (int j = 1; j <= K; ++j) {
    for (int l = j; l <= K; ++l) {
      const double mult =
          (j == l) ? coeffs[j - 1] * coeffs[j - 1] : 2.0 * coeffs[j - 1] * coeffs[l - 1];
      if (mult == 0.0) continue;
      const CovPrediction c = predict_cov(kind, j, l, lambda, kappa, samples, seed, pool);
      used_samples = c.estimate.samples;
      total.add(mult * c.estimate.value);
      se2 += mult * mult * c.estimate.std_error * c.estimate.std_error;
    }
  }
  return {total.sum, std::sqrt(se2), used_samples};
}

IntegralEstimate predict_cov_process(MatrixKind kind, int k1, int k2, double t1,
                                     double t2, double lambda, std::uint64_t samples,
                                     std::uint64_t seed, const ThreadPool* pool) {
  require(t1 >= 0.0 && t2 >= 0.0, "process times must be nonnegative");
  if (t1 > t2) {
    std::swap(t1, t2);
    std::swap(k1, k2);
  }
  common_cov_checks(k1, k2, lambda, 3.0);
  if (samples == 0) samples = default_f_samples(k1 + k2);
  check_sample_budget(samples);
  const int m = 2 * (k1 + k2), split = 2 * k1;
  // Brownian coefficients are Gaussian: the quad weight is fixed by the
  // fourth moment of the entry flow (2 for real increments, 1 for complex).
  const double quad_weight = (kind == MatrixKind::hermitian) ? 1.0 : 2.0;

  // Conservative pre-check before any enumeration work.
  {
    std::uint64_t bound = 0;
    for (int r = 1; r <= k2; ++r)
      bound += 2 * (pair_partition_count(2 * k1 + 2 * r) + p24_count(k1, r)) *
               pair_partition_count(2 * (k2 - r));
    check_family_budget(bound, samples);
  }

  std::vector<EvalJob> jobs;
  std::vector<double> term_coef(static_cast<std::size_t>(k2) + 1, 0.0);
  for (int r = 1; r <= k2; ++r) {
    const double coef = binom(2 * k2, 2 * r) * std::pow(t1, k1 + r) *
                        std::pow(t2 - t1, k2 - r);
    term_coef[r] = coef;
    if (coef == 0.0) continue;
    const int ground1 = 2 * k1 + 2 * r;
    std::vector<int> rest;
    for (int x = ground1 + 1; x <= m; ++x) rest.push_back(x);

    for_each_pair_partition(ground1, [&](const Partition& p1) {
      if (!pair_family_member(kind, p1, split)) return;
      for_each_pair_partition_of(rest, [&](const Partition& p2) {
        if (kind == MatrixKind::non_symmetric && !all_pairs_dp(p2)) return;
        Partition full = p1;
        full.insert(full.end(), p2.begin(), p2.end());
        push_pair_jobs(kind, jobs, canonical_blocks(full), k1, k2, r);
      });
    });
    for_each_p24(k1, r, [&](const Partition& p1) {
      if (!quad_family_member(kind, p1)) return;
      for_each_pair_partition_of(rest, [&](const Partition& p2) {
        if (kind == MatrixKind::non_symmetric && !all_pairs_dp(p2)) return;
        Partition full = p1;
        full.insert(full.end(), p2.begin(), p2.end());
        push_quad_jobs(kind, jobs, canonical_blocks(full), k1, k2, r);
      });
    });
  }
  check_family_budget(jobs.size(), samples);

  std::vector<IntegralEstimate> vals;
  eval_jobs(jobs, lambda, samples, seed, vals, pool);

  double total = 0.0, se2 = 0.0;
  for (int r = 1; r <= k2; ++r) {
    if (term_coef[r] == 0.0) continue;
    Kahan pair_sum, quad_sum;
    double pair_se2 = 0.0, quad_se2 = 0.0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (jobs[i].term != r) continue;
      if (jobs[i].quad) {
        quad_sum.add(vals[i].value);
        quad_se2 += vals[i].std_error * vals[i].std_error;
      } else {
        pair_sum.add(vals[i].value);
        pair_se2 += vals[i].std_error * vals[i].std_error;
      }
    }
    const double R = pair_sum.sum + quad_weight * quad_sum.sum;
    total += term_coef[r] * R;
    se2 += term_coef[r] * term_coef[r] *
           (pair_se2 + quad_weight * quad_weight * quad_se2);
  }
  return {total, std::sqrt(se2), samples};
}

}  // namespace leslab
