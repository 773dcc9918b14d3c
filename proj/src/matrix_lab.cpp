#include "leslab/matrix_lab.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <type_traits>

namespace leslab {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

double real_checked(double v) { return v; }

double real_checked(std::complex<double> v) {
  if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v.real()))) {
    throw std::runtime_error("trace has a non-negligible imaginary residue");
  }
  return v.real();
}

// Gram matrix of the smaller side: T T^* when n <= p, else T^* T.  Both have
// the same nonzero spectrum, so trace powers agree for every k >= 1.
template <typename Mat>
Mat smaller_gram(const Mat& T) {
  if (T.rows() <= T.cols()) {
    Mat S = Mat::Zero(T.rows(), T.rows());
    S.template selfadjointView<Eigen::Lower>().rankUpdate(T);
    return S.template selfadjointView<Eigen::Lower>();
  }
  Mat S = Mat::Zero(T.cols(), T.cols());
  S.template selfadjointView<Eigen::Lower>().rankUpdate(T.adjoint());
  return S.template selfadjointView<Eigen::Lower>();
}

template <typename Mat>
std::vector<double> gram_traces(const Mat& T, int kmax) {
  if (kmax == 1) return {T.squaredNorm()};
  const Mat S = smaller_gram(T);
  std::vector<double> out(static_cast<std::size_t>(kmax));
  if (kmax <= 4) {
    out[0] = real_checked(S.trace());
    out[1] = S.squaredNorm();  // ||S||_F^2 = Tr S^2 for self-adjoint S
    if (kmax >= 3) {
      const Mat S2 = S * S;
      out[2] = real_checked(S2.cwiseProduct(S.conjugate()).sum());
      if (kmax >= 4) out[3] = S2.squaredNorm();
    }
    return out;
  }
  Mat cur = S;
  out[0] = real_checked(cur.trace());
  for (int k = 2; k <= kmax; ++k) {
    cur = cur * S;
    out[static_cast<std::size_t>(k - 1)] = real_checked(cur.trace());
  }
  return out;
}

template <typename Mat>
Eigen::VectorXd singular_values_of(const Mat& T) {
  if constexpr (std::is_same_v<typename Mat::Scalar, double>) {
    if (std::min(T.rows(), T.cols()) > 32) {
      return Eigen::BDCSVD<Mat>(T).singularValues();
    }
  }
  return Eigen::JacobiSVD<Mat>(T).singularValues();
}

template <typename Mat>
std::vector<double> singular_traces(const Mat& T, int kmax) {
  const Eigen::VectorXd sv = singular_values_of(T);
  std::vector<double> out(static_cast<std::size_t>(kmax), 0.0);
  for (int k = 1; k <= kmax; ++k) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) s += std::pow(sv[i], 2 * k);
    out[static_cast<std::size_t>(k - 1)] = s;
  }
  return out;
}

void check_trace_args(int kmax) {
  require(kmax >= 1 && kmax <= 12, "trace powers support k in [1, 12]");
}

template <typename Mat>
void check_finite(const Mat& T) {
  if (!T.allFinite()) throw std::runtime_error("matrix has non-finite entries");
}

template <typename Mat>
std::vector<double> trace_powers_impl(const Mat& T, int kmax) {
  check_trace_args(kmax);
  check_finite(T);
  return kmax <= 4 ? gram_traces(T, kmax) : singular_traces(T, kmax);
}

void check_walk_budget(int n, int p, int k) {
  require(k >= 1, "trace formula requires k >= 1");
  const double work = std::pow(static_cast<double>(n + p - 1), 2 * k - 1);
  require(work <= 1e8,
          "budget exceeded: trace-formula enumeration needs (n+p-1)^(2k-1) <= 1e8");
}

// Number of walk anchors i compatible with offsets d: every intermediate
// partial sum must land in the column range [1,p] (odd positions) or the row
// range [1,n] (even positions); the closed walk itself starts in [1,n].
int anchor_count(const std::vector<int>& d, int n, int p) {
  int lo = 1;
  int hi = n;
  int s = 0;
  for (std::size_t q1 = 0; q1 + 1 < d.size(); ++q1) {
    const int q = static_cast<int>(q1) + 1;
    s += (q % 2 == 1) ? -d[q1] : d[q1];
    const int limit = (q % 2 == 1) ? p : n;
    lo = std::max(lo, 1 - s);
    hi = std::min(hi, limit - s);
    if (lo > hi) return 0;
  }
  return hi - lo + 1;
}

// Enumerates all closed offset walks of length 2k: the first 2k-1 offsets
// range over [1-p, n-1], the last is fixed by the alternating-sum closure.
// Calls fn(d, anchor_count) for every walk with at least one valid anchor.
template <typename WalkFn>
void for_each_walk(int n, int p, int k, WalkFn fn) {
  const int m = 2 * k;
  const int range = n + p - 1;
  std::vector<int> idx(static_cast<std::size_t>(m - 1), 0);
  std::vector<int> d(static_cast<std::size_t>(m), 0);
  for (;;) {
    int alt = 0;
    for (int q1 = 0; q1 < m - 1; ++q1) {
      d[static_cast<std::size_t>(q1)] = idx[static_cast<std::size_t>(q1)] + (1 - p);
      alt += ((q1 + 1) % 2 == 1) ? -d[static_cast<std::size_t>(q1)]
                                 : d[static_cast<std::size_t>(q1)];
    }
    const int dlast = -alt;
    if (dlast >= 1 - p && dlast <= n - 1) {
      d[static_cast<std::size_t>(m - 1)] = dlast;
      const int count = anchor_count(d, n, p);
      if (count > 0) fn(d, count);
    }
    int pos = 0;
    while (pos < m - 1 && ++idx[static_cast<std::size_t>(pos)] == range) {
      idx[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == m - 1) break;
  }
}

double factorial_of(int m) {
  double v = 1.0;
  for (int i = 2; i <= m; ++i) v *= i;
  return v;
}

// E[a^m] for the real unit-variance entry families.
double real_moment(EntryDist entries, int m) {
  if (m % 2 == 1) return 0.0;
  switch (entries) {
    case EntryDist::rademacher:
      return 1.0;
    case EntryDist::gaussian: {
      double v = 1.0;
      for (int i = m - 1; i >= 1; i -= 2) v *= i;
      return v;
    }
    case EntryDist::uniform_scaled:
      return std::pow(3.0, m / 2) / (m + 1);
    case EntryDist::complex_gaussian:
      break;
  }
  throw std::logic_error("real moment requested for a complex entry family");
}

const char* kReplicateMin = "sampling requires at least 2 replicates";

// Subtracts the cross-replicate mean, applies the scale, then removes the
// leftover rounding of the mean so the result averages to ~1 ulp of zero.
void center_and_scale(std::vector<double>& v, double scale) {
  Kahan acc;
  for (const double x : v) acc.add(x);
  const double mean = acc.sum / static_cast<double>(v.size());
  for (double& x : v) x = (x - mean) * scale;
  Kahan acc2;
  for (const double x : v) acc2.add(x);
  const double residual = acc2.sum / static_cast<double>(v.size());
  for (double& x : v) x -= residual;
}

// Tr TT' directly from the entry sequence: sum_d N_d |a_d|^2 / n.
double trace1_from_offsets(const OffsetSequence& a) {
  double s = 0.0;
  for (int d = 1 - a.p; d <= a.n - 1; ++d) {
    const int i = a.index_of(d);
    const double mag2 =
        a.re[static_cast<std::size_t>(i)] * a.re[static_cast<std::size_t>(i)] +
        (a.im.empty() ? 0.0
                      : a.im[static_cast<std::size_t>(i)] * a.im[static_cast<std::size_t>(i)]);
    s += offset_multiplicity(a.n, a.p, d) * mag2;
  }
  return s / a.n;
}

// Raw [Tr (TT')^k, k=1..kmax] for one fresh draw.  kmax == 1 never builds the
// matrix; the path choice depends only on (spec, kmax), keeping replicate
// values bitwise deterministic.
std::vector<double> replicate_trace_powers(const EnsembleSpec& spec, int kmax, Rng& rng) {
  const OffsetSequence a = draw_offsets(spec, rng);
  if (kmax == 1) return {trace1_from_offsets(a)};
  if (spec.complex_entries()) return trace_powers(build_matrix_complex(a), kmax);
  return trace_powers(build_matrix_real(a), kmax);
}

void run_replicates(int replicates, const ThreadPool* pool,
                    const std::function<void(std::size_t)>& body) {
  if (pool != nullptr) {
    pool->parallel_for(static_cast<std::size_t>(replicates), body);
  } else {
    for (int r = 0; r < replicates; ++r) body(static_cast<std::size_t>(r));
  }
}

}  // namespace

void write_samples_csv(std::ostream& os, const std::vector<FluctuationSample>& samples) {
  os << "replicate,k_or_Q,value,time\n";
  char buf[64];
  for (const auto& s : samples) {
    for (std::size_t r = 0; r < s.values.size(); ++r) {
      std::snprintf(buf, sizeof(buf), "%.17g", s.values[r]);
      os << r << ',' << s.label << ',' << buf << ',';
      if (s.has_time()) {
        std::snprintf(buf, sizeof(buf), "%.17g", s.time);
        os << buf;
      }
      os << '\n';
    }
  }
}

Eigen::MatrixXd build_matrix_real(const OffsetSequence& offsets) {
  require(!offsets.complex(), "complex entry sequence passed to the real matrix builder");
  const double scale = 1.0 / std::sqrt(static_cast<double>(offsets.n));
  Eigen::MatrixXd T(offsets.n, offsets.p);
  for (int j = 0; j < offsets.p; ++j) {
    for (int i = 0; i < offsets.n; ++i) {
      T(i, j) = offsets.real_at(i - j) * scale;
    }
  }
  return T;
}

Eigen::MatrixXcd build_matrix_complex(const OffsetSequence& offsets) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(offsets.n));
  Eigen::MatrixXcd T(offsets.n, offsets.p);
  for (int j = 0; j < offsets.p; ++j) {
    for (int i = 0; i < offsets.n; ++i) {
      T(i, j) = offsets.cplx_at(i - j) * scale;
    }
  }
  return T;
}

Eigen::MatrixXd build_matrix(const EnsembleSpec& spec, std::uint64_t seed) {
  spec.validate();
  require(spec.kind != MatrixKind::hermitian,
          "hermitian ensembles build complex matrices; use build_matrix_complex");
  Rng rng(seed, 0);
  return build_matrix_real(draw_offsets(spec, rng));
}

Eigen::MatrixXcd build_matrix_complex(const EnsembleSpec& spec, std::uint64_t seed) {
  spec.validate();
  Rng rng(seed, 0);
  return build_matrix_complex(draw_offsets(spec, rng));
}

std::vector<double> trace_powers(const Eigen::MatrixXd& T, int kmax) {
  return trace_powers_impl(T, kmax);
}

std::vector<double> trace_powers(const Eigen::MatrixXcd& T, int kmax) {
  return trace_powers_impl(T, kmax);
}

std::vector<double> trace_powers_gram(const Eigen::MatrixXd& T, int kmax) {
  check_trace_args(kmax);
  check_finite(T);
  return gram_traces(T, kmax);
}

std::vector<double> trace_powers_gram(const Eigen::MatrixXcd& T, int kmax) {
  check_trace_args(kmax);
  check_finite(T);
  return gram_traces(T, kmax);
}

std::vector<double> trace_powers_singular(const Eigen::MatrixXd& T, int kmax) {
  check_trace_args(kmax);
  check_finite(T);
  return singular_traces(T, kmax);
}

std::vector<double> trace_powers_singular(const Eigen::MatrixXcd& T, int kmax) {
  check_trace_args(kmax);
  check_finite(T);
  return singular_traces(T, kmax);
}

double trace_formula_oracle(const OffsetSequence& offsets, int k) {
  require(offsets.n >= 1 && offsets.p >= 1 &&
              static_cast<int>(offsets.re.size()) == offsets.n + offsets.p - 1,
          "offset sequence shape does not match its n and p");
  check_walk_budget(offsets.n, offsets.p, k);
  Kahan re;
  Kahan im;
  for_each_walk(offsets.n, offsets.p, k, [&](const std::vector<int>& d, int count) {
    std::complex<double> prod(1.0, 0.0);
    for (std::size_t q1 = 0; q1 < d.size(); ++q1) {
      std::complex<double> v = offsets.cplx_at(d[q1]);
      if ((q1 + 1) % 2 == 0) v = std::conj(v);
      prod *= v;
      if (prod.real() == 0.0 && prod.imag() == 0.0) return;
    }
    re.add(count * prod.real());
    im.add(count * prod.imag());
  });
  const double scale = std::pow(static_cast<double>(offsets.n), -k);
  return real_checked(std::complex<double>(re.sum * scale, im.sum * scale));
}

double expected_trace_power(const EnsembleSpec& spec, int k) {
  spec.validate();
  check_walk_budget(spec.n, spec.p, k);
  const bool herm = spec.kind == MatrixKind::hermitian;
  Kahan total;
  for_each_walk(spec.n, spec.p, k, [&](const std::vector<int>& d, int count) {
    // Tally occurrences per underlying random variable.  Variables are keyed
    // by |d| for reflected kinds and by d for the non-symmetric kind; the
    // hermitian kind tracks conjugated vs plain occurrences, where a factor
    // is conjugated iff (d < 0) xor (position even).
    int keys[16];
    int plain[16];
    int conj[16];
    int nv = 0;
    for (std::size_t q1 = 0; q1 < d.size(); ++q1) {
      const int dd = d[q1];
      if (dd == 0 && spec.diagonal == DiagonalMode::zero) return;
      const int key = spec.kind == MatrixKind::non_symmetric ? dd : std::abs(dd);
      const bool conj_flag =
          herm && dd != 0 && ((dd < 0) != (((q1 + 1) % 2) == 0));
      int slot = -1;
      for (int t = 0; t < nv; ++t) {
        if (keys[t] == key) {
          slot = t;
          break;
        }
      }
      if (slot < 0) {
        slot = nv++;
        keys[slot] = key;
        plain[slot] = 0;
        conj[slot] = 0;
      }
      ++(conj_flag ? conj : plain)[slot];
    }
    double e = 1.0;
    for (int t = 0; t < nv && e != 0.0; ++t) {
      if (!herm) {
        e *= real_moment(spec.entries, plain[t] + conj[t]);
      } else if (keys[t] == 0) {
        // The hermitian diagonal is a real unit normal.
        e *= real_moment(EntryDist::gaussian, plain[t] + conj[t]);
      } else {
        e *= plain[t] == conj[t] ? factorial_of(plain[t]) : 0.0;
      }
    }
    if (e != 0.0) total.add(count * e);
  });
  return total.sum * std::pow(static_cast<double>(spec.n), -k);
}

std::vector<FluctuationSample> sample_w_multi(const EnsembleSpec& spec,
                                              const std::vector<int>& ks,
                                              int replicates, std::uint64_t seed,
                                              const ThreadPool* pool,
                                              Centering centering) {
  spec.validate();
  require(replicates >= 2, kReplicateMin);
  require(!ks.empty(), "at least one trace power is required");
  int kmax = 0;
  for (const int k : ks) {
    require(k >= 1 && k <= 12, "trace powers support k in [1, 12]");
    kmax = std::max(kmax, k);
  }
  const std::size_t width = ks.size();
  std::vector<double> raw(static_cast<std::size_t>(replicates) * width);
  run_replicates(replicates, pool, [&](std::size_t r) {
    Rng rng(seed, r);
    const std::vector<double> t = replicate_trace_powers(spec, kmax, rng);
    for (std::size_t ki = 0; ki < width; ++ki) {
      raw[r * width + ki] = t[static_cast<std::size_t>(ks[ki] - 1)];
    }
  });

  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.n));
  std::vector<FluctuationSample> out;
  out.reserve(width);
  for (std::size_t ki = 0; ki < width; ++ki) {
    FluctuationSample s;
    s.label = "k=" + std::to_string(ks[ki]);
    s.centering = centering;
    s.spec = spec;
    s.seed = seed;
    s.values.resize(static_cast<std::size_t>(replicates));
    for (std::size_t r = 0; r < s.values.size(); ++r) s.values[r] = raw[r * width + ki];
    if (centering == Centering::oracle_mean) {
      const double mean = expected_trace_power(spec, ks[ki]);
      for (double& v : s.values) v = (v - mean) * scale;
    } else {
      center_and_scale(s.values, scale);
    }
    out.push_back(std::move(s));
  }
  return out;
}

FluctuationSample sample_w(const EnsembleSpec& spec, int k, int replicates,
                           std::uint64_t seed, const ThreadPool* pool,
                           Centering centering) {
  return sample_w_multi(spec, {k}, replicates, seed, pool, centering)[0];
}

FluctuationSample sample_w_poly(const EnsembleSpec& spec,
                                const std::vector<double>& coeffs, int replicates,
                                std::uint64_t seed, const ThreadPool* pool) {
  spec.validate();
  require(replicates >= 2, kReplicateMin);
  require(coeffs.size() <= 12, "polynomial statistics support degree <= 12");
  const int kmax = static_cast<int>(coeffs.size());
  std::vector<double> raw(static_cast<std::size_t>(replicates), 0.0);
  if (kmax > 0) {
    run_replicates(replicates, pool, [&](std::size_t r) {
      Rng rng(seed, r);
      const std::vector<double> t = replicate_trace_powers(spec, kmax, rng);
      double v = 0.0;
      for (std::size_t j = 0; j < coeffs.size(); ++j) v += coeffs[j] * t[j];
      raw[r] = v;
    });
  }
  FluctuationSample s;
  s.label = "Q";
  s.centering = Centering::sample_mean;
  s.spec = spec;
  s.seed = seed;
  s.values = std::move(raw);
  center_and_scale(s.values, 1.0 / std::sqrt(static_cast<double>(spec.n)));
  return s;
}

std::vector<FluctuationSample> sample_w_process(const EnsembleSpec& spec, int k,
                                                const BrownianPathSpec& path,
                                                int replicates, std::uint64_t seed,
                                                const ThreadPool* pool) {
  spec.validate();
  path.validate();
  require(replicates >= 2, kReplicateMin);
  require(k >= 1 && k <= 12, "trace powers support k in [1, 12]");
  const std::size_t nt = path.times.size();
  std::vector<double> raw(static_cast<std::size_t>(replicates) * nt);
  run_replicates(replicates, pool, [&](std::size_t r) {
    Rng rng(seed, r);
    const OffsetPath op = draw_offset_path(spec, path, rng);
    for (std::size_t ti = 0; ti < nt; ++ti) {
      double value = 0.0;
      if (path.times[ti] > 0.0) {
        const OffsetSequence& frame = op.frames[ti];
        if (k == 1) {
          value = trace1_from_offsets(frame);
        } else if (spec.complex_entries()) {
          value = trace_powers(build_matrix_complex(frame), k).back();
        } else {
          value = trace_powers(build_matrix_real(frame), k).back();
        }
      }
      raw[r * nt + ti] = value;
    }
  });

  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.n));
  std::vector<FluctuationSample> out;
  out.reserve(nt);
  for (std::size_t ti = 0; ti < nt; ++ti) {
    FluctuationSample s;
    s.label = "k=" + std::to_string(k);
    s.centering = Centering::sample_mean;
    s.spec = spec;
    s.seed = seed;
    s.time = path.times[ti];
    s.values.resize(static_cast<std::size_t>(replicates));
    for (std::size_t r = 0; r < s.values.size(); ++r) s.values[r] = raw[r * nt + ti];
    center_and_scale(s.values, scale);
    out.push_back(std::move(s));
  }
  return out;
}

FluctuationSample sample_nonzero_diag(const EnsembleSpec& spec, int k,
                                      int replicates, std::uint64_t seed,
                                      const ThreadPool* pool) {
  require(spec.diagonal == DiagonalMode::random,
          "random-diagonal sampling requires diagonal == random");
  return sample_w(spec, k, replicates, seed, pool);
}

DiagSample sample_nonzero_diag_with_a0(const EnsembleSpec& spec, int k,
                                       int replicates, std::uint64_t seed,
                                       const ThreadPool* pool) {
  spec.validate();
  require(spec.diagonal == DiagonalMode::random,
          "random-diagonal sampling requires diagonal == random");
  require(replicates >= 2, kReplicateMin);
  require(k >= 1 && k <= 12, "trace powers support k in [1, 12]");
  std::vector<double> raw(static_cast<std::size_t>(replicates));
  std::vector<double> a0(static_cast<std::size_t>(replicates));
  run_replicates(replicates, pool, [&](std::size_t r) {
    Rng rng(seed, r);
    const OffsetSequence a = draw_offsets(spec, rng);
    a0[r] = a.real_at(0);
    if (k == 1) {
      raw[r] = trace1_from_offsets(a);
    } else if (spec.complex_entries()) {
      raw[r] = trace_powers(build_matrix_complex(a), k).back();
    } else {
      raw[r] = trace_powers(build_matrix_real(a), k).back();
    }
  });
  DiagSample out;
  out.w.label = "k=" + std::to_string(k);
  out.w.centering = Centering::sample_mean;
  out.w.spec = spec;
  out.w.seed = seed;
  out.w.values = std::move(raw);
  center_and_scale(out.w.values, 1.0 / std::sqrt(static_cast<double>(spec.n)));
  out.a0 = std::move(a0);
  return out;
}

std::vector<double> sample_traces(const EnsembleSpec& spec, int k, int replicates,
                                  std::uint64_t seed, const ThreadPool* pool) {
  spec.validate();
  require(replicates >= 1, "at least one replicate is required");
  require(k >= 1 && k <= 12, "trace powers support k in [1, 12]");
  std::vector<double> out(static_cast<std::size_t>(replicates));
  run_replicates(replicates, pool, [&](std::size_t r) {
    Rng rng(seed, r);
    out[r] = replicate_trace_powers(spec, k, rng).back();
  });
  return out;
}

double schatten_norm(const Eigen::MatrixXd& T, int r2) {
  require(r2 >= 2 && r2 % 2 == 0, "Schatten order must be a positive even integer");
  const int r = r2 / 2;
  return std::pow(trace_powers(T, r).back(), 1.0 / (2.0 * r));
}

double schatten_norm(const Eigen::MatrixXcd& T, int r2) {
  require(r2 >= 2 && r2 % 2 == 0, "Schatten order must be a positive even integer");
  const int r = r2 / 2;
  return std::pow(trace_powers(T, r).back(), 1.0 / (2.0 * r));
}

std::vector<double> sample_schatten_norms(const EnsembleSpec& spec, int r,
                                          int replicates, std::uint64_t seed,
                                          const ThreadPool* pool) {
  require(r >= 1 && r <= 12, "Schatten trace order must lie in [1, 12]");
  std::vector<double> traces = sample_traces(spec, r, replicates, seed, pool);
  const double inv_n = 1.0 / static_cast<double>(spec.n);
  for (double& t : traces) t = std::pow(t * inv_n, 1.0 / (2.0 * r));
  return traces;
}

HankelCheck hankel_spectrum_check(const EnsembleSpec& spec, std::uint64_t seed) {
  spec.validate();
  require(spec.kind == MatrixKind::non_symmetric,
          "the Hankel spectrum check runs on the non_symmetric kind");
  Rng rng(seed, 0);
  const Eigen::MatrixXd T = build_matrix_real(draw_offsets(spec, rng));
  const Eigen::MatrixXd H = T.colwise().reverse();  // H(i,j) = T(n-1-i, j)
  const Eigen::MatrixXd A = T * T.transpose();
  const Eigen::MatrixXd B = H * H.transpose();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ea(A, Eigen::EigenvaluesOnly);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(B, Eigen::EigenvaluesOnly);
  HankelCheck out;
  out.max_deviation = (ea.eigenvalues() - eb.eigenvalues()).cwiseAbs().maxCoeff();
  out.largest_eigenvalue = ea.eigenvalues()(ea.eigenvalues().size() - 1);
  out.pass = out.max_deviation <= 1e-10 * (1.0 + out.largest_eigenvalue);
  return out;
}

}  // namespace leslab
