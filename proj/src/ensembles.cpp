#include "leslab/ensembles.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace leslab {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kInvSqrt2 = 0.7071067811865476;
constexpr double kSqrt2 = 1.4142135623730951;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double draw_real_entry(EntryDist entries, Rng& rng) {
  switch (entries) {
    case EntryDist::rademacher:
      return static_cast<double>(rng.rademacher());
    case EntryDist::gaussian:
      return rng.normal();
    case EntryDist::uniform_scaled:
      return rng.uniform(-kSqrt3, kSqrt3);
    case EntryDist::complex_gaussian:
      break;
  }
  throw std::invalid_argument("real draw requested from a complex entry family");
}

std::complex<double> draw_complex_entry(Rng& rng) {
  const double x = rng.normal();
  const double y = rng.normal();
  return {x * kInvSqrt2, y * kInvSqrt2};
}

void add_real(OffsetSequence& seq, int d, double v) {
  if (seq.in_range(d)) seq.re[seq.index_of(d)] += v;
}

void add_complex(OffsetSequence& seq, int d, std::complex<double> v) {
  if (!seq.in_range(d)) return;
  const int i = seq.index_of(d);
  seq.re[i] += v.real();
  seq.im[i] += v.imag();
}

// Adds one scaled draw of every entry (off-diagonals in canonical order, then
// the diagonal when random) into `seq`.  With brownian=true the real families
// are replaced by standard normals, which turns the accumulated sequence into
// a Brownian path when called once per grid step with scale sqrt(dt).
void accumulate_draws(const EnsembleSpec& spec, Rng& rng, double scale,
                      bool brownian, OffsetSequence& seq) {
  const auto real_draw = [&]() {
    return (brownian ? rng.normal() : draw_real_entry(spec.entries, rng)) * scale;
  };
  const int dmax = std::max(spec.n, spec.p) - 1;
  switch (spec.kind) {
    case MatrixKind::symmetric:
      for (int d = 1; d <= dmax; ++d) {
        const double v = real_draw();
        add_real(seq, d, v);
        add_real(seq, -d, v);
      }
      break;
    case MatrixKind::non_symmetric:
      for (int d = -(spec.p - 1); d <= -1; ++d) add_real(seq, d, real_draw());
      for (int d = 1; d <= spec.n - 1; ++d) add_real(seq, d, real_draw());
      break;
    case MatrixKind::hermitian:
      for (int d = 1; d <= dmax; ++d) {
        const std::complex<double> z = draw_complex_entry(rng) * scale;
        add_complex(seq, d, z);
        add_complex(seq, -d, std::conj(z));
      }
      break;
  }
  if (spec.diagonal == DiagonalMode::random) {
    if (spec.kind == MatrixKind::hermitian) {
      // The diagonal of a hermitian matrix must stay real: take sqrt(2) * Re
      // of a complex draw, which has unit variance.
      add_real(seq, 0, kSqrt2 * (draw_complex_entry(rng) * scale).real());
    } else {
      add_real(seq, 0, real_draw());
    }
  }
}

OffsetSequence zero_sequence(const EnsembleSpec& spec) {
  OffsetSequence seq;
  seq.n = spec.n;
  seq.p = spec.p;
  seq.re.assign(spec.n + spec.p - 1, 0.0);
  if (spec.complex_entries()) seq.im.assign(spec.n + spec.p - 1, 0.0);
  return seq;
}

}  // namespace

void EnsembleSpec::validate() const {
  require(n >= 1, "ensemble requires n >= 1");
  require(p >= 1, "ensemble requires p >= 1");
  if (kind == MatrixKind::hermitian) {
    require(entries == EntryDist::complex_gaussian,
            "hermitian ensembles use the complex_gaussian entry family");
  } else {
    require(entries != EntryDist::complex_gaussian,
            "complex_gaussian entries require the hermitian kind");
  }
}

EnsembleSpec make_ensemble(MatrixKind kind, int n, double lambda,
                           EntryDist entries, DiagonalMode diagonal) {
  require(n >= 1, "ensemble requires n >= 1");
  require(std::isfinite(lambda) && lambda > 0.0,
          "aspect ratio must be positive and finite");
  EnsembleSpec spec;
  spec.kind = kind;
  spec.n = n;
  spec.p = std::max(1, static_cast<int>(std::lround(lambda * n)));
  spec.entries = entries;
  spec.diagonal = diagonal;
  spec.validate();
  return spec;
}

int offset_multiplicity(int n, int p, int d) {
  const int lo = std::max(1, 1 + d);
  const int hi = std::min(n, p + d);
  return std::max(0, hi - lo + 1);
}

OffsetSequence draw_offsets(const EnsembleSpec& spec, Rng& rng) {
  spec.validate();
  OffsetSequence seq = zero_sequence(spec);
  accumulate_draws(spec, rng, 1.0, /*brownian=*/false, seq);
  return seq;
}

void BrownianPathSpec::validate() const {
  require(!times.empty(), "Brownian path requires at least one time");
  require(times.front() >= 0.0, "Brownian path times must be nonnegative");
  for (std::size_t i = 1; i < times.size(); ++i) {
    require(times[i] > times[i - 1], "Brownian path times must be strictly increasing");
  }
}

OffsetPath draw_offset_path(const EnsembleSpec& spec, const BrownianPathSpec& path,
                            Rng& rng) {
  spec.validate();
  path.validate();
  if (spec.kind == MatrixKind::hermitian) {
    require(spec.entries == EntryDist::complex_gaussian,
            "hermitian Brownian paths use complex_gaussian entries");
  } else {
    require(spec.entries == EntryDist::gaussian,
            "Brownian path entries are Gaussian; set the entry family to gaussian");
  }

  OffsetPath out;
  out.times = path.times;
  out.frames.reserve(path.times.size());
  OffsetSequence cur = zero_sequence(spec);
  double prev_t = 0.0;
  for (const double t : path.times) {
    const double dt = t - prev_t;
    if (dt > 0.0) {
      accumulate_draws(spec, rng, std::sqrt(dt), /*brownian=*/true, cur);
    }
    prev_t = t;
    out.frames.push_back(cur);
  }
  return out;
}

MatrixKind matrix_kind_from_string(const std::string& s) {
  if (s == "symmetric") return MatrixKind::symmetric;
  if (s == "non_symmetric") return MatrixKind::non_symmetric;
  if (s == "hermitian") return MatrixKind::hermitian;
  throw std::invalid_argument("unknown matrix kind '" + s +
                              "' (expected symmetric, non_symmetric, or hermitian)");
}

EntryDist entry_dist_from_string(const std::string& s) {
  if (s == "rademacher") return EntryDist::rademacher;
  if (s == "gaussian") return EntryDist::gaussian;
  if (s == "uniform_scaled") return EntryDist::uniform_scaled;
  if (s == "complex_gaussian") return EntryDist::complex_gaussian;
  throw std::invalid_argument(
      "unknown entry family '" + s +
      "' (expected rademacher, gaussian, uniform_scaled, or complex_gaussian)");
}

DiagonalMode diagonal_mode_from_string(const std::string& s) {
  if (s == "zero") return DiagonalMode::zero;
  if (s == "random") return DiagonalMode::random;
  throw std::invalid_argument("unknown diagonal mode '" + s +
                              "' (expected zero or random)");
}

}  // namespace leslab
