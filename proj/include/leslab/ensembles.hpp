#pragma once

// Random Toeplitz entry sequences: static draws and Brownian-motion-valued
// paths, with deterministic draw order so a (spec, seed) pair pins every bit.

#include <complex>
#include <cstdint>
#include <vector>

#include "leslab/rng.hpp"
#include "leslab/types.hpp"

namespace leslab {

// An n x p Toeplitz ensemble: entry (i,j) = a_{i-j} / sqrt(n).
//
// symmetric      one real family with a_{-i} = a_i
// non_symmetric  independent real a_i for i > 0 and i < 0
// hermitian      complex a_i with a_{-i} = conj(a_i)
//
// The diagonal value a_0 is 0 unless diagonal == DiagonalMode::random.
struct EnsembleSpec {
  MatrixKind kind = MatrixKind::symmetric;
  int n = 0;
  int p = 0;
  EntryDist entries = EntryDist::gaussian;
  DiagonalMode diagonal = DiagonalMode::zero;

  double kappa() const { return kappa_of(entries); }
  double aspect() const { return static_cast<double>(p) / n; }
  bool complex_entries() const { return kind == MatrixKind::hermitian; }

  // Throws std::invalid_argument on n < 1, p < 1, or an entry family that
  // does not match the kind (hermitian <-> complex_gaussian).
  void validate() const;
};

// Convenience constructor used by experiment configs: p = round(lambda * n),
// clamped up to 1.
EnsembleSpec make_ensemble(MatrixKind kind, int n, double lambda,
                           EntryDist entries,
                           DiagonalMode diagonal = DiagonalMode::zero);

// One realized entry sequence a_d for d in [-(p-1), n-1].  Real kinds leave
// `im` empty.  Reflection constraints are materialized at draw time, so the
// stored sequence is the full signed-offset map.
struct OffsetSequence {
  int n = 0;
  int p = 0;
  std::vector<double> re;
  std::vector<double> im;

  bool complex() const { return !im.empty(); }
  int size() const { return n + p - 1; }
  int index_of(int d) const { return d + p - 1; }
  bool in_range(int d) const { return d >= 1 - p && d <= n - 1; }
  double real_at(int d) const { return re[index_of(d)]; }
  std::complex<double> cplx_at(int d) const {
    const int i = index_of(d);
    return {re[i], im.empty() ? 0.0 : im[i]};
  }
};

// Number of matrix positions carrying offset d: #{(i,j) : i-j = d}.
int offset_multiplicity(int n, int p, int d);

// Draws one entry sequence.  Draw order is fixed: off-diagonal offsets in a
// canonical order (symmetric/hermitian: d = 1..max(n,p)-1; non-symmetric:
// d ascending over [-(p-1), -1] then [1, n-1]), then a_0 last when the
// diagonal is random.  A hermitian random diagonal takes sqrt(2) * Re of a
// complex draw, so the diagonal stays real with unit variance.
OffsetSequence draw_offsets(const EnsembleSpec& spec, Rng& rng);

// Brownian time grid for matrix-valued paths.  Times must be nonnegative and
// strictly increasing; entries at time t are standard Brownian motions (the
// hermitian kind uses Z(t)/sqrt(2) with Z = X + iY so E|entry(t)|^2 = t).
struct BrownianPathSpec {
  std::vector<double> times;

  void validate() const;  // throws std::invalid_argument
};

// Entry sequences along a Brownian path, one frame per grid time, coupled
// through shared increments.  frames[i] corresponds to times[i].
struct OffsetPath {
  std::vector<double> times;
  std::vector<OffsetSequence> frames;
};

// Draws one coupled path.  Per grid step the increments are drawn in the same
// canonical offset order as draw_offsets (diagonal increment last when
// random); a time equal to 0 yields an all-zero frame without consuming
// randomness.
OffsetPath draw_offset_path(const EnsembleSpec& spec, const BrownianPathSpec& path,
                            Rng& rng);

}  // namespace leslab
