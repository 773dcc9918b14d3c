#pragma once

// Shared enums and small helpers used across the library.

#include <stdexcept>
#include <string>

namespace leslab {

enum class MatrixKind { symmetric, non_symmetric, hermitian };

enum class EntryDist { rademacher, gaussian, uniform_scaled, complex_gaussian };

enum class DiagonalMode { zero, random };

// Fourth absolute moment E|a|^4 of the (unit-variance) entry family.
inline double kappa_of(EntryDist d) {
  switch (d) {
    case EntryDist::rademacher: return 1.0;
    case EntryDist::gaussian: return 3.0;
    case EntryDist::uniform_scaled: return 9.0 / 5.0;
    case EntryDist::complex_gaussian: return 2.0;
  }
  throw std::invalid_argument("unknown entry distribution");
}

inline bool is_complex_dist(EntryDist d) { return d == EntryDist::complex_gaussian; }

inline std::string to_string(MatrixKind k) {
  switch (k) {
    case MatrixKind::symmetric: return "symmetric";
    case MatrixKind::non_symmetric: return "non_symmetric";
    case MatrixKind::hermitian: return "hermitian";
  }
  throw std::invalid_argument("unknown matrix kind");
}

inline std::string to_string(EntryDist d) {
  switch (d) {
    case EntryDist::rademacher: return "rademacher";
    case EntryDist::gaussian: return "gaussian";
    case EntryDist::uniform_scaled: return "uniform_scaled";
    case EntryDist::complex_gaussian: return "complex_gaussian";
  }
  throw std::invalid_argument("unknown entry distribution");
}

inline std::string to_string(DiagonalMode m) {
  return m == DiagonalMode::zero ? "zero" : "random";
}

MatrixKind matrix_kind_from_string(const std::string& s);
EntryDist entry_dist_from_string(const std::string& s);
DiagonalMode diagonal_mode_from_string(const std::string& s);

}  // namespace leslab
