#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "leslab/integrals.hpp"
#include "leslab/partitions.hpp"
#include "leslab/thread_pool.hpp"

using namespace leslab;

namespace {

constexpr std::uint64_t kSeed = 20260815;

// |got - want| within 4 combined standard errors (extra accounts for an
// analytic target with zero error or a frozen reference with its own error).
bool close4(const IntegralEstimate& got, double want, double extra_se = 0.0) {
  const double tol = 4.0 * std::sqrt(got.std_error * got.std_error + extra_se * extra_se);
  return std::abs(got.value - want) <= tol;
}

}  // namespace

// ---- single-integral oracles (closed forms via the walk-constraint geometry) ----

TEST_CASE("one-quad integrand at k1=k2=1 matches lambda^2 - lambda^3/3 (lambda <= 1)") {
  const Partition quad = {{1, 2, 3, 4}};
  const auto a = estimate_f(quad, FVariant::II_minus, 1, 1, 1.0, 1000000, kSeed);
  CHECK(close4(a, 2.0 / 3.0));
  const auto b = estimate_f(quad, FVariant::II_minus, 1, 1, 0.5, 1000000, kSeed);
  CHECK(close4(b, 0.25 - 0.125 / 3.0));
}

TEST_CASE("one-quad integrand at k1=k2=1 matches lambda - 1/3 (lambda >= 1)") {
  const Partition quad = {{1, 2, 3, 4}};
  const auto a = estimate_f(quad, FVariant::II_minus, 1, 1, 2.0, 1000000, kSeed);
  CHECK(close4(a, 2.0 - 1.0 / 3.0));
}

TEST_CASE("flipped one-quad integrand: 2/3 at lambda=1 and exactly 1 at lambda=2") {
  const Partition quad = {{1, 2, 3, 4}};
  const auto a = estimate_f(quad, FVariant::II_plus, 1, 1, 1.0, 1000000, kSeed);
  CHECK(close4(a, 2.0 / 3.0));
  // Opposite orientations confine the quad offset to [-1,1]; the surviving
  // region integrates to exactly 1.
  const auto b = estimate_f(quad, FVariant::II_plus, 1, 1, 2.0, 1000000, kSeed);
  CHECK(close4(b, 1.0));
}

TEST_CASE("trace-joining pair integrals at k1=k2=1 equal 2/3 at lambda=1") {
  const auto a = estimate_f({{1, 4}, {2, 3}}, FVariant::I_minus, 1, 1, 1.0, 1000000, kSeed);
  CHECK(close4(a, 2.0 / 3.0));
  const auto b = estimate_f({{1, 3}, {2, 4}}, FVariant::I_plus, 1, 1, 1.0, 1000000, kSeed);
  CHECK(close4(b, 2.0 / 3.0));
}

TEST_CASE("equal-orientation integrand coincides bit-for-bit with the flipped variant on an all-same-parity matching") {
  // On {{1,3},{2,4}} the flip turns every orientation to +1, so the two call
  // paths compile to the same plan and must draw the same stream.
  for (double lambda : {1.0, 1.5}) {
    const auto plus =
        estimate_f({{1, 3}, {2, 4}}, FVariant::I_plus, 1, 1, lambda, 200000, kSeed);
    const auto eq = estimate_f_equal_offsets({{1, 3}, {2, 4}}, 1, 1, lambda, 200000, kSeed);
    CHECK(plus.value == eq.value);
    CHECK(plus.std_error == eq.std_error);
  }
}

TEST_CASE("estimates are reproducible and respond to the seed") {
  const Partition pi = {{1, 4}, {2, 3}};
  const auto a = estimate_f(pi, FVariant::I_minus, 1, 1, 1.0, 50000, kSeed);
  const auto b = estimate_f(pi, FVariant::I_minus, 1, 1, 1.0, 50000, kSeed);
  const auto c = estimate_f(pi, FVariant::I_minus, 1, 1, 1.0, 50000, kSeed + 1);
  CHECK(a.value == b.value);
  CHECK(a.value != c.value);
}

TEST_CASE("variant/partition mismatches and bad arguments are rejected") {
  CHECK_THROWS_AS(estimate_f({{1, 2}, {3, 4}}, FVariant::II_minus, 1, 1, 1.0, 1000, kSeed),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_f({{1, 2, 3, 4}}, FVariant::I_minus, 1, 1, 1.0, 1000, kSeed),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_f({{1, 2}, {3, 4}}, FVariant::I_minus, 1, 1, 1.0, 1000, kSeed),
                  std::invalid_argument);  // no cross pair
  CHECK_THROWS_AS(estimate_f({{1, 3}, {2, 4}}, FVariant::I_minus, 0, 2, 1.0, 1000, kSeed),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_f({{1, 3}, {2, 4}}, FVariant::I_minus, 1, 1, 0.0, 1000, kSeed),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_f({{1, 3}, {2, 4}}, FVariant::I_minus, 1, 1, 1.0,
                             2'000'000'000ULL, kSeed),
                  std::invalid_argument);
  // Mixed-parity cross pairs have no equal-orientation integrand.
  CHECK_THROWS_AS(estimate_f_equal_offsets({{1, 4}, {2, 6}, {3, 5}}, 1, 2, 1.0, 1000, kSeed),
                  std::invalid_argument);
}

// ---- moment families ----

TEST_CASE("first moment equals the aspect ratio") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    const auto m1 = estimate_M(1, lambda, 1000000, kSeed);
    CHECK(close4(m1, lambda));
    const auto m1n = estimate_M_nonsym(1, lambda, 1000000, kSeed);
    CHECK(close4(m1n, lambda));
  }
}

TEST_CASE("second moments at lambda=1: 8/3 for the full family, 2 for the different-parity family") {
  const auto m2 = estimate_M(2, 1.0, 1000000, kSeed);
  CHECK(close4(m2, 8.0 / 3.0));
  const auto m2n = estimate_M_nonsym(2, 1.0, 1000000, kSeed);
  CHECK(close4(m2n, 2.0));
}

TEST_CASE("aspect-swap identity M_r(lambda) = lambda^{r+1} M_r(1/lambda)") {
  const auto a = estimate_M(2, 2.0, 400000, kSeed);
  const auto b = estimate_M(2, 0.5, 400000, kSeed);
  const double tol = 4.0 * std::sqrt(a.std_error * a.std_error +
                                     64.0 * b.std_error * b.std_error);
  CHECK(std::abs(a.value - 8.0 * b.value) <= tol);
}

TEST_CASE("moments are positive up to r=4 and the order budget is enforced") {
  for (int r = 1; r <= 4; ++r) {
    CHECK(estimate_M(r, 1.0, 20000, kSeed).value > 0.0);
    CHECK(estimate_M_nonsym(r, 1.0, 20000, kSeed).value > 0.0);
  }
  CHECK_THROWS_AS(estimate_M(9, 1.0, 1000, kSeed), std::invalid_argument);
}

// ---- covariance predictions ----

TEST_CASE("variance limits at k=1, lambda=1 match the closed forms") {
  const auto sym = predict_cov_sym(1, 1, 1.0, 3.0, 1000000, kSeed);
  CHECK(close4(sym, 8.0 / 3.0));
  const auto nonsym = predict_cov_nonsym(1, 1, 1.0, 3.0, 1000000, kSeed);
  CHECK(close4(nonsym, 4.0 / 3.0));
  const auto herm = predict_cov_hermitian(1, 1, 1.0, 2.0, 1000000, kSeed);
  CHECK(close4(herm, 4.0 / 3.0));
}

TEST_CASE("variance limits at k=1 for other aspect ratios and entry families") {
  // symmetric: (kappa-1) * ((lambda^2 - lambda^3/3) + plus-part); at lambda=2
  // the two quad variants integrate to 5/3 and 1.
  const auto sym2 = predict_cov_sym(1, 1, 2.0, 3.0, 1000000, kSeed);
  CHECK(close4(sym2, 2.0 * (5.0 / 3.0 + 1.0)));
  const auto non2 = predict_cov_nonsym(1, 1, 2.0, 3.0, 1000000, kSeed);
  CHECK(close4(non2, 2.0 * (2.0 - 1.0 / 3.0)));
  const auto nonu = predict_cov_nonsym(1, 1, 0.5, 9.0 / 5.0, 1000000, kSeed);
  CHECK(close4(nonu, 0.8 * (0.25 - 0.125 / 3.0)));
}

TEST_CASE("fourth-moment-1 entries collapse k=1 and (1,2) limits to exactly zero") {
  // No trace-joining family exists below four cross pairs, so the whole
  // prediction is the quad family scaled by kappa-1 = 0.
  CHECK(predict_cov_sym(1, 1, 1.0, 1.0, 200000, kSeed).value == 0.0);
  CHECK(predict_cov_sym(1, 2, 1.0, 1.0, 200000, kSeed).value == 0.0);
  CHECK(predict_cov_nonsym(1, 1, 1.0, 1.0, 200000, kSeed).value == 0.0);
  CHECK(predict_cov_nonsym(1, 2, 1.0, 1.0, 200000, kSeed).value == 0.0);
}

TEST_CASE("order-(1,2) covariance limits at lambda=1") {
  // Frozen references: paired family empty; quad sums 3.667+3.662 (full),
  // 2.668 (different-parity family).
  const auto sym = predict_cov_sym(1, 2, 1.0, 3.0, 400000, kSeed);
  CHECK(close4(sym, 14.658, 0.04));
  const auto non = predict_cov_nonsym(1, 2, 1.0, 3.0, 400000, kSeed);
  CHECK(close4(non, 5.336, 0.02));
  const auto herm = predict_cov_hermitian(1, 2, 1.0, 2.0, 400000, kSeed);
  CHECK(close4(herm, 7.329, 0.02));
}

TEST_CASE("order-(2,2) covariance limits at lambda=1 match frozen references") {
  const auto sym1 = predict_cov_sym(2, 2, 1.0, 1.0, 200000, kSeed);
  CHECK(close4(sym1, 18.10, 0.06));
  const auto sym3 = predict_cov_sym(2, 2, 1.0, 3.0, 200000, kSeed);
  CHECK(close4(sym3, 99.10, 0.12));
  const auto non1 = predict_cov_nonsym(2, 2, 1.0, 1.0, 200000, kSeed);
  CHECK(close4(non1, 3.2086, 0.011));
  const auto non3 = predict_cov_nonsym(2, 2, 1.0, 3.0, 200000, kSeed);
  CHECK(close4(non3, 24.569, 0.04));
  const auto herm = predict_cov_hermitian(2, 2, 1.0, 2.0, 200000, kSeed);
  CHECK(close4(herm, 49.57, 0.08));
}

TEST_CASE("fourth-moment monotonicity is exact for shared estimates") {
  const auto lo = predict_cov_sym(2, 2, 1.0, 1.0, 100000, kSeed);
  const auto hi = predict_cov_sym(2, 2, 1.0, 3.0, 100000, kSeed);
  CHECK(hi.value >= lo.value);
  const auto det = predict_cov(MatrixKind::symmetric, 2, 2, 1.0, 3.0, 100000, kSeed);
  CHECK(det.estimate.value == det.pair_sum + 2.0 * det.quad_sum);
  CHECK(det.quad_sum >= 0.0);
}

TEST_CASE("different-parity family stays below the full family") {
  const auto sym = predict_cov_sym(2, 2, 1.0, 1.0, 100000, kSeed);
  const auto non = predict_cov_nonsym(2, 2, 1.0, 1.0, 100000, kSeed);
  const double tol =
      4.0 * std::sqrt(sym.std_error * sym.std_error + non.std_error * non.std_error);
  CHECK(non.value <= sym.value + tol);
}

TEST_CASE("thread pool does not change prediction bits") {
  const ThreadPool pool(4);
  const auto serial = predict_cov(MatrixKind::symmetric, 2, 2, 1.0, 3.0, 50000, kSeed);
  const auto pooled =
      predict_cov(MatrixKind::symmetric, 2, 2, 1.0, 3.0, 50000, kSeed, &pool);
  CHECK(serial.estimate.value == pooled.estimate.value);
  CHECK(serial.estimate.std_error == pooled.estimate.std_error);
  CHECK(serial.pair_sum == pooled.pair_sum);
  CHECK(serial.quad_sum == pooled.quad_sum);
}

TEST_CASE("polynomial variance aggregates pair covariances with shared estimates") {
  const auto q = predict_var_Q(MatrixKind::symmetric, {1.0, 1.0}, 1.0, 3.0, 100000, kSeed);
  const auto s11 = predict_cov_sym(1, 1, 1.0, 3.0, 100000, kSeed);
  const auto s12 = predict_cov_sym(1, 2, 1.0, 3.0, 100000, kSeed);
  const auto s22 = predict_cov_sym(2, 2, 1.0, 3.0, 100000, kSeed);
  const double manual = s11.value + 2.0 * s12.value + s22.value;
  CHECK(q.value == doctest::Approx(manual).epsilon(1e-12));
  const double manual_se =
      std::sqrt(s11.std_error * s11.std_error + 4.0 * s12.std_error * s12.std_error +
                s22.std_error * s22.std_error);
  CHECK(q.std_error == doctest::Approx(manual_se).epsilon(1e-12));
  // Zero coefficients drop their terms.
  const auto q1 = predict_var_Q(MatrixKind::symmetric, {1.0, 0.0}, 1.0, 3.0, 100000, kSeed);
  CHECK(q1.value == s11.value);
}

// ---- process covariances ----

TEST_CASE("equal-time process covariance reduces exactly to the static limit") {
  for (double t : {1.0, 2.0}) {
    const auto ps = predict_cov_process(MatrixKind::symmetric, 1, 1, t, t, 1.0, 200000, kSeed);
    const auto ss = predict_cov_sym(1, 1, 1.0, 3.0, 200000, kSeed);
    CHECK(ps.value == std::pow(t, 2) * ss.value);
    const auto pn =
        predict_cov_process(MatrixKind::non_symmetric, 1, 2, t, t, 1.0, 200000, kSeed);
    const auto sn = predict_cov_nonsym(1, 2, 1.0, 3.0, 200000, kSeed);
    CHECK(pn.value == std::pow(t, 3) * sn.value);
    const auto ph =
        predict_cov_process(MatrixKind::hermitian, 1, 1, t, t, 1.0, 200000, kSeed);
    const auto sh = predict_cov_hermitian(1, 1, 1.0, 2.0, 200000, kSeed);
    CHECK(ph.value == std::pow(t, 2) * sh.value);
  }
}

TEST_CASE("order-1 process covariance depends only on the earlier time") {
  const auto a = predict_cov_process(MatrixKind::symmetric, 1, 1, 1.0, 2.0, 1.0, 200000, kSeed);
  const auto b = predict_cov_process(MatrixKind::symmetric, 1, 1, 1.0, 1.0, 1.0, 200000, kSeed);
  CHECK(a.value == b.value);  // single term with coefficient t1^2 either way
  CHECK(close4(a, 8.0 / 3.0));
}

TEST_CASE("process covariance is symmetric in its (order, time) arguments") {
  const auto a = predict_cov_process(MatrixKind::symmetric, 2, 1, 2.0, 1.0, 1.0, 100000, kSeed);
  const auto b = predict_cov_process(MatrixKind::symmetric, 1, 2, 1.0, 2.0, 1.0, 100000, kSeed);
  CHECK(a.value == b.value);
}

TEST_CASE("process covariance vanishes exactly at time zero") {
  const auto a = predict_cov_process(MatrixKind::symmetric, 1, 1, 0.0, 2.0, 1.0, 100000, kSeed);
  CHECK(a.value == 0.0);
  CHECK(a.std_error == 0.0);
}

TEST_CASE("family budgets are enforced with a named cap") {
  CHECK_THROWS_WITH_AS(predict_cov_sym(4, 4, 1.0, 3.0, 1000000, kSeed),
                       doctest::Contains("budget exceeded"), std::invalid_argument);
  CHECK_THROWS_AS(predict_cov_sym(1, 1, 1.0, 0.5, 1000, kSeed), std::invalid_argument);
  CHECK_THROWS_AS(predict_cov_process(MatrixKind::symmetric, 1, 1, -1.0, 1.0, 1.0, 1000, kSeed),
                  std::invalid_argument);
}
