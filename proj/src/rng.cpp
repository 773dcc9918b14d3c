#include "leslab/rng.hpp"

#include <cmath>
#include <numbers>

namespace leslab {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  const std::uint64_t base0 = splitmix64_next(s);
  const std::uint64_t base1 = splitmix64_next(s);
  std::uint64_t t = base0 ^ (stream * 0xA0761D6478BD642FULL + base1);
  for (auto& word : s_) word = splitmix64_next(t);
  // xoshiro256++ requires a not-all-zero state.
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

double Rng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  // Box-Muller on (0,1] x [0,1): 1-uniform() avoids log(0).
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(theta);
  has_cached_normal_ = true;
  return r * std::cos(theta);
}

}  // namespace leslab
