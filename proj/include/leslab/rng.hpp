#pragma once

// Deterministic random-number layer: splitmix64 for seeding/key mixing and
// xoshiro256++ generators keyed by (seed, stream) so that independent work
// items draw from independent, reproducible streams.

#include <cstdint>
#include <cstddef>

namespace leslab {

// splitmix64 step; also usable as a stateless mixer of a 64-bit value.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Order-sensitive combination of two keys into one 64-bit key.
inline std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a;
  std::uint64_t h = splitmix64_next(s);
  s = h ^ (b + 0x9E3779B97F4A7C15ULL);
  return splitmix64_next(s);
}

// FNV-1a over raw bytes; used to key per-partition streams by content.
inline std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

// xoshiro256++ with splitmix64-expanded state; deterministic across platforms.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double uniform();                        // [0, 1)
  double uniform(double lo, double hi);    // lo + (hi-lo)*uniform()
  double normal();                         // standard normal (Box-Muller)
  double rademacher();                     // +1 or -1 with probability 1/2

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

inline std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

inline std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl64(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl64(s_[3], 45);
  return result;
}

inline double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

inline double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

inline double Rng::rademacher() {
  return (next_u64() >> 63) ? 1.0 : -1.0;
}

}  // namespace leslab
