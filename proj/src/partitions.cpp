#include "leslab/partitions.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace leslab {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void check_ground_budget(int m) {
  require(m >= 0, "ground set size must be nonnegative");
  require(m <= kMaxPartitionElements,
          "budget exceeded: partition ground set capped at " +
              std::to_string(kMaxPartitionElements) + " elements");
}

// Recursive canonical enumeration over an explicit element list.
void enumerate_pairs(std::vector<int>& rem, Partition& cur, const PartitionFn& fn) {
  if (rem.empty()) {
    fn(cur);
    return;
  }
  const int a = rem.front();
  for (std::size_t j = 1; j < rem.size(); ++j) {
    const int b = rem[j];
    std::vector<int> next;
    next.reserve(rem.size() - 2);
    for (std::size_t t = 1; t < rem.size(); ++t)
      if (t != j) next.push_back(rem[t]);
    cur.push_back({a, b});
    enumerate_pairs(next, cur, fn);
    cur.pop_back();
  }
}

}  // namespace

std::uint64_t double_factorial_odd(int n) {
  require(n >= -1 && n % 2 != 0, "double factorial defined here for odd n >= -1");
  std::uint64_t out = 1;
  for (int v = n; v >= 2; v -= 2) out *= static_cast<std::uint64_t>(v);
  return out;
}

std::uint64_t pair_partition_count(int m) {
  require(m >= 0 && m % 2 == 0, "pair partitions need an even ground set");
  return m == 0 ? 1 : double_factorial_odd(m - 1);
}

std::uint64_t cross_matched_count(int k1, int k2) {
  require(k1 >= 1 && k2 >= 1, "cross-matched family needs k1,k2 >= 1");
  return double_factorial_odd(2 * k1 + 2 * k2 - 1) -
         double_factorial_odd(2 * k1 - 1) * double_factorial_odd(2 * k2 - 1);
}

namespace {
std::uint64_t choose2(int n) {
  return static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
}
}  // namespace

std::uint64_t p24_count(int k1, int k2) {
  require(k1 >= 1 && k2 >= 1, "one-quad family needs k1,k2 >= 1");
  return choose2(2 * k1) * choose2(2 * k2) * double_factorial_odd(2 * k1 - 3) *
         double_factorial_odd(2 * k2 - 3);
}

std::uint64_t dp_pair_count(int r) {
  require(r >= 0, "dp pair count needs r >= 0");
  std::uint64_t out = 1;
  for (int v = 2; v <= r; ++v) out *= static_cast<std::uint64_t>(v);
  return out;
}

std::uint64_t dp24_count(int k1, int k2) {
  require(k1 >= 1 && k2 >= 1, "dp one-quad family needs k1,k2 >= 1");
  auto fact = [](int n) {
    std::uint64_t out = 1;
    for (int v = 2; v <= n; ++v) out *= static_cast<std::uint64_t>(v);
    return out;
  };
  const std::uint64_t k1u = static_cast<std::uint64_t>(k1);
  const std::uint64_t k2u = static_cast<std::uint64_t>(k2);
  return k1u * k1u * k2u * k2u * fact(k1 - 1) * fact(k2 - 1);
}

void for_each_pair_partition(int m, const PartitionFn& fn) {
  check_ground_budget(m);
  require(m % 2 == 0, "pair partitions need an even ground set");
  std::vector<int> elems(m);
  for (int i = 0; i < m; ++i) elems[i] = i + 1;
  Partition cur;
  cur.reserve(m / 2);
  enumerate_pairs(elems, cur, fn);
}

void for_each_pair_partition_of(const std::vector<int>& elems, const PartitionFn& fn) {
  check_ground_budget(static_cast<int>(elems.size()));
  require(elems.size() % 2 == 0, "pair partitions need an even element list");
  require(std::is_sorted(elems.begin(), elems.end()), "element list must be sorted");
  std::vector<int> rem = elems;
  Partition cur;
  cur.reserve(elems.size() / 2);
  enumerate_pairs(rem, cur, fn);
}

void for_each_p24(int k1, int k2, const PartitionFn& fn) {
  require(k1 >= 1 && k2 >= 1, "one-quad family needs k1,k2 >= 1");
  const int m1 = 2 * k1, m2 = 2 * k2;
  check_ground_budget(m1 + m2);
  // Lexicographic choice of two side-1 and two side-2 quad members.
  for (int a = 1; a <= m1; ++a) {
    for (int b = a + 1; b <= m1; ++b) {
      for (int c = m1 + 1; c <= m1 + m2; ++c) {
        for (int d = c + 1; d <= m1 + m2; ++d) {
          std::vector<int> rest1, rest2;
          for (int x = 1; x <= m1; ++x)
            if (x != a && x != b) rest1.push_back(x);
          for (int x = m1 + 1; x <= m1 + m2; ++x)
            if (x != c && x != d) rest2.push_back(x);
          const Block quad = {a, b, c, d};
          for_each_pair_partition_of(rest1, [&](const Partition& p1) {
            for_each_pair_partition_of(rest2, [&](const Partition& p2) {
              Partition full;
              full.reserve(1 + p1.size() + p2.size());
              full.push_back(quad);
              full.insert(full.end(), p1.begin(), p1.end());
              full.insert(full.end(), p2.begin(), p2.end());
              std::sort(full.begin(), full.end(),
                        [](const Block& x, const Block& y) { return x[0] < y[0]; });
              fn(full);
            });
          });
        }
      }
    }
  }
}

std::vector<Partition> pair_partitions(int m) {
  require(m <= 12, "materialized pair partitions capped at 12 elements");
  std::vector<Partition> out;
  out.reserve(pair_partition_count(m));
  for_each_pair_partition(m, [&](const Partition& p) { out.push_back(p); });
  return out;
}

bool quad_is_dp(const Block& quad) {
  require(quad.size() == 4, "quad classification needs a 4-block");
  return is_dp_pair(quad[0], quad[1]) && is_dp_pair(quad[2], quad[3]);
}

int side1_count(const Block& block, int side1) {
  int c = 0;
  for (int x : block) c += (x <= side1);
  return c;
}

bool is_cross_pair(const Block& block, int side1) {
  return block.size() == 2 && side1_count(block, side1) == 1;
}

int cross_pair_count(const Partition& pi, int side1) {
  int c = 0;
  for (const auto& b : pi) c += is_cross_pair(b, side1);
  return c;
}

bool all_pairs_dp(const Partition& pi) {
  for (const auto& b : pi)
    if (b.size() == 2 && !is_dp_pair(b[0], b[1])) return false;
  return true;
}

bool within_pairs_dp(const Partition& pi, int side1) {
  for (const auto& b : pi)
    if (b.size() == 2 && !is_cross_pair(b, side1) && !is_dp_pair(b[0], b[1]))
      return false;
  return true;
}

CrossClass cross_class(const Partition& pi, int side1) {
  bool saw_dp = false, saw_sp = false;
  for (const auto& b : pi) {
    if (!is_cross_pair(b, side1)) continue;
    (is_dp_pair(b[0], b[1]) ? saw_dp : saw_sp) = true;
  }
  if (!saw_dp && !saw_sp) return CrossClass::none;
  if (saw_dp && saw_sp) return CrossClass::mixed;
  return saw_dp ? CrossClass::all_dp : CrossClass::all_sp;
}

std::vector<int> base_signs(const Partition& pi, int m) {
  std::vector<int> sigma(static_cast<std::size_t>(m) + 1, 0);
  for (const auto& b : pi) {
    if (b.size() == 2) {
      sigma[b[0]] = 1;
      sigma[b[1]] = ((1 + b[0] + b[1]) % 2 == 0) ? 1 : -1;
    } else {
      sigma[b[0]] = 1;
      sigma[b[1]] = ((b[0] + b[1] + 1) % 2 == 0) ? 1 : -1;
      sigma[b[2]] = 1;
      sigma[b[3]] = ((b[2] + b[3] + 1) % 2 == 0) ? 1 : -1;
    }
  }
  return sigma;
}

void validate_partition(const Partition& pi, int m) {
  check_ground_budget(m);
  std::vector<int> seen(static_cast<std::size_t>(m) + 1, 0);
  int total = 0;
  for (const auto& b : pi) {
    require(b.size() == 2 || b.size() == 4, "blocks must have size 2 or 4");
    require(std::is_sorted(b.begin(), b.end()), "block elements must be sorted");
    for (int x : b) {
      require(x >= 1 && x <= m, "block element outside ground set");
      require(!seen[x]++, "element repeated across blocks");
      ++total;
    }
  }
  require(total == m, "blocks must cover the ground set exactly");
}

}  // namespace leslab
