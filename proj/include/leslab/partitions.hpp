#pragma once

// Pair partitions of {1..m} and the partition families indexing the limit
// formulas: cross-matched pair partitions of a two-trace ground set, the
// one-quad family (a single 4-block with two elements per side, all other
// blocks pairs within a side), and the different-parity restricted families.
//
// Canonical enumeration order everywhere: recursively match the smallest
// unmatched element to each larger unmatched candidate in increasing order.
// Blocks of an emitted partition are sorted by smallest element.

#include <cstdint>
#include <functional>
#include <vector>

namespace leslab {

inline constexpr int kMaxPartitionElements = 16;

using Block = std::vector<int>;        // sorted elements; size 2 or 4
using Partition = std::vector<Block>;  // blocks sorted by smallest element

// ---- counts ----

// n!! for odd n >= -1, with (-1)!! = 1.
std::uint64_t double_factorial_odd(int n);

// |P2(m)| = (m-1)!! for even m >= 0.
std::uint64_t pair_partition_count(int m);

// Number of pair partitions of {1..2k1+2k2} with at least one block joining
// the two sides: (2k1+2k2-1)!! - (2k1-1)!!(2k2-1)!!.
std::uint64_t cross_matched_count(int k1, int k2);

// Number of one-quad partitions: C(2k1,2) C(2k2,2) (2k1-3)!! (2k2-3)!!.
std::uint64_t p24_count(int k1, int k2);

// Number of pair partitions of {1..2r} whose blocks all join different
// parities: r!.
std::uint64_t dp_pair_count(int r);

// Number of one-quad partitions whose quad pairs different parities per side
// and whose pair blocks all join different parities: k1^2 k2^2 (k1-1)! (k2-1)!.
std::uint64_t dp24_count(int k1, int k2);

// ---- enumeration ----

using PartitionFn = std::function<void(const Partition&)>;

// All pair partitions of {1..m} (even m, m <= budget), canonical order.
void for_each_pair_partition(int m, const PartitionFn& fn);

// All pair partitions of an arbitrary sorted element list, canonical order.
void for_each_pair_partition_of(const std::vector<int>& elems, const PartitionFn& fn);

// All one-quad partitions of {1..2k1+2k2} with side split at 2k1:
// one 4-block with two elements per side, every other block a pair inside a
// single side. Quad choices advance lexicographically.
void for_each_p24(int k1, int k2, const PartitionFn& fn);

// Materialized convenience for small m.
std::vector<Partition> pair_partitions(int m);

// ---- classification ----

// A pair joins different parities when r+s is odd.
inline bool is_dp_pair(int r, int s) { return ((r + s) & 1) != 0; }

// True when the sorted quad (q0<q1<q2<q3) pairs different parities within
// each of its two natural pairs (q0,q1) and (q2,q3).
bool quad_is_dp(const Block& quad);

// Number of elements of the block lying in {1..side1}.
int side1_count(const Block& block, int side1);

// A pair block crossing the side split (exactly one element <= side1).
bool is_cross_pair(const Block& block, int side1);

// Number of cross pair blocks.
int cross_pair_count(const Partition& pi, int side1);

// Every pair block joins different parities (quads ignored).
bool all_pairs_dp(const Partition& pi);

// Every non-cross pair block joins different parities.
bool within_pairs_dp(const Partition& pi, int side1);

// Parity class of the cross pairs: a cross pair {u,v} is class dp when u+v is
// odd, class sp when u+v is even.
enum class CrossClass { none, all_dp, all_sp, mixed };
CrossClass cross_class(const Partition& pi, int side1);

// ---- sign map ----

// Base per-position signs (index 1..m; slot 0 unused): pairs get (+1 at the
// smaller element r, (-1)^{1+r+s} at the larger), a quad (q0<q1<q2<q3) gets
// +1 at q0 and q2 and (-1)^{q+q'+1} at the second element of each natural
// pair.
std::vector<int> base_signs(const Partition& pi, int m);

// Validation: blocks partition exactly {1..m}, each of size 2 or 4, sorted.
void validate_partition(const Partition& pi, int m);

}  // namespace leslab
