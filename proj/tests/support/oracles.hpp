#pragma once

// Independent oracles used to freeze expected values. These reimplement the
// definitions directly (no shared code with the library paths they check).

#include <algorithm>
#include <vector>

#include "splitlab/matroid.hpp"
#include "splitlab/partition.hpp"
#include "splitlab/polytope.hpp"

namespace splitlab::oracles {

// Subset-of-some-base, by literal scan.
inline bool independent(const std::vector<SetWord>& bases, SetWord s) {
  for (SetWord b : bases)
    if ((s & ~b) == 0) return true;
  return false;
}

// Max size of an independent subset of a, by full subset enumeration.
inline int rank(const std::vector<SetWord>& bases, SetWord a) {
  int best = 0;
  for (SetWord s = a;; s = (s - 1) & a) {
    if (independent(bases, s)) best = std::max(best, set_size(s));
    if (s == 0) break;
  }
  return best;
}

// The two-block gluing predicate, quantified over every admissible size.
inline bool admissible_two_partition(const std::vector<SetWord>& bases, int matroid_rank,
                               SetWord e1, SetWord e2, int a1, int a2) {
  const int r1 = rank(bases, e1);
  const int r2 = rank(bases, e2);
  if (!(0 < a1 && a1 < r1 && 0 < a2 && a2 < r2)) return false;
  if (a1 + a2 != matroid_rank) return false;
  for (SetWord x = e1;; x = (x - 1) & e1) {
    const bool x_ok = set_size(x) <= a1 && independent(bases, x);
    if (x_ok) {
      for (SetWord y = e2;; y = (y - 1) & e2) {
        if (set_size(y) <= a2 && independent(bases, y) && !independent(bases, x | y))
          return false;
        if (y == 0) break;
      }
    }
    if (x == 0) break;
  }
  return true;
}

// Partitions of n into exactly t parts, each >= 2, by direct enumeration.
inline long long count_partitions_min2(int n, int t) {
  long long count = 0;
  auto rec = [&](auto&& self, int left, int k, int minp) -> void {
    if (k == 0) {
      if (left == 0) ++count;
      return;
    }
    for (int p = minp; p * k <= left; ++p) self(self, left - p, k - 1, p);
  };
  if (t >= 1)
    rec(rec, n, t, 2);
  else if (n == 0)
    count = 1;
  return count;
}

// Brute-force filter of parent bases by explicit prefix-count conditions.
// Piece 1 keeps |B ∩ E_1| <= a_1; piece j >= 2 keeps every earlier prefix at
// or above its quota sum and the j-th prefix at or below its quota sum.
inline std::vector<SetWord> filter_piece(const std::vector<SetWord>& parent_bases,
                                         const std::vector<SetWord>& blocks,
                                         const std::vector<int>& quotas, int piece) {
  std::vector<SetWord> out;
  for (SetWord b : parent_bases) {
    bool keep = true;
    SetWord prefix = 0;
    int quota_sum = 0;
    for (int i = 1; i <= piece; ++i) {
      prefix |= blocks[static_cast<std::size_t>(i - 1)];
      quota_sum += quotas[static_cast<std::size_t>(i - 1)];
      const int cnt = set_size(b & prefix);
      if (i < piece && cnt < quota_sum) keep = false;
      if (i == piece && cnt > quota_sum) keep = false;
    }
    if (keep) out.push_back(b);
  }
  return out;
}

// Literal certificate replay: equality on the subset, integer gap of at
// least one on the same side for everything else.
inline bool replay(int n, const std::vector<long long>& w, long long c,
                   const std::vector<SetWord>& piece, const std::vector<SetWord>& subset) {
  auto value = [&](SetWord x) {
    long long s = 0;
    for (int e = 1; e <= n; ++e)
      if (contains(x, e)) s += w[static_cast<std::size_t>(e - 1)];
    return s;
  };
  for (SetWord x : subset)
    if (value(x) != c) return false;
  std::vector<SetWord> sub = subset;
  std::sort(sub.begin(), sub.end());
  bool below = false, above = false;
  for (SetWord x : piece) {
    if (std::binary_search(sub.begin(), sub.end(), x)) continue;
    const long long v = value(x);
    if (v <= c - 1) below = true;
    else if (v >= c + 1) above = true;
    else return false;
  }
  return !(below && above);
}

}  // namespace splitlab::oracles
