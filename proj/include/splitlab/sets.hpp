#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace splitlab {

// Subsets of a ground set {1,...,n}, n <= 64, packed into one machine word.
// Element e corresponds to bit e-1.
using SetWord = std::uint64_t;

inline constexpr int kMaxGroundSize = 64;

constexpr SetWord full_mask(int n) {
  return n >= kMaxGroundSize ? ~SetWord{0} : ((SetWord{1} << n) - 1);
}

constexpr SetWord element_bit(int e) {
  return SetWord{1} << (e - 1);
}

constexpr bool contains(SetWord s, int e) {
  return (s & element_bit(e)) != 0;
}

constexpr int set_size(SetWord s) {
  return std::popcount(s);
}

// Smallest element of a nonempty set.
inline int first_element(SetWord s) {
  assert(s != 0);
  return std::countr_zero(s) + 1;
}

inline std::vector<int> to_elements(SetWord s) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(set_size(s)));
  while (s) {
    out.push_back(std::countr_zero(s) + 1);
    s &= s - 1;
  }
  return out;
}

inline SetWord from_elements(std::span<const int> elems) {
  SetWord s = 0;
  for (int e : elems) s |= element_bit(e);
  return s;
}

inline SetWord from_elements(std::initializer_list<int> elems) {
  SetWord s = 0;
  for (int e : elems) s |= element_bit(e);
  return s;
}

// Next r-subset in increasing word order (Gosper's hack). Returns 0 on wrap.
inline SetWord next_same_size(SetWord s) {
  SetWord c = s & -s;
  SetWord r = s + c;
  if (r == 0) return 0;
  return (((r ^ s) >> 2) / c) | r;
}

inline std::string format_set(SetWord s) {
  std::string out = "{";
  bool first = true;
  for (int e : to_elements(s)) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  out += "}";
  return out;
}

}  // namespace splitlab
