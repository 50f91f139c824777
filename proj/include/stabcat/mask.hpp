#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace stabcat {

// Subsets of a carrier (elements, objects or arrows) as bitmasks.
using Mask = std::uint64_t;

inline constexpr int kMaxCarrier = 64;

constexpr Mask bit(int i) { return Mask{1} << i; }
constexpr Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : bit(n) - 1; }
constexpr bool has(Mask m, int i) { return (m >> i) & 1U; }
constexpr bool subset(Mask a, Mask b) { return (a & ~b) == 0; }
inline int popcount(Mask m) { return std::popcount(m); }

inline std::vector<int> members(Mask m) {
  std::vector<int> out;
  while (m != 0) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

// Renumbers the bits of `m` that lie in `within` so that the k-th member of
// `within` becomes bit k (coordinates of an induced substructure).
inline Mask compress(Mask m, Mask within) {
  Mask out = 0;
  int k = 0;
  for (int i : members(within)) {
    if (has(m, i)) out |= bit(k);
    ++k;
  }
  return out;
}

// Inverse of compress.
inline Mask expand(Mask m, Mask within) {
  Mask out = 0;
  int k = 0;
  for (int i : members(within)) {
    if (has(m, k)) out |= bit(i);
    ++k;
  }
  return out;
}

}  // namespace stabcat
