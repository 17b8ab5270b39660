#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace mpj {

/// ceil(log2(m)) for m >= 1. All budget thresholds in this library use
/// integer ceilings; no floating point logs anywhere.
inline int ceil_log2(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("ceil_log2: m must be >= 1");
  return static_cast<int>(std::bit_width(m - 1));
}

/// ceil(log2(n) / 2) for n >= 1: the smallest c with 4^c >= n.
inline int ceil_half_log2(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("ceil_half_log2: n must be >= 1");
  int c = 0;
  std::uint64_t p = 1;
  while (p < n) {
    p *= 4;
    ++c;
  }
  return c;
}

}  // namespace mpj
