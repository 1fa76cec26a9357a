#pragma once

#include <cstdint>
#include <limits>

namespace powpart {

// k^d saturating at UINT64_MAX; d >= 1.
inline uint64_t pow_saturating(uint64_t k, int d) {
  unsigned __int128 acc = 1;
  for (int i = 0; i < d; ++i) {
    acc *= k;
    if (acc > std::numeric_limits<uint64_t>::max()) return std::numeric_limits<uint64_t>::max();
  }
  return static_cast<uint64_t>(acc);
}

// True iff k^d > n, with exact overflow handling (the saturating power would
// compare equal to n = UINT64_MAX and hide the overflow).
inline bool pow_exceeds(uint64_t k, int d, uint64_t n) {
  unsigned __int128 acc = 1;
  for (int i = 0; i < d; ++i) {
    acc *= k;
    if (acc > n) return true;
  }
  return false;
}

// Largest k with k^d <= n, by binary search on integers.  Floating-point
// roots are off by one near perfect powers, which would silently drop or
// duplicate a DP stage.
inline uint64_t integer_root_floor(uint64_t n, int d) {
  if (d <= 0) return 0;
  if (d == 1 || n <= 1) return n;
  uint64_t lo = 1, hi = n;
  while (lo < hi) {
    uint64_t mid = lo + (hi - lo + 1) / 2;
    if (!pow_exceeds(mid, d, n))
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

}  // namespace powpart
