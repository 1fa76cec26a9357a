#include "series.hpp"

#include "intutil.hpp"

namespace powpart {

product_factor scaled_power_factor(uint64_t scale, int d, int64_t power, bool plus_sign) {
  if (scale == 0 || d < 1) fail(errc::invalid_argument, "factor needs scale >= 1 and d >= 1");
  return product_factor{
      [scale, d](uint64_t n) {
        unsigned __int128 base = static_cast<unsigned __int128>(scale) * n;
        if (base > std::numeric_limits<uint64_t>::max())
          return std::numeric_limits<uint64_t>::max();
        return pow_saturating(static_cast<uint64_t>(base), d);
      },
      power, plus_sign};
}

product_factor odd_power_factor(uint64_t scale, int d, int64_t power, bool plus_sign) {
  if (scale == 0 || d < 1) fail(errc::invalid_argument, "factor needs scale >= 1 and d >= 1");
  return product_factor{
      [scale, d](uint64_t n) {
        unsigned __int128 base = static_cast<unsigned __int128>(scale) * (2 * n - 1);
        if (base > std::numeric_limits<uint64_t>::max())
          return std::numeric_limits<uint64_t>::max();
        return pow_saturating(static_cast<uint64_t>(base), d);
      },
      power, plus_sign};
}

}  // namespace powpart
