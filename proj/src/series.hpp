#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "ring.hpp"

namespace powpart {

// Formal power series truncated at an inclusive order N: the coefficient of
// q^N is valid, everything above is discarded.  Immutable by convention once
// built; all operations return fresh series.
template <class Ring>
struct series {
  Ring ring;
  std::vector<typename Ring::value_type> coeff;  // coeff[n] is the q^n term, n = 0..N

  uint64_t order() const { return coeff.size() - 1; }
};

template <class Ring>
series<Ring> series_zero(const Ring& ring, uint64_t order) {
  series<Ring> s{ring, {}};
  s.coeff.assign(order + 1, ring.zero());
  return s;
}

template <class Ring>
series<Ring> series_one(const Ring& ring, uint64_t order) {
  series<Ring> s = series_zero(ring, order);
  s.coeff[0] = ring.one();
  return s;
}

template <class Ring>
bool same_coeffs(const series<Ring>& f, const series<Ring>& g) {
  return f.coeff == g.coeff;
}

namespace detail {
template <class Ring>
void require_compatible(const series<Ring>& f, const series<Ring>& g) {
  if (!(f.ring == g.ring)) fail(errc::invalid_argument, "series ring mismatch");
  if (f.order() != g.order())
    fail(errc::invalid_argument, "series order mismatch: " + std::to_string(f.order()) +
                                     " vs " + std::to_string(g.order()));
}
}  // namespace detail

// Cauchy product mod q^{N+1}.  Dense O(N^2); the sparse product factors below
// never go through here, so this is only used for convolution checks and
// small-order algebra.
template <class Ring>
series<Ring> mul_truncated(const series<Ring>& f, const series<Ring>& g) {
  detail::require_compatible(f, g);
  const Ring& R = f.ring;
  uint64_t n_max = f.order();
  series<Ring> h = series_zero(R, n_max);
  for (uint64_t i = 0; i <= n_max; ++i) {
    if (R.is_zero(f.coeff[i])) continue;
    for (uint64_t j = 0; i + j <= n_max; ++j)
      R.add_assign(h.coeff[i + j], R.mul(f.coeff[i], g.coeff[j]));
  }
  return h;
}

// Multiplicative inverse mod q^{N+1} via the standard recurrence
//   g_n = -f_0^{-1} * sum_{i=1..n} f_i g_{n-i}.
// Requires an invertible constant term.
template <class Ring>
series<Ring> inv_truncated(const series<Ring>& f) {
  const Ring& R = f.ring;
  typename Ring::value_type c0_inv;
  if (!R.try_invert(f.coeff[0], c0_inv))
    fail(errc::domain, "constant term not invertible in this ring");
  uint64_t n_max = f.order();
  series<Ring> g = series_zero(R, n_max);
  g.coeff[0] = c0_inv;
  for (uint64_t n = 1; n <= n_max; ++n) {
    typename Ring::value_type acc = R.zero();
    for (uint64_t i = 1; i <= n; ++i)
      R.add_assign(acc, R.mul(f.coeff[i], g.coeff[n - i]));
    g.coeff[n] = R.sub(R.zero(), R.mul(c0_inv, acc));
  }
  return g;
}

// One factor (1 +- q^{e(n)})^power of an infinite product.  The exponent
// generator must be strictly increasing in n (n = 1, 2, ...); expansion stops
// at the first n with e(n) > N, so factors entirely above the truncation
// order contribute nothing.
struct product_factor {
  std::function<uint64_t(uint64_t)> exponent;
  int64_t power = 1;      // negative powers divide
  bool plus_sign = false; // true: (1 + q^e), false: (1 - q^e)
};

// Convenience: e(n) = (scale * n)^d.
product_factor scaled_power_factor(uint64_t scale, int d, int64_t power, bool plus_sign);
// Convenience: e(n) = (scale * (2n - 1))^d, odd bases only.
product_factor odd_power_factor(uint64_t scale, int d, int64_t power, bool plus_sign);

namespace detail {

// In-place multiplication of the coefficient buffer by (1 +- q^e)^{+-1}.
// Each variant is a single O(N - e) sweep:
//   * (1 - q^e): descending  c[i] -= c[i-e]
//   * (1 + q^e): descending  c[i] += c[i-e]
//   / (1 - q^e): ascending   c[i] += c[i-e]
//   / (1 + q^e): ascending   c[i] -= c[i-e]
template <class Ring>
void apply_binomial(const Ring& R, std::vector<typename Ring::value_type>& c, uint64_t e,
                    bool plus_sign, bool reciprocal) {
  const uint64_t n_max = c.size() - 1;
  if (e == 0 || e > n_max) {
    if (e == 0) fail(errc::invalid_argument, "product factor exponent must be >= 1");
    return;
  }
  if (!reciprocal) {
    if (plus_sign)
      for (uint64_t i = n_max; i >= e; --i) R.add_assign(c[i], c[i - e]);
    else
      for (uint64_t i = n_max; i >= e; --i) R.sub_assign(c[i], c[i - e]);
  } else {
    if (plus_sign)
      for (uint64_t i = e; i <= n_max; ++i) R.sub_assign(c[i], c[i - e]);
    else
      for (uint64_t i = e; i <= n_max; ++i) R.add_assign(c[i], c[i - e]);
  }
}

}  // namespace detail

// Expands a product of factors mod q^{N+1}.  A factor with |power| = s is
// applied as s single-term sweeps rather than a dense convolution or
// exponentiation; for the products handled here s stays small (at most a few
// hundred), so repetition is cheaper and keeps every factor O(s * N).
template <class Ring>
series<Ring> expand_product(const std::vector<product_factor>& factors, const Ring& ring,
                            uint64_t order) {
  series<Ring> s = series_one(ring, order);
  for (const product_factor& f : factors) {
    if (f.power == 0) continue;
    const uint64_t reps = static_cast<uint64_t>(f.power < 0 ? -f.power : f.power);
    const bool reciprocal = f.power < 0;
    uint64_t prev = 0;
    for (uint64_t n = 1;; ++n) {
      uint64_t e = f.exponent(n);
      if (n > 1 && e <= prev)
        fail(errc::invalid_argument, "product factor exponents must be strictly increasing");
      prev = e;
      if (e > order) break;
      for (uint64_t r = 0; r < reps; ++r)
        detail::apply_binomial(ring, s.coeff, e, f.plus_sign, reciprocal);
    }
  }
  return s;
}

// Reduce an exact series coefficientwise into a modular ring.
inline series<mod_ring> reduce_series(const series<exact_ring>& f, const mod_ring& ring) {
  series<mod_ring> g{ring, {}};
  g.coeff.reserve(f.coeff.size());
  for (const mpz_class& c : f.coeff) g.coeff.push_back(ring.reduce_from_exact(c));
  return g;
}

}  // namespace powpart
