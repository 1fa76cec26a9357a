#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "errors.hpp"

namespace powpart {

// Coefficient rings for truncated series and partition tables.
//
// The ring is a template/strategy parameter of everything that does
// coefficient arithmetic, so the exact (big-integer) and modular paths
// compile to separate inner loops with no per-element branching.
//
// Both rings model the same informal concept:
//   value_type, zero(), one(), from_int(), add(), sub(), mul(),
//   invert(), is_zero(), to_decimal(), reduce_from_exact().
// Modular values are kept canonical in [0, modulus).

// Arbitrary-precision integers (GMP).
struct exact_ring {
  using value_type = mpz_class;

  static constexpr bool modular = false;

  uint64_t modulus() const { return 0; }

  value_type zero() const { return mpz_class(0); }
  value_type one() const { return mpz_class(1); }
  value_type from_int(long v) const { return mpz_class(v); }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }

  void add_assign(value_type& a, const value_type& b) const { a += b; }
  void sub_assign(value_type& a, const value_type& b) const { a -= b; }

  // Only the units +-1 are invertible over the integers.
  bool try_invert(const value_type& a, value_type& out) const {
    if (a == 1 || a == -1) {
      out = a;
      return true;
    }
    return false;
  }

  bool is_zero(const value_type& a) const { return a == 0; }

  std::string to_decimal(const value_type& a) const { return a.get_str(); }

  value_type reduce_from_exact(const mpz_class& a) const { return a; }

  uint64_t residue(const value_type& a, uint64_t m) const {
    return mpz_fdiv_ui(a.get_mpz_t(), m);
  }

  bool operator==(const exact_ring&) const = default;
};

// Integers modulo m, 2 <= m < 2^32.  Residues are stored canonically in
// uint32_t; sums and products are formed in uint64_t, so no reduction step
// can overflow.
class mod_ring {
 public:
  using value_type = uint32_t;

  static constexpr bool modular = true;

  explicit mod_ring(uint64_t m) : m_(static_cast<uint32_t>(m)) {
    if (m < 2 || m > 0xffffffffu)
      fail(errc::invalid_argument, "modulus must be in [2, 2^32): " + std::to_string(m));
  }

  uint64_t modulus() const { return m_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1 % m_; }

  value_type from_int(long v) const {
    long r = v % static_cast<long>(m_);
    if (r < 0) r += m_;
    return static_cast<value_type>(r);
  }

  value_type add(value_type a, value_type b) const {
    uint64_t s = static_cast<uint64_t>(a) + b;
    if (s >= m_) s -= m_;
    return static_cast<value_type>(s);
  }

  value_type sub(value_type a, value_type b) const {
    return a >= b ? a - b : static_cast<value_type>(a + static_cast<uint64_t>(m_) - b);
  }

  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<uint64_t>(a) * b % m_);
  }

  void add_assign(value_type& a, value_type b) const { a = add(a, b); }
  void sub_assign(value_type& a, value_type b) const { a = sub(a, b); }

  // Extended gcd; fails when gcd(a, m) != 1 (composite moduli are allowed,
  // so non-units exist).
  bool try_invert(value_type a, value_type& out) const {
    int64_t t = 0, new_t = 1;
    int64_t r = m_, new_r = a % m_;
    while (new_r != 0) {
      int64_t q = r / new_r;
      t = std::exchange(new_t, t - q * new_t);
      r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) return false;
    if (t < 0) t += m_;
    out = static_cast<value_type>(t);
    return true;
  }

  bool is_zero(value_type a) const { return a == 0; }

  std::string to_decimal(value_type a) const { return std::to_string(a); }

  value_type reduce_from_exact(const mpz_class& a) const {
    return static_cast<value_type>(mpz_fdiv_ui(a.get_mpz_t(), m_));
  }

  uint64_t residue(value_type a, uint64_t m) const {
    if (m == 0 || m_ % m != 0)
      fail(errc::domain, "residue mod " + std::to_string(m) +
                             " not derivable from ring modulus " + std::to_string(m_));
    return a % m;
  }

  bool operator==(const mod_ring&) const = default;

 private:
  uint32_t m_;
};

}  // namespace powpart
