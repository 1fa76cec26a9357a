#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "series.hpp"

namespace powpart {

// Restricted partition counts for a coprime pair (p1, p2), all with parts
// that are d-th powers:
//   A: base not divisible by p1 or p2
//   B: distinct parts (per value and color), base not divisible by p2,
//      each part in one of p1^d - 1 colors
//   C: as B but with unrestricted multiplicity
//   D: odd bases only, each part value repeated at most p2^d - 1 times
//      (the p1 = 2 companion of A)
// Each sequence is expanded from its infinite-product generating function.

template <class Ring>
series<Ring> restricted_a(int d, uint64_t p1, uint64_t p2, uint64_t order, const Ring& ring);

template <class Ring>
series<Ring> restricted_b(int d, uint64_t p1, uint64_t p2, uint64_t order, const Ring& ring);

template <class Ring>
series<Ring> restricted_c(int d, uint64_t p1, uint64_t p2, uint64_t order, const Ring& ring);

template <class Ring>
series<Ring> restricted_d(int d, uint64_t p2, uint64_t order, const Ring& ring);

struct congruence_report {
  std::string statement;  // ab-parity | ac-convolution | crt-combined | ad-identity
  int d = 0;
  uint64_t p1 = 0;
  uint64_t p2 = 0;
  uint64_t n_max = 0;
  uint64_t verified_up_to = 0;           // == n_max iff no failure
  std::optional<uint64_t> first_failure;  // smallest failing n

  bool verified() const { return !first_failure.has_value(); }
};

// A_{2,p2}(n) == B_{2,p2}(n) (mod 2); p2 odd >= 3.
congruence_report verify_ab_parity(int d, uint64_t p2, uint64_t n_max);

// sum_{i=0..n} A(i) C(n-i) == 0 (mod p1) for n >= 1; p1 an odd prime not
// dividing p2.
congruence_report verify_ac_convolution(int d, uint64_t p1, uint64_t p2, uint64_t n_max);

// Triple convolution A * C_{p1,p2} * C_{p2,p1} == a C_{p2,p1} + b C_{p1,p2}
// (mod p1 p2) with (a, b) the CRT idempotents; p1, p2 distinct odd primes.
// At n = 0 both sides reduce to a + b == 1.
congruence_report verify_crt_combined(int d, uint64_t p1, uint64_t p2, uint64_t n_max);

// A_{2,p2}(n) == D_{p2}(n) exactly (not merely mod 2); p2 odd >= 3.
congruence_report verify_ad_identity(int d, uint64_t p2, uint64_t n_max);

// CRT idempotents for distinct primes: a == 1 (p1), 0 (p2); b == 0 (p1), 1 (p2).
std::pair<uint64_t, uint64_t> crt_idempotents(uint64_t p1, uint64_t p2);

bool is_prime_u64(uint64_t n);

}  // namespace powpart
