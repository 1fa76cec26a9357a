#include "congruences.hpp"

#include <numeric>

#include "intutil.hpp"

namespace powpart {

namespace {

int64_t color_count(int d, uint64_t p1) {
  uint64_t c = pow_saturating(p1, d);
  if (c - 1 > 1000000)
    fail(errc::invalid_argument, "color count p1^d - 1 is too large to expand");
  return static_cast<int64_t>(c - 1);
}

void require_pair(int d, uint64_t p1, uint64_t p2) {
  if (d < 1) fail(errc::invalid_argument, "d must be >= 1");
  if (p1 < 2 || p2 < 2) fail(errc::invalid_argument, "p1 and p2 must be >= 2");
  if (std::gcd(p1, p2) != 1)
    fail(errc::invalid_argument, "p1 and p2 must be coprime: gcd(" + std::to_string(p1) + ", " +
                                     std::to_string(p2) + ") != 1");
}

}  // namespace

template <class Ring>
series<Ring> restricted_a(int d, uint64_t p1, uint64_t p2, uint64_t order, const Ring& ring) {
  require_pair(d, p1, p2);
  return expand_product(
      {
          scaled_power_factor(p1, d, 1, false),
          scaled_power_factor(p2, d, 1, false),
          scaled_power_factor(1, d, -1, false),
          scaled_power_factor(p1 * p2, d, -1, false),
      },
      ring, order);
}

template <class Ring>
series<Ring> restricted_b(int d, uint64_t p1, uint64_t p2, uint64_t order, const Ring& ring) {
  require_pair(d, p1, p2);
  const int64_t colors = color_count(d, p1);
  return expand_product(
      {
          scaled_power_factor(1, d, colors, true),
          scaled_power_factor(p2, d, -colors, true),
      },
      ring, order);
}

template <class Ring>
series<Ring> restricted_c(int d, uint64_t p1, uint64_t p2, uint64_t order, const Ring& ring) {
  require_pair(d, p1, p2);
  const int64_t colors = color_count(d, p1);
  return expand_product(
      {
          scaled_power_factor(p2, d, colors, false),
          scaled_power_factor(1, d, -colors, false),
      },
      ring, order);
}

template <class Ring>
series<Ring> restricted_d(int d, uint64_t p2, uint64_t order, const Ring& ring) {
  if (d < 1) fail(errc::invalid_argument, "d must be >= 1");
  if (p2 < 3 || p2 % 2 == 0) fail(errc::invalid_argument, "p2 must be odd and >= 3");
  return expand_product(
      {
          odd_power_factor(p2, d, 1, false),
          odd_power_factor(1, d, -1, false),
      },
      ring, order);
}

template series<exact_ring> restricted_a(int, uint64_t, uint64_t, uint64_t, const exact_ring&);
template series<mod_ring> restricted_a(int, uint64_t, uint64_t, uint64_t, const mod_ring&);
template series<exact_ring> restricted_b(int, uint64_t, uint64_t, uint64_t, const exact_ring&);
template series<mod_ring> restricted_b(int, uint64_t, uint64_t, uint64_t, const mod_ring&);
template series<exact_ring> restricted_c(int, uint64_t, uint64_t, uint64_t, const exact_ring&);
template series<mod_ring> restricted_c(int, uint64_t, uint64_t, uint64_t, const mod_ring&);
template series<exact_ring> restricted_d(int, uint64_t, uint64_t, const exact_ring&);
template series<mod_ring> restricted_d(int, uint64_t, uint64_t, const mod_ring&);

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

std::pair<uint64_t, uint64_t> crt_idempotents(uint64_t p1, uint64_t p2) {
  mod_ring r1(p1), r2(p2);
  mod_ring::value_type inv_p2_mod_p1 = 0, inv_p1_mod_p2 = 0;
  if (!r1.try_invert(r1.from_int(static_cast<long>(p2 % p1)), inv_p2_mod_p1) ||
      !r2.try_invert(r2.from_int(static_cast<long>(p1 % p2)), inv_p1_mod_p2))
    fail(errc::invalid_argument, "p1 and p2 must be coprime for CRT");
  uint64_t a = p2 * inv_p2_mod_p1 % (p1 * p2);
  uint64_t b = p1 * inv_p1_mod_p2 % (p1 * p2);
  return {a, b};
}

congruence_report verify_ab_parity(int d, uint64_t p2, uint64_t n_max) {
  if (p2 < 3 || p2 % 2 == 0) fail(errc::invalid_argument, "ab-parity requires odd p2 >= 3");
  mod_ring ring(2);
  auto a = restricted_a(d, 2, p2, n_max, ring);
  auto b = restricted_b(d, 2, p2, n_max, ring);
  congruence_report rep{"ab-parity", d, 2, p2, n_max, n_max, std::nullopt};
  for (uint64_t n = 0; n <= n_max; ++n)
    if (a.coeff[n] != b.coeff[n]) {
      rep.first_failure = n;
      rep.verified_up_to = n == 0 ? 0 : n - 1;
      break;
    }
  return rep;
}

congruence_report verify_ac_convolution(int d, uint64_t p1, uint64_t p2, uint64_t n_max) {
  if (p1 < 3 || p1 % 2 == 0 || !is_prime_u64(p1))
    fail(errc::invalid_argument, "ac-convolution requires an odd prime p1");
  if (p2 < 2 || p2 % p1 == 0)
    fail(errc::invalid_argument, "ac-convolution requires p2 >= 2 with p1 not dividing p2");
  mod_ring ring(p1);
  auto a = restricted_a(d, p1, p2, n_max, ring);
  auto c = restricted_c(d, p1, p2, n_max, ring);
  auto conv = mul_truncated(a, c);
  congruence_report rep{"ac-convolution", d, p1, p2, n_max, n_max, std::nullopt};
  for (uint64_t n = 1; n <= n_max; ++n)
    if (conv.coeff[n] != 0) {
      rep.first_failure = n;
      rep.verified_up_to = n - 1;
      break;
    }
  return rep;
}

congruence_report verify_crt_combined(int d, uint64_t p1, uint64_t p2, uint64_t n_max) {
  if (p1 == p2 || p1 % 2 == 0 || p2 % 2 == 0 || !is_prime_u64(p1) || !is_prime_u64(p2))
    fail(errc::invalid_argument, "crt-combined requires distinct odd primes p1, p2");
  mod_ring ring(p1 * p2);
  auto a_seq = restricted_a(d, p1, p2, n_max, ring);
  auto c12 = restricted_c(d, p1, p2, n_max, ring);
  auto c21 = restricted_c(d, p2, p1, n_max, ring);
  auto lhs = mul_truncated(mul_truncated(a_seq, c12), c21);
  auto [ca, cb] = crt_idempotents(p1, p2);
  congruence_report rep{"crt-combined", d, p1, p2, n_max, n_max, std::nullopt};
  for (uint64_t n = 0; n <= n_max; ++n) {
    auto rhs = ring.add(ring.mul(ring.from_int(static_cast<long>(ca)), c21.coeff[n]),
                        ring.mul(ring.from_int(static_cast<long>(cb)), c12.coeff[n]));
    if (lhs.coeff[n] != rhs) {
      rep.first_failure = n;
      rep.verified_up_to = n == 0 ? 0 : n - 1;
      break;
    }
  }
  return rep;
}

congruence_report verify_ad_identity(int d, uint64_t p2, uint64_t n_max) {
  if (p2 < 3 || p2 % 2 == 0) fail(errc::invalid_argument, "ad-identity requires odd p2 >= 3");
  exact_ring ring;
  auto a = restricted_a(d, 2, p2, n_max, ring);
  auto dd = restricted_d(d, p2, n_max, ring);
  congruence_report rep{"ad-identity", d, 2, p2, n_max, n_max, std::nullopt};
  for (uint64_t n = 0; n <= n_max; ++n)
    if (a.coeff[n] != dd.coeff[n]) {
      rep.first_failure = n;
      rep.verified_up_to = n == 0 ? 0 : n - 1;
      break;
    }
  return rep;
}

}  // namespace powpart
