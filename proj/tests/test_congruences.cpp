#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <utility>

#include "congruences.hpp"
#include "intutil.hpp"
#include "support/enum_oracles.hpp"

using namespace powpart;

namespace {

const exact_ring kExact{};

const std::pair<uint64_t, uint64_t> kPairs[] = {{2, 3}, {3, 2}, {2, 5}, {3, 5}};

// Enumeration twins of the four product expansions; no shared code with the
// series path.
mpz_class oracle_a(int d, uint64_t p1, uint64_t p2, uint64_t n) {
  auto parts =
      oracles::power_parts(d, n ? n : 1, [&](uint64_t m) { return m % p1 && m % p2; });
  return oracles::partitions(n, parts);
}

mpz_class oracle_b(int d, uint64_t p1, uint64_t p2, uint64_t n) {
  auto parts = oracles::power_parts(d, n ? n : 1, [&](uint64_t m) { return m % p2 != 0; });
  return oracles::colored_distinct_partitions(n, parts, pow_saturating(p1, d) - 1);
}

mpz_class oracle_c(int d, uint64_t p1, uint64_t p2, uint64_t n) {
  auto parts = oracles::power_parts(d, n ? n : 1, [&](uint64_t m) { return m % p2 != 0; });
  return oracles::colored_partitions(n, parts, pow_saturating(p1, d) - 1);
}

mpz_class oracle_d_seq(int d, uint64_t p2, uint64_t n) {
  auto parts = oracles::power_parts(d, n ? n : 1, [](uint64_t m) { return m % 2 == 1; });
  return oracles::partitions_bounded(n, parts, pow_saturating(p2, d) - 1);
}

}  // namespace

TEST_CASE("A sequence: frozen small values") {
  // d=2, (p1,p2)=(2,3): usable bases 1, 5, 7, 11, ... so the only part
  // below 25 is 1.
  auto a = restricted_a(2, 2, 3, 60, kExact);
  CHECK(a.coeff[0] == 1);
  CHECK(a.coeff[4] == 1);
  CHECK(a.coeff[24] == 1);
  CHECK(a.coeff[25] == 2);  // {25} and {1 x 25}
  CHECK(a.coeff[50] == 4);  // 50x1, 25+25, 25+1x25, 49+1
}

TEST_CASE("A sequence matches enumeration oracle") {
  const uint64_t n_max = 200;
  for (int d : {2, 3})
    for (auto [p1, p2] : kPairs) {
      auto a = restricted_a(d, p1, p2, n_max, kExact);
      for (uint64_t n = 0; n <= n_max; ++n) {
        CAPTURE(d);
        CAPTURE(p1);
        CAPTURE(p2);
        CAPTURE(n);
        CHECK(a.coeff[n] == oracle_a(d, p1, p2, n));
      }
    }
}

TEST_CASE("B sequence matches enumeration oracle") {
  const uint64_t n_max = 60;
  for (int d : {2, 3})
    for (auto [p1, p2] : kPairs) {
      auto b = restricted_b(d, p1, p2, n_max, kExact);
      for (uint64_t n = 0; n <= n_max; ++n) {
        CAPTURE(d);
        CAPTURE(p1);
        CAPTURE(p2);
        CAPTURE(n);
        CHECK(b.coeff[n] == oracle_b(d, p1, p2, n));
      }
    }
  // d=2, (2,3): three colors for the single part 1.
  auto b = restricted_b(2, 2, 3, 4, kExact);
  CHECK(b.coeff[1] == 3);
}

TEST_CASE("C sequence matches enumeration oracle") {
  const uint64_t n_max = 60;
  for (int d : {2, 3})
    for (auto [p1, p2] : kPairs) {
      auto c = restricted_c(d, p1, p2, n_max, kExact);
      for (uint64_t n = 0; n <= n_max; ++n) {
        CAPTURE(d);
        CAPTURE(p1);
        CAPTURE(p2);
        CAPTURE(n);
        CHECK(c.coeff[n] == oracle_c(d, p1, p2, n));
      }
    }
  // d=2, (2,3): two copies of part 1 in 3 colors, C(4,2) = 6 multisets.
  auto c = restricted_c(2, 2, 3, 4, kExact);
  CHECK(c.coeff[2] == 6);
}

TEST_CASE("D sequence matches enumeration oracle") {
  const uint64_t n_max = 80;
  for (int d : {2, 3})
    for (uint64_t p2 : {3, 5}) {
      auto dd = restricted_d(d, p2, n_max, kExact);
      for (uint64_t n = 0; n <= n_max; ++n) {
        CAPTURE(d);
        CAPTURE(p2);
        CAPTURE(n);
        CHECK(dd.coeff[n] == oracle_d_seq(d, p2, n));
      }
    }
  auto dd = restricted_d(2, 3, 4, kExact);
  CHECK(dd.coeff[3] == 1);  // {1,1,1}; the multiplicity cap is 8
}

TEST_CASE("restricted series: exact reduces to modular") {
  const uint64_t n_max = 200;
  mod_ring m6(6);
  auto exact_a = restricted_a(2, 3, 5, n_max, kExact);
  auto mod_a = restricted_a(2, 3, 5, n_max, m6);
  for (uint64_t n = 0; n <= n_max; ++n)
    CHECK(mod_a.coeff[n] == m6.reduce_from_exact(exact_a.coeff[n]));

  auto exact_c = restricted_c(2, 3, 5, n_max, kExact);
  auto mod_c = restricted_c(2, 3, 5, n_max, m6);
  for (uint64_t n = 0; n <= n_max; ++n)
    CHECK(mod_c.coeff[n] == m6.reduce_from_exact(exact_c.coeff[n]));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(restricted_a(2, 2, 4, 10, kExact), error);  // gcd != 1
  CHECK_THROWS_AS(restricted_a(2, 1, 3, 10, kExact), error);  // p1 < 2
  CHECK_THROWS_AS(restricted_b(0, 2, 3, 10, kExact), error);  // d < 1
  CHECK_THROWS_AS(restricted_c(2, 6, 9, 10, kExact), error);  // gcd != 1
  CHECK_THROWS_AS(restricted_d(2, 4, 10, kExact), error);     // even p2
  CHECK_THROWS_AS(restricted_d(2, 1, 10, kExact), error);     // p2 < 3

  CHECK_THROWS_AS(verify_ab_parity(2, 4, 10), error);          // even p2
  CHECK_THROWS_AS(verify_ac_convolution(2, 2, 3, 10), error);  // p1 even
  CHECK_THROWS_AS(verify_ac_convolution(2, 9, 2, 10), error);  // p1 composite
  CHECK_THROWS_AS(verify_ac_convolution(2, 3, 6, 10), error);  // p1 | p2
  CHECK_THROWS_AS(verify_crt_combined(2, 3, 3, 10), error);    // p1 == p2
  CHECK_THROWS_AS(verify_crt_combined(2, 3, 9, 10), error);    // composite p2
}

TEST_CASE("primality helper") {
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(3));
  CHECK(is_prime_u64(97));
  CHECK_FALSE(is_prime_u64(0));
  CHECK_FALSE(is_prime_u64(1));
  CHECK_FALSE(is_prime_u64(9));
  CHECK_FALSE(is_prime_u64(91));  // 7 * 13
}

TEST_CASE("CRT idempotents") {
  auto [a, b] = crt_idempotents(3, 5);
  CHECK(a == 10);
  CHECK(b == 6);
  CHECK(a % 3 == 1);
  CHECK(a % 5 == 0);
  CHECK(b % 3 == 0);
  CHECK(b % 5 == 1);
  auto [a2, b2] = crt_idempotents(5, 3);
  CHECK(a2 == 6);
  CHECK(b2 == 10);
  auto [a3, b3] = crt_idempotents(5, 7);
  CHECK((a3 + b3) % 35 == 1);
  CHECK(a3 % 5 == 1);
  CHECK(b3 % 7 == 1);
}

TEST_CASE("parity statement A == B (mod 2)") {
  for (int d : {2, 3})
    for (uint64_t p2 : {3, 5, 9}) {
      auto rep = verify_ab_parity(d, p2, 500);
      CAPTURE(d);
      CAPTURE(p2);
      CHECK(rep.verified());
      CHECK(rep.verified_up_to == 500);
      CHECK(rep.statement == "ab-parity");
      CHECK(rep.p1 == 2);
    }
}

TEST_CASE("convolution statement sum A(i) C(n-i) == 0 (mod p1)") {
  struct {
    int d;
    uint64_t p1, p2;
  } cases[] = {{2, 3, 2}, {2, 3, 4}, {2, 5, 2}, {2, 7, 2}, {3, 3, 5}, {3, 5, 4}};
  for (auto c : cases) {
    auto rep = verify_ac_convolution(c.d, c.p1, c.p2, 400);
    CAPTURE(c.d);
    CAPTURE(c.p1);
    CAPTURE(c.p2);
    CHECK(rep.verified());
    CHECK_FALSE(rep.first_failure.has_value());
  }
}

TEST_CASE("combined CRT statement (mod p1 p2)") {
  for (auto [p1, p2] :
       std::initializer_list<std::pair<uint64_t, uint64_t>>{{3, 5}, {5, 3}, {3, 7}, {5, 7}}) {
    auto rep = verify_crt_combined(2, p1, p2, 200);
    CAPTURE(p1);
    CAPTURE(p2);
    CHECK(rep.verified());
  }
  auto rep3 = verify_crt_combined(3, 3, 5, 150);
  CHECK(rep3.verified());
}

TEST_CASE("identity statement A_{2,p2} == D_{p2} exactly") {
  for (int d : {2, 3})
    for (uint64_t p2 : {3, 5, 9}) {
      auto rep = verify_ad_identity(d, p2, 300);
      CAPTURE(d);
      CAPTURE(p2);
      CHECK(rep.verified());
      CHECK(rep.verified_up_to == 300);
    }
}

TEST_CASE("congruence checks spot-checked in the exact ring") {
  // The verifiers work in modular rings; recompute a slice exactly to make
  // sure nothing was lost in the reduction.
  const uint64_t n_max = 120;
  auto a = restricted_a(2, 3, 2, n_max, kExact);
  auto c = restricted_c(2, 3, 2, n_max, kExact);
  auto conv = mul_truncated(a, c);
  CHECK(conv.coeff[0] == 1);
  for (uint64_t n = 1; n <= n_max; ++n) {
    CAPTURE(n);
    CHECK(conv.coeff[n] % 3 == 0);
  }

  auto a23 = restricted_a(2, 2, 3, n_max, kExact);
  auto b23 = restricted_b(2, 2, 3, n_max, kExact);
  for (uint64_t n = 0; n <= n_max; ++n) {
    CAPTURE(n);
    CHECK((a23.coeff[n] - b23.coeff[n]) % 2 == 0);
  }
}
