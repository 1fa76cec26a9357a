#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "intutil.hpp"
#include "ring.hpp"

namespace powpart {

enum class table_method { staged, sigma, oracle };

const char* method_name(table_method m);
table_method method_from_name(const std::string& name);

// Values p_d(0..N) over a coefficient ring, with the metadata needed to
// identify a cache file.
template <class Ring>
struct partition_table {
  int d = 2;
  Ring ring;
  std::vector<typename Ring::value_type> values;
  table_method method = table_method::staged;

  uint64_t order() const { return values.size() - 1; }
};

// sigma^(d)(n) = sum of k^d over all k >= 1 with k^d | n; 0 for n = 0.
uint64_t sigma_d(uint64_t n, int d);

// Sieved table sigma^(d)(0..N): for each part size k^d, bump all its
// multiples.  O(N) overall since sum_k N/k^d converges.
std::vector<uint64_t> sigma_d_table(int d, uint64_t order);

template <class Ring>
struct staged_build_options {
  // 0 = run every stage k with k^d <= N; a smaller bound yields the partial
  // counts with largest part capped at max_stage^d.
  uint64_t max_stage = 0;
  // Resume support: stages 1..resume_stage are already applied to the
  // supplied buffer (size N+1).
  uint64_t resume_stage = 0;
  std::vector<typename Ring::value_type> resume_values;
  // Called after each completed stage.
  std::function<void(uint64_t stage, uint64_t total_stages,
                     const std::vector<typename Ring::value_type>&)>
      on_stage;
};

// Staged DP expansion of prod_k 1/(1 - q^{k^d}): stage k applies
// c[n] += c[n - k^d] for n ascending.  After stage k all entries below
// (k+1)^d are final.
template <class Ring>
partition_table<Ring> staged_table(int d, uint64_t order, const Ring& ring,
                                   staged_build_options<Ring> opts = {}) {
  if (d < 1) fail(errc::invalid_argument, "d must be >= 1");
  partition_table<Ring> t{d, ring, {}, table_method::staged};
  const uint64_t total_stages = integer_root_floor(order, d);
  uint64_t first_stage = 1;
  if (opts.resume_stage > 0) {
    if (opts.resume_values.size() != order + 1)
      fail(errc::invalid_argument, "resume buffer size does not match order");
    t.values = std::move(opts.resume_values);
    first_stage = opts.resume_stage + 1;
  } else {
    t.values.assign(order + 1, ring.zero());
    t.values[0] = ring.one();
  }
  uint64_t last_stage = total_stages;
  if (opts.max_stage > 0 && opts.max_stage < last_stage) last_stage = opts.max_stage;
  for (uint64_t k = first_stage; k <= last_stage; ++k) {
    const uint64_t e = pow_saturating(k, d);
    for (uint64_t n = e; n <= order; ++n) ring.add_assign(t.values[n], t.values[n - e]);
    if (opts.on_stage) opts.on_stage(k, last_stage, t.values);
  }
  return t;
}

// O(N^2) cross-check path from the divisor-sum recurrence
//   n * p_d(n) = sum_{i=1..n} sigma^(d)(i) * p_d(n-i).
// Exact ring only: the final step divides by n.
partition_table<exact_ring> sigma_recurrence_table(int d, uint64_t order);

// Independent brute-force count of partitions of n into parts {1^d, 2^d, ...}
// by the largest-part recursion; no shared code with the series path.
// Intended for small n (memoised, O(n^{1+1/d}) state).
mpz_class oracle_pd(int d, uint64_t n);

}  // namespace powpart
