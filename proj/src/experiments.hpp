#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "partitions.hpp"

namespace powpart {

// Counts of n in {0..n_max} with p_d(n) == r (mod m), one bucket per residue.
struct residue_histogram_result {
  int d = 0;
  uint64_t n_max = 0;
  uint64_t m = 0;
  std::vector<uint64_t> counts;  // counts[r], r = 0..m-1; sums to n_max + 1
};

// Works on exact tables directly and on modular tables whose modulus is
// divisible by m.
template <class Ring>
residue_histogram_result residue_histogram(const partition_table<Ring>& table, uint64_t m);

// An arithmetic progression a*n + b whose p_d values all landed in one
// residue class r mod m for every checked n.
struct ap_candidate {
  int d = 0;
  uint64_t m = 0;
  uint64_t r = 0;
  uint64_t a = 0;
  uint64_t b = 0;
  uint64_t n_count = 0;  // consecutive n from 0 that were verified
};

struct search_ap_params {
  uint64_t a_min = 2;
  uint64_t a_max = 999;
  uint64_t n_count = 101;  // checks n = 0..n_count-1
  uint64_t m_min = 2;
  uint64_t m_max = 13;
  unsigned jobs = 1;
};

// Scans every (a, b, m) with a_min <= a <= a_max, 0 <= b < a,
// m_min <= m <= m_max.  The table must cover index a_max*(n_count-1)+b.
// Residues are extracted once per modulus into a byte array, so the triple
// loop does no big-integer work.  Candidates come out ordered by (m, a, b)
// regardless of the job count.
template <class Ring>
std::vector<ap_candidate> search_ap(const partition_table<Ring>& table,
                                    const search_ap_params& params);

enum class threshold_kind { convex, log_concave };

const char* threshold_kind_name(threshold_kind k);
threshold_kind threshold_kind_from_name(const std::string& name);

struct threshold_report {
  int d = 0;
  threshold_kind kind = threshold_kind::convex;
  uint64_t scan_bound = 0;      // n scanned over 1..scan_bound-1
  uint64_t last_violation = 0;  // largest scanned n violating the inequality
  uint64_t holds_from = 0;      // last_violation + 1
};

// Scans n = 1..scan_bound-1 (scan_bound = 0 means the full table) with the
// inequality in cleared-denominator integer form:
//   convex:      2 p(n) n^d      <= (p(n-1) + p(n+1)) (n^d - 1)
//   log-concave: p(n)^2 n^d      >= p(n-1) p(n+1) (n^d + 1)
// No floating point is involved.  n = 1 makes the convex right side 0 and is
// always a recorded violation, never skipped.
threshold_report threshold_scan(const partition_table<exact_ring>& table, threshold_kind kind,
                                uint64_t scan_bound = 0);

// Previously published values to compare a computed holds_from against.  The
// d = 2 log-concave case has two competing candidates (1042 and 1086); both
// are returned and the caller reports which one the computation matched.
std::vector<uint64_t> threshold_references(int d, threshold_kind kind);

// log p_d(n) / (c_d n^{1/(d+1)}) at each sample point; approaches 1 from
// below as n grows.  n = 0 is rejected (log of p_d(0) = 1 against a zero
// scale).
std::vector<std::pair<uint64_t, double>> asymptotic_ratio(
    const partition_table<exact_ring>& table, const std::vector<uint64_t>& points);

}  // namespace powpart
