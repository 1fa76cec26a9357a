#include "experiments.hpp"

#include <cmath>
#include <thread>

#include "asymptotic.hpp"

namespace powpart {

template <class Ring>
residue_histogram_result residue_histogram(const partition_table<Ring>& table, uint64_t m) {
  if (m < 2) fail(errc::invalid_argument, "histogram modulus must be >= 2");
  residue_histogram_result h{table.d, table.order(), m, std::vector<uint64_t>(m, 0)};
  for (const auto& v : table.values) ++h.counts[table.ring.residue(v, m)];
  return h;
}

template residue_histogram_result residue_histogram(const partition_table<exact_ring>&, uint64_t);
template residue_histogram_result residue_histogram(const partition_table<mod_ring>&, uint64_t);

namespace {

// Scan one block of a-values against a per-modulus residue array.
void scan_a_block(const std::vector<uint8_t>& res, int d, uint64_t m, uint64_t n_count,
                  uint64_t a_begin, uint64_t a_end, std::vector<ap_candidate>& out) {
  for (uint64_t a = a_begin; a < a_end; ++a)
    for (uint64_t b = 0; b < a; ++b) {
      const uint8_t r0 = res[b];
      bool constant = true;
      for (uint64_t n = 1; n < n_count; ++n)
        if (res[a * n + b] != r0) {
          constant = false;
          break;
        }
      if (constant) out.push_back({d, m, r0, a, b, n_count});
    }
}

}  // namespace

template <class Ring>
std::vector<ap_candidate> search_ap(const partition_table<Ring>& table,
                                    const search_ap_params& p) {
  if (p.a_min < 2 || p.a_max < p.a_min)
    fail(errc::invalid_argument, "need 2 <= a_min <= a_max");
  if (p.n_count < 2) fail(errc::invalid_argument, "need at least 2 checked values per progression");
  if (p.m_min < 2 || p.m_max < p.m_min || p.m_max > 255)
    fail(errc::invalid_argument, "need 2 <= m_min <= m_max <= 255");
  const uint64_t top_index = p.a_max * (p.n_count - 1) + (p.a_max - 1);
  if (table.order() < top_index)
    fail(errc::invalid_argument, "table too short for AP scan: need index " +
                                     std::to_string(top_index) + ", have " +
                                     std::to_string(table.order()));

  const unsigned jobs = std::max(1u, p.jobs);
  std::vector<ap_candidate> out;
  std::vector<uint8_t> res(top_index + 1);
  for (uint64_t m = p.m_min; m <= p.m_max; ++m) {
    for (uint64_t i = 0; i <= top_index; ++i)
      res[i] = static_cast<uint8_t>(table.ring.residue(table.values[i], m));

    const uint64_t a_span = p.a_max - p.a_min + 1;
    const unsigned blocks = static_cast<unsigned>(std::min<uint64_t>(jobs, a_span));
    std::vector<std::vector<ap_candidate>> block_out(blocks);
    if (blocks == 1) {
      scan_a_block(res, table.d, m, p.n_count, p.a_min, p.a_max + 1, block_out[0]);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < blocks; ++t) {
        const uint64_t lo = p.a_min + a_span * t / blocks;
        const uint64_t hi = p.a_min + a_span * (t + 1) / blocks;
        pool.emplace_back(scan_a_block, std::cref(res), table.d, m, p.n_count, lo, hi,
                          std::ref(block_out[t]));
      }
      for (auto& th : pool) th.join();
    }
    for (const auto& block : block_out) out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

template std::vector<ap_candidate> search_ap(const partition_table<exact_ring>&,
                                             const search_ap_params&);
template std::vector<ap_candidate> search_ap(const partition_table<mod_ring>&,
                                             const search_ap_params&);

const char* threshold_kind_name(threshold_kind k) {
  return k == threshold_kind::convex ? "convex" : "logconcave";
}

threshold_kind threshold_kind_from_name(const std::string& name) {
  if (name == "convex") return threshold_kind::convex;
  if (name == "logconcave") return threshold_kind::log_concave;
  fail(errc::invalid_argument, "unknown threshold kind: " + name);
}

threshold_report threshold_scan(const partition_table<exact_ring>& table, threshold_kind kind,
                                uint64_t scan_bound) {
  if (scan_bound == 0) scan_bound = table.order();
  if (scan_bound < 3) fail(errc::invalid_argument, "threshold scan needs bound >= 3");
  if (scan_bound > table.order())
    fail(errc::invalid_argument, "scan bound " + std::to_string(scan_bound) +
                                     " exceeds table order " + std::to_string(table.order()));
  const auto& v = table.values;
  uint64_t last = 0;
  mpz_class nd, lhs, rhs;
  for (uint64_t n = 1; n < scan_bound; ++n) {
    mpz_ui_pow_ui(nd.get_mpz_t(), n, static_cast<unsigned long>(table.d));
    bool ok;
    if (kind == threshold_kind::convex) {
      lhs = 2 * v[n] * nd;
      rhs = (v[n - 1] + v[n + 1]) * (nd - 1);
      ok = lhs <= rhs;
    } else {
      lhs = v[n] * v[n] * nd;
      rhs = v[n - 1] * v[n + 1] * (nd + 1);
      ok = lhs >= rhs;
    }
    if (!ok) last = n;
  }
  return {table.d, kind, scan_bound, last, last + 1};
}

std::vector<uint64_t> threshold_references(int d, threshold_kind kind) {
  if (kind == threshold_kind::convex) {
    switch (d) {
      case 2: return {379};
      case 3: return {6769};
      case 4: return {239603};
    }
  } else {
    switch (d) {
      case 2: return {1042, 1086};
      case 3: return {15656};
      case 4: return {637855};
    }
  }
  return {};
}

std::vector<std::pair<uint64_t, double>> asymptotic_ratio(
    const partition_table<exact_ring>& table, const std::vector<uint64_t>& points) {
  const double cd = wright_constant(table.d);
  std::vector<std::pair<uint64_t, double>> out;
  out.reserve(points.size());
  for (uint64_t n : points) {
    if (n == 0) fail(errc::invalid_argument, "asymptotic ratio is undefined at n = 0");
    if (n > table.order())
      fail(errc::invalid_argument, "sample point " + std::to_string(n) + " beyond table order");
    const double scale = cd * std::pow(static_cast<double>(n), 1.0 / (table.d + 1));
    out.emplace_back(n, log_mpz(table.values[n]) / scale);
  }
  return out;
}

}  // namespace powpart
