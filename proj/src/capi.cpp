#include "powpart.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <variant>

#include "asymptotic.hpp"
#include "cache.hpp"
#include "congruences.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "partitions.hpp"

// Opaque handle: either ring flavor behind one pointer.
struct powpart_table {
  std::variant<powpart::partition_table<powpart::exact_ring>,
               powpart::partition_table<powpart::mod_ring>>
      t;
};

namespace {

using namespace powpart;

thread_local std::string g_last_error;

powpart_status map_errc(errc c) {
  switch (c) {
    case errc::invalid_argument: return POWPART_ERR_INVALID_ARGUMENT;
    case errc::domain: return POWPART_ERR_DOMAIN;
    case errc::io: return POWPART_ERR_IO;
    case errc::cache_corrupt: return POWPART_ERR_CACHE_CORRUPT;
    case errc::locked: return POWPART_ERR_LOCKED;
    case errc::internal: return POWPART_ERR_INTERNAL;
  }
  return POWPART_ERR_INTERNAL;
}

template <class Fn>
powpart_status guard(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return POWPART_OK;
  } catch (const error& e) {
    g_last_error = e.what();
    return map_errc(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return POWPART_ERR_NOMEM;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return POWPART_ERR_INTERNAL;
  }
}

powpart_status invalid(const char* msg) {
  g_last_error = msg;
  return POWPART_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const partition_table<exact_ring>* exact_part(const powpart_table* t) {
  return std::get_if<partition_table<exact_ring>>(&t->t);
}

}  // namespace

extern "C" {

const char* powpart_version(void) { return "1.0.0"; }

const char* powpart_status_message(powpart_status status) {
  switch (status) {
    case POWPART_OK: return "ok";
    case POWPART_ERR_INVALID_ARGUMENT: return "invalid argument";
    case POWPART_ERR_DOMAIN: return "operation undefined for this ring or table";
    case POWPART_ERR_IO: return "I/O failure";
    case POWPART_ERR_CACHE_CORRUPT: return "cache file corrupt";
    case POWPART_ERR_LOCKED: return "cache file locked by another writer";
    case POWPART_ERR_NOMEM: return "out of memory";
    case POWPART_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* powpart_last_error(void) { return g_last_error.c_str(); }

powpart_status powpart_table_build(int d, uint64_t order, uint64_t modulus,
                                   powpart_table** out) {
  if (!out) return invalid("out pointer is NULL");
  *out = nullptr;
  return guard([&] {
    auto handle = std::make_unique<powpart_table>();
    if (modulus == 0)
      handle->t = staged_table(d, order, exact_ring{});
    else
      handle->t = staged_table(d, order, mod_ring(modulus));
    *out = handle.release();
  });
}

powpart_status powpart_table_build_cached(int d, uint64_t order, uint64_t modulus,
                                          const powpart_build_opts* opts, int* cache_hit,
                                          powpart_table** out) {
  if (!out) return invalid("out pointer is NULL");
  *out = nullptr;
  if (cache_hit) *cache_hit = 0;
  if (!opts || !opts->cache_dir) return invalid("build options must name a cache directory");
  return guard([&] {
    cached_build_options copts;
    copts.cache_dir = opts->cache_dir;
    copts.checkpoint_every = opts->checkpoint_every;
    if (opts->progress) {
      auto cb = opts->progress;
      void* arg = opts->progress_arg;
      copts.on_progress = [cb, arg](uint64_t stage, uint64_t total) { cb(stage, total, arg); };
    }
    bool hit = false;
    auto handle = std::make_unique<powpart_table>();
    if (modulus == 0)
      handle->t = cached_staged_table(d, order, exact_ring{}, copts, &hit);
    else
      handle->t = cached_staged_table(d, order, mod_ring(modulus), copts, &hit);
    if (cache_hit) *cache_hit = hit ? 1 : 0;
    *out = handle.release();
  });
}

powpart_status powpart_table_build_sigma(int d, uint64_t order, powpart_table** out) {
  if (!out) return invalid("out pointer is NULL");
  *out = nullptr;
  return guard([&] {
    auto handle = std::make_unique<powpart_table>();
    handle->t = sigma_recurrence_table(d, order);
    *out = handle.release();
  });
}

powpart_status powpart_cache_file_name(int d, uint64_t order, uint64_t modulus, char** out) {
  if (!out) return invalid("out pointer is NULL");
  *out = nullptr;
  return guard([&] { *out = dup_string(cache_file_name(d, order, modulus)); });
}

powpart_status powpart_table_load(const char* path, powpart_table** out) {
  if (!out) return invalid("out pointer is NULL");
  *out = nullptr;
  if (!path) return invalid("path is NULL");
  return guard([&] {
    cache_metadata meta = read_cache_header(path);
    auto handle = std::make_unique<powpart_table>();
    if (meta.modulus == 0)
      handle->t = load_table(path, exact_ring{});
    else
      handle->t = load_table(path, mod_ring(meta.modulus));
    *out = handle.release();
  });
}

powpart_status powpart_table_load_cached(const char* cache_dir, int d, uint64_t order,
                                         uint64_t modulus, powpart_table** out) {
  if (!out) return invalid("out pointer is NULL");
  *out = nullptr;
  if (!cache_dir) return invalid("cache_dir is NULL");
  return guard([&] {
    auto handle = std::make_unique<powpart_table>();
    if (modulus == 0)
      handle->t = load_cached_table(cache_dir, d, order, exact_ring{});
    else
      handle->t = load_cached_table(cache_dir, d, order, mod_ring(modulus));
    *out = handle.release();
  });
}

powpart_status powpart_table_save(const powpart_table* table, const char* path) {
  if (!table) return invalid("table is NULL");
  if (!path) return invalid("path is NULL");
  return guard([&] { std::visit([&](const auto& t) { save_table(t, path); }, table->t); });
}

void powpart_table_free(powpart_table* table) { delete table; }

int powpart_table_d(const powpart_table* table) {
  return table ? std::visit([](const auto& t) { return t.d; }, table->t) : 0;
}

uint64_t powpart_table_order(const powpart_table* table) {
  return table ? std::visit([](const auto& t) { return t.order(); }, table->t) : 0;
}

uint64_t powpart_table_modulus(const powpart_table* table) {
  return table ? std::visit([](const auto& t) { return t.ring.modulus(); }, table->t) : 0;
}

const char* powpart_table_method(const powpart_table* table) {
  return table ? std::visit([](const auto& t) { return method_name(t.method); }, table->t) : "";
}

powpart_status powpart_table_value(const powpart_table* table, uint64_t n, char** out) {
  if (!out) return invalid("out pointer is NULL");
  *out = nullptr;
  if (!table) return invalid("table is NULL");
  return guard([&] {
    std::visit(
        [&](const auto& t) {
          if (n > t.order())
            fail(errc::invalid_argument, "index " + std::to_string(n) + " beyond table order " +
                                             std::to_string(t.order()));
          *out = dup_string(t.ring.to_decimal(t.values[n]));
        },
        table->t);
  });
}

powpart_status powpart_table_residue(const powpart_table* table, uint64_t n, uint64_t m,
                                     uint64_t* out) {
  if (!out) return invalid("out pointer is NULL");
  if (!table) return invalid("table is NULL");
  return guard([&] {
    std::visit(
        [&](const auto& t) {
          if (n > t.order())
            fail(errc::invalid_argument, "index " + std::to_string(n) + " beyond table order " +
                                             std::to_string(t.order()));
          if (m < 2) fail(errc::invalid_argument, "modulus must be >= 2");
          *out = t.ring.residue(t.values[n], m);
        },
        table->t);
  });
}

void powpart_free_string(char* s) { std::free(s); }

powpart_status powpart_residue_histogram(const powpart_table* table, uint64_t m,
                                         uint64_t* counts) {
  if (!table) return invalid("table is NULL");
  if (!counts) return invalid("counts pointer is NULL");
  return guard([&] {
    std::visit(
        [&](const auto& t) {
          residue_histogram_result h = residue_histogram(t, m);
          for (uint64_t r = 0; r < m; ++r) counts[r] = h.counts[r];
        },
        table->t);
  });
}

powpart_status powpart_scan_thresholds(const powpart_table* table, powpart_threshold_kind kind,
                                       uint64_t scan_bound, powpart_threshold_report* out) {
  if (!out) return invalid("out pointer is NULL");
  if (!table) return invalid("table is NULL");
  return guard([&] {
    const auto* t = exact_part(table);
    if (!t) fail(errc::domain, "threshold scan requires an exact table");
    threshold_kind k =
        kind == POWPART_CONVEX ? threshold_kind::convex : threshold_kind::log_concave;
    threshold_report r = threshold_scan(*t, k, scan_bound);
    out->d = r.d;
    out->kind = kind;
    out->scan_bound = r.scan_bound;
    out->last_violation = r.last_violation;
    out->holds_from = r.holds_from;
  });
}

powpart_status powpart_threshold_references(int d, powpart_threshold_kind kind,
                                            uint64_t values[4], size_t* count) {
  if (!values || !count) return invalid("output pointers are NULL");
  *count = 0;
  return guard([&] {
    threshold_kind k =
        kind == POWPART_CONVEX ? threshold_kind::convex : threshold_kind::log_concave;
    std::vector<uint64_t> refs = threshold_references(d, k);
    for (size_t i = 0; i < refs.size() && i < 4; ++i) values[i] = refs[i];
    *count = refs.size() < 4 ? refs.size() : 4;
  });
}

powpart_status powpart_search_ap(const powpart_table* table, const powpart_ap_params* params,
                                 powpart_ap_hit** hits, size_t* hit_count) {
  if (!hits || !hit_count) return invalid("output pointers are NULL");
  *hits = nullptr;
  *hit_count = 0;
  if (!table) return invalid("table is NULL");
  if (!params) return invalid("params is NULL");
  return guard([&] {
    search_ap_params p;
    p.a_min = params->a_min;
    p.a_max = params->a_max;
    p.n_count = params->n_count;
    p.m_min = params->m_min;
    p.m_max = params->m_max;
    p.jobs = params->jobs;
    std::vector<ap_candidate> found =
        std::visit([&](const auto& t) { return search_ap(t, p); }, table->t);
    if (!found.empty()) {
      auto* arr =
          static_cast<powpart_ap_hit*>(std::malloc(found.size() * sizeof(powpart_ap_hit)));
      if (!arr) throw std::bad_alloc();
      for (size_t i = 0; i < found.size(); ++i)
        arr[i] = {found[i].d, found[i].m, found[i].r, found[i].a, found[i].b, found[i].n_count};
      *hits = arr;
    }
    *hit_count = found.size();
  });
}

void powpart_free_ap_hits(powpart_ap_hit* hits) { std::free(hits); }

powpart_status powpart_asymptotic_ratio(const powpart_table* table, uint64_t n, double* out) {
  if (!out) return invalid("out pointer is NULL");
  if (!table) return invalid("table is NULL");
  return guard([&] {
    const auto* t = exact_part(table);
    if (!t) fail(errc::domain, "asymptotic ratio requires an exact table");
    *out = asymptotic_ratio(*t, {n})[0].second;
  });
}

powpart_status powpart_verify_congruence(powpart_statement statement, int d, uint64_t p1,
                                         uint64_t p2, uint64_t n_max,
                                         powpart_congruence_report* out) {
  if (!out) return invalid("out pointer is NULL");
  return guard([&] {
    congruence_report r;
    switch (statement) {
      case POWPART_AB_PARITY: r = verify_ab_parity(d, p2, n_max); break;
      case POWPART_AC_CONVOLUTION: r = verify_ac_convolution(d, p1, p2, n_max); break;
      case POWPART_CRT_COMBINED: r = verify_crt_combined(d, p1, p2, n_max); break;
      case POWPART_AD_IDENTITY: r = verify_ad_identity(d, p2, n_max); break;
      default: fail(errc::invalid_argument, "unknown congruence statement");
    }
    out->d = r.d;
    out->p1 = r.p1;
    out->p2 = r.p2;
    out->n_max = r.n_max;
    out->verified_up_to = r.verified_up_to;
    out->first_failure =
        r.first_failure ? static_cast<int64_t>(*r.first_failure) : int64_t{-1};
  });
}

powpart_status powpart_restricted_value(char which, int d, uint64_t p1, uint64_t p2,
                                        uint64_t n, char** out) {
  if (!out) return invalid("out pointer is NULL");
  *out = nullptr;
  return guard([&] {
    exact_ring ring;
    series<exact_ring> s;
    switch (which) {
      case 'A': s = restricted_a(d, p1, p2, n, ring); break;
      case 'B': s = restricted_b(d, p1, p2, n, ring); break;
      case 'C': s = restricted_c(d, p1, p2, n, ring); break;
      case 'D': s = restricted_d(d, p2, n, ring); break;
      default:
        fail(errc::invalid_argument, std::string("unknown sequence '") + which +
                                         "', expected A, B, C, or D");
    }
    *out = dup_string(ring.to_decimal(s.coeff[n]));
  });
}

powpart_status powpart_sigma_d(uint64_t n, int d, uint64_t* out) {
  if (!out) return invalid("out pointer is NULL");
  return guard([&] {
    if (d < 1) fail(errc::invalid_argument, "d must be >= 1");
    *out = sigma_d(n, d);
  });
}

powpart_status powpart_oracle_count(int d, uint64_t n, char** out) {
  if (!out) return invalid("out pointer is NULL");
  *out = nullptr;
  return guard([&] { *out = dup_string(oracle_pd(d, n).get_str()); });
}

powpart_status powpart_wright_constant(int d, double* out) {
  if (!out) return invalid("out pointer is NULL");
  return guard([&] { *out = wright_constant(d); });
}

}  // extern "C"
