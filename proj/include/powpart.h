/* powpart — partitions into d-th powers.
 *
 * C interface to the computation core.  All functions return a
 * powpart_status; results come back through out-parameters.  Objects cross
 * the boundary as opaque handles, big integers as decimal strings.  On
 * failure, powpart_last_error() gives a human-readable detail message for
 * the most recent failing call on the current thread.
 */

#ifndef POWPART_H
#define POWPART_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum powpart_status {
  POWPART_OK = 0,
  POWPART_ERR_INVALID_ARGUMENT = 1, /* bad parameter (d, modulus, range, ...) */
  POWPART_ERR_DOMAIN = 2,           /* operation undefined for this ring/table */
  POWPART_ERR_IO = 3,               /* file system failure or missing file */
  POWPART_ERR_CACHE_CORRUPT = 4,    /* checksum or format mismatch in a cache file */
  POWPART_ERR_LOCKED = 5,           /* another writer holds the cache lock */
  POWPART_ERR_NOMEM = 6,
  POWPART_ERR_INTERNAL = 7
} powpart_status;

const char* powpart_version(void);
const char* powpart_status_message(powpart_status status);
/* Detail for the most recent failure on this thread; empty string if none. */
const char* powpart_last_error(void);

/* ------------------------------------------------------------------ */
/* Partition tables: p_d(0..N), exact big integers or residues mod m. */

typedef struct powpart_table powpart_table;

/* modulus = 0: exact values; modulus in [2, 2^32): residues. */
powpart_status powpart_table_build(int d, uint64_t order, uint64_t modulus,
                                   powpart_table** out);

typedef struct powpart_build_opts {
  const char* cache_dir;     /* directory for table + checkpoint files */
  uint64_t checkpoint_every; /* write a resumable checkpoint every this many
                                DP stages; 0 = never */
  void (*progress)(uint64_t stage, uint64_t total_stages, void* arg);
  void* progress_arg;
} powpart_build_opts;

/* Cache-aware build: returns the cached table if a valid file exists
 * (*cache_hit = 1), otherwise builds (resuming a checkpoint if present),
 * saves, and deletes the checkpoint.  A corrupt cache file is an error,
 * never silently rebuilt. */
powpart_status powpart_table_build_cached(int d, uint64_t order, uint64_t modulus,
                                          const powpart_build_opts* opts, int* cache_hit,
                                          powpart_table** out);

/* O(N^2) cross-check path via the sigma divisor-sum recurrence (exact only). */
powpart_status powpart_table_build_sigma(int d, uint64_t order, powpart_table** out);

/* Canonical cache file name for (d, N, modulus), e.g. pd2_n100000_exact.tbl;
 * free with powpart_free_string. */
powpart_status powpart_cache_file_name(int d, uint64_t order, uint64_t modulus, char** out);

/* Read/write the structured-text cache format (checksummed).  Load refuses
 * unfinished checkpoints and detects any single-byte corruption. */
powpart_status powpart_table_load(const char* path, powpart_table** out);
powpart_status powpart_table_load_cached(const char* cache_dir, int d, uint64_t order,
                                         uint64_t modulus, powpart_table** out);
powpart_status powpart_table_save(const powpart_table* table, const char* path);
void powpart_table_free(powpart_table* table);

int powpart_table_d(const powpart_table* table);
uint64_t powpart_table_order(const powpart_table* table);
uint64_t powpart_table_modulus(const powpart_table* table); /* 0 = exact */
const char* powpart_table_method(const powpart_table* table);

/* p_d(n) as a decimal string; free with powpart_free_string. */
powpart_status powpart_table_value(const powpart_table* table, uint64_t n, char** out);
/* p_d(n) mod m; for modular tables m must divide the table modulus. */
powpart_status powpart_table_residue(const powpart_table* table, uint64_t n, uint64_t m,
                                     uint64_t* out);

void powpart_free_string(char* s);

/* ------------------------------------------------------------------ */
/* Experiments. */

/* counts must have room for m entries; counts[r] = #{n <= N : p_d(n) == r (mod m)},
 * counted over n = 0..N inclusive. */
powpart_status powpart_residue_histogram(const powpart_table* table, uint64_t m,
                                         uint64_t* counts);

typedef enum powpart_threshold_kind {
  POWPART_CONVEX = 0,
  POWPART_LOG_CONCAVE = 1
} powpart_threshold_kind;

typedef struct powpart_threshold_report {
  int d;
  powpart_threshold_kind kind;
  uint64_t scan_bound;     /* n scanned over 1..scan_bound-1 */
  uint64_t last_violation; /* largest scanned n violating the inequality */
  uint64_t holds_from;     /* last_violation + 1 */
} powpart_threshold_report;

/* Exact integer comparisons only; requires an exact table.  scan_bound = 0
 * scans the whole table. */
powpart_status powpart_scan_thresholds(const powpart_table* table,
                                       powpart_threshold_kind kind, uint64_t scan_bound,
                                       powpart_threshold_report* out);

/* Previously published threshold values for comparison; writes up to 4
 * entries.  d = 2 log-concave has two competing candidates. */
powpart_status powpart_threshold_references(int d, powpart_threshold_kind kind,
                                            uint64_t values[4], size_t* count);

typedef struct powpart_ap_params {
  uint64_t a_min, a_max; /* progression steps, a >= 2 */
  uint64_t n_count;      /* checks n = 0..n_count-1 */
  uint64_t m_min, m_max; /* moduli */
  unsigned jobs;         /* worker threads; 0 or 1 = sequential */
} powpart_ap_params;

typedef struct powpart_ap_hit {
  int d;
  uint64_t m, r, a, b;
  uint64_t n_count;
} powpart_ap_hit;

/* Finds progressions a*n + b whose p_d values are constant mod m for all
 * checked n.  *hits is a malloc'd array of *hit_count entries (NULL when
 * empty); free with powpart_free_ap_hits. */
powpart_status powpart_search_ap(const powpart_table* table,
                                 const powpart_ap_params* params, powpart_ap_hit** hits,
                                 size_t* hit_count);
void powpart_free_ap_hits(powpart_ap_hit* hits);

/* log p_d(n) / (c_d n^(1/(d+1))); requires an exact table and n >= 1. */
powpart_status powpart_asymptotic_ratio(const powpart_table* table, uint64_t n, double* out);

/* ------------------------------------------------------------------ */
/* Restricted sequences and congruence checks. */

typedef enum powpart_statement {
  POWPART_AB_PARITY = 0,      /* A_{2,p2}(n) == B_{2,p2}(n)  (mod 2) */
  POWPART_AC_CONVOLUTION = 1, /* sum A(i) C(n-i) == 0  (mod p1), n >= 1 */
  POWPART_CRT_COMBINED = 2,   /* triple convolution == a C' + b C''  (mod p1 p2) */
  POWPART_AD_IDENTITY = 3     /* A_{2,p2}(n) == D_{p2}(n) exactly */
} powpart_statement;

typedef struct powpart_congruence_report {
  int d;
  uint64_t p1, p2, n_max;
  uint64_t verified_up_to;
  int64_t first_failure; /* -1 = no failure */
} powpart_congruence_report;

/* p1 is fixed to 2 by the statement for AB_PARITY and AD_IDENTITY and is
 * ignored there. */
powpart_status powpart_verify_congruence(powpart_statement statement, int d, uint64_t p1,
                                         uint64_t p2, uint64_t n_max,
                                         powpart_congruence_report* out);

/* Coefficient n of a restricted sequence, decimal string.
 * which: 'A' (bases coprime to p1 and p2), 'B' (distinct colored parts),
 * 'C' (colored parts), 'D' (odd bases, bounded multiplicity; p1 ignored). */
powpart_status powpart_restricted_value(char which, int d, uint64_t p1, uint64_t p2,
                                        uint64_t n, char** out);

/* ------------------------------------------------------------------ */
/* Scalar helpers. */

/* sigma^(d)(n): sum of k^d over k^d | n. */
powpart_status powpart_sigma_d(uint64_t n, int d, uint64_t* out);
/* Brute-force p_d(n) with no shared code with the table builders; small n. */
powpart_status powpart_oracle_count(int d, uint64_t n, char** out);
/* Growth constant c_d with log p_d(n) ~ c_d n^(1/(d+1)); d >= 2. */
powpart_status powpart_wright_constant(int d, double* out);

#ifdef __cplusplus
}
#endif

#endif /* POWPART_H */
