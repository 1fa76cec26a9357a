// powpart command-line front end.
//
// Thin shell over the public C API (powpart.h): every subcommand is a small
// wrapper that builds or loads a table, runs one library call, and prints a
// machine-first report.  Stdout is deterministic for a given config + cache;
// timing and progress go to stderr.
//
// Exit codes: 0 success / expectation met, 1 expectation failed, 2 usage
// error, 3 cache/IO/internal error.

#include <chrono>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "powpart.h"

namespace {

int exit_for(powpart_status s) {
  switch (s) {
    case POWPART_OK: return 0;
    case POWPART_ERR_INVALID_ARGUMENT:
    case POWPART_ERR_DOMAIN: return 2;
    default: return 3;  // I/O, cache, lock, memory, internal
  }
}

int report_error(const char* cmd, powpart_status s) {
  std::fprintf(stderr, "powpart %s: %s", cmd, powpart_status_message(s));
  const char* detail = powpart_last_error();
  if (detail && *detail) std::fprintf(stderr, ": %s", detail);
  std::fprintf(stderr, "\n");
  if (exit_for(s) == 2)
    std::fprintf(stderr, "See 'powpart %s --help' for accepted parameters.\n", cmd);
  return exit_for(s);
}

struct table_handle {
  powpart_table* t = nullptr;
  ~table_handle() { powpart_table_free(t); }
};

struct string_handle {
  char* s = nullptr;
  ~string_handle() { powpart_free_string(s); }
};

// --cache-dir flag beats the POWPART_CACHE_DIR environment variable beats ./cache.
std::string resolve_cache_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("POWPART_CACHE_DIR");
  if (env && *env) return env;
  return "cache";
}

std::string ring_label(uint64_t modulus) {
  return modulus ? "mod" : "exact";
}

// The cache file ends with "sha256=<64 hex>\n"; read it without slurping the
// whole file.
std::string read_trailing_checksum(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) return "unavailable";
  std::streamoff size = in.tellg();
  std::streamoff back = size < 80 ? size : 80;
  in.seekg(-back, std::ios::end);
  std::string tail(static_cast<size_t>(back), '\0');
  in.read(tail.data(), back);
  size_t pos = tail.rfind("sha256=");
  if (pos == std::string::npos) return "unavailable";
  std::string line = tail.substr(pos + 7);
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
  return line;
}

void progress_to_stderr(uint64_t stage, uint64_t total, void*) {
  std::fprintf(stderr, "stage %" PRIu64 "/%" PRIu64 "\n", stage, total);
}

// ------------------------------------------------------------------ compute

struct compute_cfg {
  int d = 2;
  uint64_t n = 0;
  uint64_t mod = 0;
  uint64_t checkpoint_every = 0;
  bool progress = false;
  std::string cache_dir;
};

int run_compute(const compute_cfg& c) {
  const std::string dir = resolve_cache_dir(c.cache_dir);
  auto t0 = std::chrono::steady_clock::now();

  powpart_build_opts opts{};
  opts.cache_dir = dir.c_str();
  opts.checkpoint_every = c.checkpoint_every;
  if (c.progress) opts.progress = progress_to_stderr;

  int cache_hit = 0;
  table_handle t;
  powpart_status s = powpart_table_build_cached(c.d, c.n, c.mod, &opts, &cache_hit, &t.t);
  if (s != POWPART_OK) return report_error("compute", s);

  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();

  string_handle name;
  if (powpart_cache_file_name(c.d, c.n, c.mod, &name.s) != POWPART_OK)
    return report_error("compute", POWPART_ERR_INTERNAL);
  const std::string path = dir + "/" + name.s;

  std::printf("command=compute\n");
  std::printf("d=%d\n", c.d);
  std::printf("N=%" PRIu64 "\n", c.n);
  std::printf("ring=%s\n", ring_label(c.mod).c_str());
  if (c.mod) std::printf("modulus=%" PRIu64 "\n", c.mod);
  std::printf("method=%s\n", powpart_table_method(t.t));
  std::printf("cache-file=%s\n", path.c_str());
  std::printf("cache-hit=%s\n", cache_hit ? "yes" : "no");
  std::printf("checksum=%s\n", read_trailing_checksum(path).c_str());
  std::fprintf(stderr, "wall-time-ms=%lld\n", static_cast<long long>(ms));
  return 0;
}

// ------------------------------------------------------------------ table

struct table_cfg {
  int d = 2;
  uint64_t n = 0;
  uint64_t mod = 0;
  std::string cache_dir;
  std::string format = "csv";
  bool pretty = false;
};

int run_table(const table_cfg& c) {
  const std::string dir = resolve_cache_dir(c.cache_dir);
  table_handle t;
  powpart_status s = powpart_table_load_cached(dir.c_str(), c.d, c.n, c.mod, &t.t);
  if (s != POWPART_OK) return report_error("table", s);

  std::vector<std::vector<uint64_t>> rows;
  for (uint64_t m = 2; m <= 10; ++m) {
    std::vector<uint64_t> counts(m, 0);
    s = powpart_residue_histogram(t.t, m, counts.data());
    if (s != POWPART_OK) return report_error("table", s);
    rows.push_back(std::move(counts));
  }

  if (c.format == "structured-text") {
    std::printf("command=table\n");
    std::printf("d=%d\n", c.d);
    std::printf("N=%" PRIu64 "\n", c.n);
    for (const auto& counts : rows) {
      std::printf("m=%zu counts=", counts.size());
      for (size_t r = 0; r < counts.size(); ++r)
        std::printf("%s%" PRIu64, r ? "," : "", counts[r]);
      std::printf("\n");
    }
    return 0;
  }

  // CSV, one row per modulus m = 2..10: m,count(r=0),...,count(r=m-1).
  int width = 0;
  if (c.pretty)
    for (const auto& counts : rows)
      for (uint64_t v : counts) {
        int w = std::snprintf(nullptr, 0, "%" PRIu64, v);
        if (w > width) width = w;
      }
  for (const auto& counts : rows) {
    if (c.pretty)
      std::printf("m=%2zu |", counts.size());
    else
      std::printf("%zu", counts.size());
    for (uint64_t v : counts) {
      if (c.pretty)
        std::printf(" %*" PRIu64, width, v);
      else
        std::printf(",%" PRIu64, v);
    }
    std::printf("\n");
  }
  return 0;
}

// ------------------------------------------------------------------ search-ap

struct search_ap_cfg {
  int d = 2;
  uint64_t n = 0;  // 0 = smallest table covering the scan
  uint64_t mod = 0;
  uint64_t a_min = 2, a_max = 999;
  uint64_t n_count = 101;
  uint64_t m_min = 2, m_max = 13;
  unsigned jobs = 1;
  bool expect_empty = false;
  std::string table_file;
  std::string cache_dir;
  std::string format = "structured-text";
};

// lcm(m_min..m_max) when it fits a mod ring; 0 (exact) otherwise.
uint64_t grid_modulus(uint64_t m_min, uint64_t m_max) {
  uint64_t l = 1;
  for (uint64_t m = m_min; m <= m_max; ++m) {
    uint64_t g = std::gcd(l, m);
    unsigned __int128 nl = static_cast<unsigned __int128>(l / g) * m;
    if (nl > 0xffffffffu) return 0;
    l = static_cast<uint64_t>(nl);
  }
  return l < 2 ? 0 : l;
}

int run_search_ap(const search_ap_cfg& c) {
  if (c.a_max < c.a_min || c.n_count < 2) {
    std::fprintf(stderr, "powpart search-ap: need a_min <= a_max and n-count >= 2\n");
    return 2;
  }
  const uint64_t top_index = c.a_max * (c.n_count - 1) + (c.a_max - 1);

  table_handle t;
  powpart_status s;
  if (!c.table_file.empty()) {
    s = powpart_table_load(c.table_file.c_str(), &t.t);
    if (s != POWPART_OK) return report_error("search-ap", s);
  } else {
    const uint64_t order = c.n ? c.n : top_index;
    const uint64_t modulus = c.mod ? c.mod : grid_modulus(c.m_min, c.m_max);
    // Reuse a matching cache file when one exists; otherwise work in memory
    // (subcommands other than compute never write the cache).
    const std::string dir = resolve_cache_dir(c.cache_dir);
    s = powpart_table_load_cached(dir.c_str(), c.d, order, modulus, &t.t);
    if (s == POWPART_ERR_IO) {
      auto t0 = std::chrono::steady_clock::now();
      s = powpart_table_build(c.d, order, modulus, &t.t);
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      std::fprintf(stderr, "table-build-ms=%lld\n", static_cast<long long>(ms));
    }
    if (s != POWPART_OK) return report_error("search-ap", s);
  }

  powpart_ap_params params{c.a_min, c.a_max, c.n_count, c.m_min, c.m_max, c.jobs};
  powpart_ap_hit* hits = nullptr;
  size_t hit_count = 0;
  auto t0 = std::chrono::steady_clock::now();
  s = powpart_search_ap(t.t, &params, &hits, &hit_count);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  if (s != POWPART_OK) return report_error("search-ap", s);

  if (c.format == "csv") {
    std::printf("a,b,m,r\n");
    for (size_t i = 0; i < hit_count; ++i)
      std::printf("%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64 "\n", hits[i].a, hits[i].b,
                  hits[i].m, hits[i].r);
  } else {
    std::printf("command=search-ap\n");
    std::printf("d=%d\n", powpart_table_d(t.t));
    std::printf("a-range=%" PRIu64 "..%" PRIu64 "\n", c.a_min, c.a_max);
    std::printf("n-count=%" PRIu64 "\n", c.n_count);
    std::printf("m-range=%" PRIu64 "..%" PRIu64 "\n", c.m_min, c.m_max);
    std::printf("table-order=%" PRIu64 "\n", powpart_table_order(t.t));
    std::printf("table-ring=%s\n", ring_label(powpart_table_modulus(t.t)).c_str());
    for (size_t i = 0; i < hit_count; ++i)
      std::printf("hit a=%" PRIu64 " b=%" PRIu64 " m=%" PRIu64 " r=%" PRIu64 "\n", hits[i].a,
                  hits[i].b, hits[i].m, hits[i].r);
    std::printf("hits=%zu\n", hit_count);
    std::printf("result=%s\n", hit_count == 0 ? "empty" : "nonempty");
  }
  powpart_free_ap_hits(hits);
  std::fprintf(stderr, "scan-ms=%lld\n", static_cast<long long>(ms));

  if (c.expect_empty && hit_count > 0) return 1;
  return 0;
}

// ------------------------------------------------------------------ thresholds

struct thresholds_cfg {
  int d = 2;
  uint64_t n = 0;
  std::string kind = "convex";
  uint64_t scan_bound = 0;
  int64_t expect_holds_from = -1;
  std::string cache_dir;
};

int run_thresholds(const thresholds_cfg& c) {
  const std::string dir = resolve_cache_dir(c.cache_dir);
  table_handle t;
  powpart_status s = powpart_table_load_cached(dir.c_str(), c.d, c.n, 0, &t.t);
  if (s != POWPART_OK) return report_error("thresholds", s);

  const powpart_threshold_kind kind =
      c.kind == "convex" ? POWPART_CONVEX : POWPART_LOG_CONCAVE;
  powpart_threshold_report report{};
  auto t0 = std::chrono::steady_clock::now();
  s = powpart_scan_thresholds(t.t, kind, c.scan_bound, &report);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  if (s != POWPART_OK) return report_error("thresholds", s);

  uint64_t refs[4];
  size_t ref_count = 0;
  if (powpart_threshold_references(c.d, kind, refs, &ref_count) != POWPART_OK) ref_count = 0;

  std::printf("command=thresholds\n");
  std::printf("kind=%s\n", c.kind.c_str());
  std::printf("d=%d\n", c.d);
  std::printf("N=%" PRIu64 "\n", c.n);
  std::printf("scan-bound=%" PRIu64 "\n", report.scan_bound);
  std::printf("last-violation=%" PRIu64 "\n", report.last_violation);
  std::printf("holds-from=%" PRIu64 "\n", report.holds_from);
  if (ref_count == 0) {
    std::printf("references=none\n");
  } else {
    std::printf("references=");
    bool matched = false;
    for (size_t i = 0; i < ref_count; ++i) {
      std::printf("%s%" PRIu64, i ? "," : "", refs[i]);
      if (refs[i] == report.holds_from) matched = true;
    }
    std::printf("\n");
    std::printf("matches-reference=%s\n", matched ? "yes" : "no");
    if (ref_count > 1) {
      std::printf("note=published candidates disagree (");
      for (size_t i = 0; i < ref_count; ++i) std::printf("%s%" PRIu64, i ? " vs " : "", refs[i]);
      std::printf("); this scan matches %s\n",
                  matched ? std::to_string(report.holds_from).c_str() : "neither");
    }
  }
  std::fprintf(stderr, "scan-ms=%lld\n", static_cast<long long>(ms));

  if (c.expect_holds_from >= 0 &&
      static_cast<uint64_t>(c.expect_holds_from) != report.holds_from)
    return 1;
  return 0;
}

// ------------------------------------------------------------------ verify

struct verify_cfg {
  std::string statement;
  int d = 2;
  uint64_t p1 = 0;
  uint64_t p2 = 0;
  uint64_t n = 0;
};

int run_verify(const verify_cfg& c) {
  powpart_statement st;
  uint64_t p1 = c.p1;
  if (c.statement == "ab-parity") {
    st = POWPART_AB_PARITY;
    p1 = 2;
  } else if (c.statement == "ac-convolution") {
    st = POWPART_AC_CONVOLUTION;
  } else if (c.statement == "crt-combined") {
    st = POWPART_CRT_COMBINED;
  } else if (c.statement == "ad-identity") {
    st = POWPART_AD_IDENTITY;
    p1 = 2;
  } else {
    std::fprintf(stderr, "powpart verify: unknown statement '%s'\n", c.statement.c_str());
    return 2;
  }

  powpart_congruence_report report{};
  auto t0 = std::chrono::steady_clock::now();
  powpart_status s = powpart_verify_congruence(st, c.d, p1, c.p2, c.n, &report);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  if (s != POWPART_OK) return report_error("verify", s);

  std::printf("command=verify\n");
  std::printf("statement=%s\n", c.statement.c_str());
  std::printf("d=%d\n", report.d);
  std::printf("p1=%" PRIu64 "\n", report.p1);
  std::printf("p2=%" PRIu64 "\n", report.p2);
  std::printf("N=%" PRIu64 "\n", report.n_max);
  std::printf("verified-up-to=%" PRIu64 "\n", report.verified_up_to);
  if (report.first_failure < 0)
    std::printf("first-failure=none\n");
  else
    std::printf("first-failure=%" PRId64 "\n", report.first_failure);
  std::printf("result=%s\n", report.first_failure < 0 ? "verified" : "FAILED");
  std::fprintf(stderr, "verify-ms=%lld\n", static_cast<long long>(ms));
  return report.first_failure < 0 ? 0 : 1;
}

// ------------------------------------------------------------------ asymptotics

struct asymptotics_cfg {
  int d = 2;
  uint64_t n = 0;
  std::vector<uint64_t> points;
  std::string cache_dir;
  std::string format = "structured-text";
};

int run_asymptotics(const asymptotics_cfg& c) {
  const std::string dir = resolve_cache_dir(c.cache_dir);
  table_handle t;
  powpart_status s = powpart_table_load_cached(dir.c_str(), c.d, c.n, 0, &t.t);
  if (s != POWPART_OK) return report_error("asymptotics", s);

  std::vector<uint64_t> points = c.points;
  if (points.empty()) {
    for (uint64_t p = 10; p <= c.n && p != 0; p *= 10) points.push_back(p);
    if (points.empty()) points.push_back(c.n ? c.n : 1);
  }

  double cd = 0;
  s = powpart_wright_constant(c.d, &cd);
  if (s != POWPART_OK) return report_error("asymptotics", s);

  std::vector<double> ratios(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    s = powpart_asymptotic_ratio(t.t, points[i], &ratios[i]);
    if (s != POWPART_OK) return report_error("asymptotics", s);
  }

  if (c.format == "csv") {
    std::printf("n,ratio\n");
    for (size_t i = 0; i < points.size(); ++i)
      std::printf("%" PRIu64 ",%.17g\n", points[i], ratios[i]);
  } else {
    std::printf("command=asymptotics\n");
    std::printf("d=%d\n", c.d);
    std::printf("N=%" PRIu64 "\n", c.n);
    std::printf("c=%.17g\n", cd);
    for (size_t i = 0; i < points.size(); ++i)
      std::printf("ratio n=%" PRIu64 " value=%.17g\n", points[i], ratios[i]);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"powpart: partitions into d-th powers — tables, congruence checks, "
               "threshold scans.\nCache directory: --cache-dir, else $POWPART_CACHE_DIR, "
               "else ./cache.\nExit codes: 0 ok/expectation met, 1 expectation failed, "
               "2 usage, 3 cache/IO."};
  app.require_subcommand(1);
  app.set_version_flag("--version", powpart_version());

  int rc = 0;

  compute_cfg cc;
  auto* compute = app.add_subcommand("compute", "Build p_d(0..N) and write the cache file");
  compute->add_option("--d", cc.d, "power d >= 1")->required();
  compute->add_option("--N", cc.n, "highest index N")->required();
  compute->add_option("--mod", cc.mod, "modulus (omit for exact big integers)");
  compute->add_option("--cache-dir", cc.cache_dir, "cache directory");
  compute->add_option("--checkpoint-every", cc.checkpoint_every,
                      "write a resumable checkpoint every K DP stages (0 = never)");
  compute->add_flag("--progress", cc.progress, "report DP stages on stderr");
  compute->callback([&] { rc = run_compute(cc); });

  table_cfg tc;
  auto* table = app.add_subcommand(
      "table", "Residue histogram grid m=2..10 from a cached table (CSV rows m,counts...)");
  table->add_option("--d", tc.d, "power d >= 1")->required();
  table->add_option("--N", tc.n, "highest index N")->required();
  table->add_option("--mod", tc.mod, "cache ring modulus (omit for the exact cache)");
  table->add_option("--cache-dir", tc.cache_dir, "cache directory");
  table->add_option("--format", tc.format, "csv | structured-text")
      ->check(CLI::IsMember({"csv", "structured-text"}));
  table->add_flag("--pretty", tc.pretty, "aligned human-readable columns");
  table->callback([&] { rc = run_table(tc); });

  search_ap_cfg sc;
  auto* search = app.add_subcommand(
      "search-ap", "Scan progressions a*n+b for constant p_d residues mod m");
  search->add_option("--d", sc.d, "power d >= 1");
  search->add_option("--N", sc.n, "table order (default: smallest covering the scan)");
  search->add_option("--mod", sc.mod, "table modulus (default: lcm of the m range)");
  search->add_option("--a-min", sc.a_min, "smallest step a");
  search->add_option("--a-max", sc.a_max, "largest step a");
  search->add_option("--n-count", sc.n_count, "consecutive n checked per progression");
  search->add_option("--m-min", sc.m_min, "smallest modulus");
  search->add_option("--m-max", sc.m_max, "largest modulus");
  search->add_option("--jobs", sc.jobs, "worker threads");
  search->add_flag("--expect-empty", sc.expect_empty, "exit 1 if any hit is found");
  search->add_option("--table-file", sc.table_file, "explicit table file (bypasses the cache)");
  search->add_option("--cache-dir", sc.cache_dir, "cache directory");
  search->add_option("--format", sc.format, "structured-text | csv")
      ->check(CLI::IsMember({"csv", "structured-text"}));
  search->callback([&] { rc = run_search_ap(sc); });

  thresholds_cfg hc;
  auto* thresholds = app.add_subcommand(
      "thresholds", "Convexity / log-concavity scan over a cached exact table");
  thresholds->add_option("--d", hc.d, "power d >= 1")->required();
  thresholds->add_option("--N", hc.n, "highest index N of the exact cache")->required();
  thresholds->add_option("--kind", hc.kind, "convex | logconcave")
      ->required()
      ->check(CLI::IsMember({"convex", "logconcave"}));
  thresholds->add_option("--scan-bound", hc.scan_bound,
                         "scan n = 1..bound-1 (default: the whole table)");
  thresholds->add_option("--expect-holds-from", hc.expect_holds_from,
                         "exit 1 unless holds-from equals this");
  thresholds->add_option("--cache-dir", hc.cache_dir, "cache directory");
  thresholds->callback([&] { rc = run_thresholds(hc); });

  verify_cfg vc;
  auto* verify = app.add_subcommand("verify", "Check a congruence statement up to N");
  verify->add_option("--statement", vc.statement,
                     "ab-parity | ac-convolution | crt-combined | ad-identity")
      ->required()
      ->check(CLI::IsMember({"ab-parity", "ac-convolution", "crt-combined", "ad-identity"}));
  verify->add_option("--d", vc.d, "power d >= 1")->required();
  verify->add_option("--p1", vc.p1, "first parameter (fixed to 2 for ab-parity/ad-identity)");
  verify->add_option("--p2", vc.p2, "second parameter")->required();
  verify->add_option("--N", vc.n, "verify n = 0..N")->required();
  verify->callback([&] { rc = run_verify(vc); });

  asymptotics_cfg ac;
  auto* asym = app.add_subcommand(
      "asymptotics", "log p_d(n) against c_d n^(1/(d+1)) over a cached exact table");
  asym->add_option("--d", ac.d, "power d >= 2")->required();
  asym->add_option("--N", ac.n, "highest index N of the exact cache")->required();
  asym->add_option("--points", ac.points, "sample points (default: powers of 10)")
      ->delimiter(',');
  asym->add_option("--cache-dir", ac.cache_dir, "cache directory");
  asym->add_option("--format", ac.format, "structured-text | csv")
      ->check(CLI::IsMember({"csv", "structured-text"}));
  asym->callback([&] { rc = run_asymptotics(ac); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return rc;
}
