// End-to-end tests for the powpart binary.  The path to the binary comes in
// as the first positional argument (wired up by the build); every test runs
// it as a subprocess and inspects exit code, stdout, and stderr.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string g_cli;

struct temp_dir {
  fs::path path;
  temp_dir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("powpart_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~temp_dir() {
    std::error_code ignored;
    fs::remove_all(path, ignored);
  }
  std::string str() const { return path.string(); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

struct cli_result {
  int code = -1;
  std::string out;
  std::string err;
};

cli_result run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int call = 0;
  const fs::path errfile =
      fs::temp_directory_path() /
      ("powpart_cli_stderr_" + std::to_string(::getpid()) + "_" + std::to_string(call++));
  const std::string cmd =
      env_prefix + "'" + g_cli + "' " + args + " 2>'" + errfile.string() + "'";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  cli_result r;
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(errfile);
  std::error_code ignored;
  fs::remove(errfile, ignored);
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

size_t line_count(const std::string& s) {
  size_t lines = 0;
  for (char ch : s)
    if (ch == '\n') ++lines;
  return lines;
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start < s.size()) {
    size_t nl = s.find('\n', start);
    if (nl == std::string::npos) nl = s.size();
    out.push_back(s.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

std::vector<uint64_t> split_csv_u64(const std::string& line) {
  std::vector<uint64_t> out;
  size_t start = 0;
  while (start <= line.size()) {
    size_t comma = line.find(',', start);
    if (comma == std::string::npos) comma = line.size();
    out.push_back(std::stoull(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("version and usage errors") {
  CHECK(run_cli("--version").out.find("1.0.0") != std::string::npos);
  CHECK(run_cli("").code == 2);                        // a subcommand is required
  CHECK(run_cli("compute --bogus 1 --d 2 --N 5").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("--help").code == 0);
  CHECK(contains(run_cli("--help").out, "compute"));
}

TEST_CASE("compute: cache miss, then hit, deterministic output") {
  temp_dir dir;
  const std::string base = "compute --d 2 --N 1000 --cache-dir '" + dir.str() + "'";

  cli_result first = run_cli(base);
  CHECK(first.code == 0);
  CHECK(contains(first.out, "command=compute\n"));
  CHECK(contains(first.out, "ring=exact\n"));
  CHECK(contains(first.out, "method=staged\n"));
  CHECK(contains(first.out, "cache-hit=no\n"));
  CHECK(contains(first.out, "checksum="));
  CHECK(contains(first.err, "wall-time-ms="));

  const fs::path file = dir.path / "pd2_n1000_exact.tbl";
  REQUIRE(fs::exists(file));
  // Header + 1001 values + checksum trailer.
  CHECK(line_count(slurp(file)) == 1003);

  cli_result second = run_cli(base);
  CHECK(second.code == 0);
  CHECK(contains(second.out, "cache-hit=yes\n"));
  cli_result third = run_cli(base);
  CHECK(third.out == second.out);  // byte-identical stdout on reruns
}

TEST_CASE("compute: N=0 edge case") {
  temp_dir dir;
  CHECK(run_cli("compute --d 3 --N 0 --cache-dir '" + dir.str() + "'").code == 0);
  const std::string content = slurp(dir.path / "pd3_n0_exact.tbl");
  CHECK(line_count(content) == 3);
  CHECK(contains(content, "\n1\nsha256="));
}

TEST_CASE("compute: progress flag reports stages on stderr") {
  temp_dir dir;
  cli_result r =
      run_cli("compute --d 2 --N 100 --progress --cache-dir '" + dir.str() + "'");
  CHECK(r.code == 0);
  CHECK(contains(r.err, "stage 1/10"));
  CHECK(contains(r.err, "stage 10/10"));
  CHECK_FALSE(contains(r.out, "stage "));  // stdout stays machine-clean
}

TEST_CASE("table: histogram grid from a cached modular table") {
  temp_dir dir;
  REQUIRE(run_cli("compute --d 2 --N 1000 --mod 2520 --cache-dir '" + dir.str() + "'").code ==
          0);
  const std::string cmd = "table --d 2 --N 1000 --mod 2520 --cache-dir '" + dir.str() + "'";
  cli_result r = run_cli(cmd);
  CHECK(r.code == 0);
  std::vector<std::string> lines = split_lines(r.out);
  REQUIRE(lines.size() == 9);  // m = 2..10
  for (size_t i = 0; i < lines.size(); ++i) {
    std::vector<uint64_t> fields = split_csv_u64(lines[i]);
    const uint64_t m = i + 2;
    REQUIRE(fields.size() == m + 1);
    CHECK(fields[0] == m);
    uint64_t total = 0;
    for (size_t j = 1; j < fields.size(); ++j) total += fields[j];
    CHECK(total == 1001);  // n = 0..1000 inclusive
  }
  CHECK(run_cli(cmd).out == r.out);

  cli_result st = run_cli(cmd + " --format structured-text");
  CHECK(contains(st.out, "command=table\n"));
  CHECK(contains(st.out, "m=2 counts="));
  CHECK(contains(st.out, "m=10 counts="));
}

TEST_CASE("table: missing cache is an error that names the fix") {
  temp_dir dir;
  cli_result r = run_cli("table --d 2 --N 777 --cache-dir '" + dir.str() + "'");
  CHECK(r.code == 3);
  CHECK(contains(r.err, "run compute"));
}

TEST_CASE("table: corrupt cache file is refused") {
  temp_dir dir;
  REQUIRE(run_cli("compute --d 2 --N 50 --cache-dir '" + dir.str() + "'").code == 0);
  const fs::path file = dir.path / "pd2_n50_exact.tbl";
  std::string bytes = slurp(file);
  bytes[bytes.size() / 2] ^= 1;
  {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << bytes;
  }
  cli_result r = run_cli("table --d 2 --N 50 --cache-dir '" + dir.str() + "'");
  CHECK(r.code == 3);
  CHECK(contains(r.err, "powpart table:"));
}

TEST_CASE("thresholds: convexity and log-concavity with reference comparison") {
  temp_dir dir;
  REQUIRE(run_cli("compute --d 2 --N 3000 --cache-dir '" + dir.str() + "'").code == 0);
  const std::string base = " --d 2 --N 3000 --cache-dir '" + dir.str() + "'";

  cli_result cv = run_cli("thresholds --kind convex" + base);
  CHECK(cv.code == 0);
  CHECK(contains(cv.out, "kind=convex\n"));
  CHECK(contains(cv.out, "last-violation=378\n"));
  CHECK(contains(cv.out, "holds-from=379\n"));
  CHECK(contains(cv.out, "references=379\n"));
  CHECK(contains(cv.out, "matches-reference=yes\n"));

  CHECK(run_cli("thresholds --kind convex --expect-holds-from 379" + base).code == 0);
  CHECK(run_cli("thresholds --kind convex --expect-holds-from 999" + base).code == 1);

  cli_result lc = run_cli("thresholds --kind logconcave" + base);
  CHECK(lc.code == 0);
  CHECK(contains(lc.out, "holds-from=1086\n"));
  CHECK(contains(lc.out, "references=1042,1086\n"));
  CHECK(contains(lc.out, "note=published candidates disagree (1042 vs 1086)"));
  CHECK(contains(lc.out, "this scan matches 1086"));

  CHECK(run_cli("thresholds --kind banana" + base).code == 2);
}

TEST_CASE("verify: congruence statements") {
  cli_result ok = run_cli("verify --statement ab-parity --d 2 --p2 3 --N 500");
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "statement=ab-parity\n"));
  CHECK(contains(ok.out, "p1=2\n"));
  CHECK(contains(ok.out, "verified-up-to=500\n"));
  CHECK(contains(ok.out, "first-failure=none\n"));
  CHECK(contains(ok.out, "result=verified\n"));

  CHECK(run_cli("verify --statement ac-convolution --d 2 --p1 3 --p2 2 --N 200").code == 0);
  CHECK(run_cli("verify --statement crt-combined --d 2 --p1 3 --p2 5 --N 100").code == 0);
  CHECK(run_cli("verify --statement ad-identity --d 2 --p2 5 --N 200").code == 0);

  // p2 must be odd for the parity statement: usage error, with a hint.
  cli_result bad = run_cli("verify --statement ab-parity --d 2 --p2 4 --N 100");
  CHECK(bad.code == 2);
  CHECK(contains(bad.err, "powpart verify:"));
  CHECK(contains(bad.err, "--help"));

  CHECK(run_cli("verify --statement banana --d 2 --p2 3 --N 100").code == 2);
}

TEST_CASE("search-ap: explicit table file with planted hits") {
  temp_dir dir;
  // A constant table: every residue equals 3 mod 5, so every progression
  // that fits is a hit.  a=2 gives 2, a=3 gives 3 => 5 hits.
  const fs::path file = dir.path / "const.tbl";
  {
    std::ofstream out(file, std::ios::binary);
    out << "powpart-table v1 d=2 N=11 ring=mod modulus=5 method=staged\n";
    for (int i = 0; i < 12; ++i) out << "3\n";
    out << "sha256=49ee1434e3b542bdac3b7338c91d0baab29de42d30949919b013117aae7004cb\n";
  }
  const std::string base = "search-ap --table-file '" + file.string() +
                           "' --a-min 2 --a-max 3 --n-count 4 --m-min 5 --m-max 5";
  cli_result r = run_cli(base);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "table-ring=mod\n"));
  CHECK(contains(r.out, "hit a=2 b=0 m=5 r=3\n"));
  CHECK(contains(r.out, "hit a=3 b=2 m=5 r=3\n"));
  CHECK(contains(r.out, "hits=5\n"));
  CHECK(contains(r.out, "result=nonempty\n"));

  CHECK(run_cli(base + " --expect-empty").code == 1);

  cli_result csv = run_cli(base + " --format csv");
  std::vector<std::string> lines = split_lines(csv.out);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "a,b,m,r");
  CHECK(lines[1] == "2,0,5,3");
  CHECK(lines[5] == "3,2,5,3");
}

TEST_CASE("search-ap: real scan window comes up empty") {
  temp_dir dir;
  cli_result r = run_cli(
      "search-ap --d 2 --a-min 2 --a-max 30 --n-count 51 --m-min 2 --m-max 6 "
      "--expect-empty --jobs 2 --cache-dir '" +
      dir.str() + "'");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "a-range=2..30\n"));
  CHECK(contains(r.out, "hits=0\n"));
  CHECK(contains(r.out, "result=empty\n"));
  CHECK(contains(r.err, "table-build-ms="));  // no cache: built in memory
}

TEST_CASE("asymptotics: ratio report against the growth constant") {
  temp_dir dir;
  REQUIRE(run_cli("compute --d 2 --N 1000 --cache-dir '" + dir.str() + "'").code == 0);
  const std::string base = "asymptotics --d 2 --N 1000 --cache-dir '" + dir.str() + "'";
  cli_result r = run_cli(base);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "c=3.3074117"));
  CHECK(contains(r.out, "ratio n=10 "));
  CHECK(contains(r.out, "ratio n=100 "));
  CHECK(contains(r.out, "ratio n=1000 "));

  cli_result csv = run_cli(base + " --points 1,1000 --format csv");
  std::vector<std::string> lines = split_lines(csv.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "n,ratio");
  CHECK(contains(lines[1], "1,0"));  // log p(1) = 0

  // Asymptotics needs the exact cache; a modular one cannot stand in.
  temp_dir other;
  REQUIRE(run_cli("compute --d 2 --N 200 --mod 7 --cache-dir '" + other.str() + "'").code ==
          0);
  CHECK(run_cli("asymptotics --d 2 --N 200 --cache-dir '" + other.str() + "'").code == 3);
}

TEST_CASE("cache directory resolution: environment variable fallback") {
  temp_dir dir;
  cli_result r = run_cli("compute --d 2 --N 50",
                         "env POWPART_CACHE_DIR='" + dir.str() + "' ");
  CHECK(r.code == 0);
  CHECK(fs::exists(dir.path / "pd2_n50_exact.tbl"));
  // And the flag wins over the environment.
  temp_dir flag_dir;
  run_cli("compute --d 2 --N 60 --cache-dir '" + flag_dir.str() + "'",
          "env POWPART_CACHE_DIR='" + dir.str() + "' ");
  CHECK(fs::exists(flag_dir.path / "pd2_n60_exact.tbl"));
  CHECK_FALSE(fs::exists(dir.path / "pd2_n60_exact.tbl"));
}

int run_all(int argc, char** argv) {
  doctest::Context ctx;
  std::vector<char*> args;
  args.push_back(argv[0]);
  for (int i = 1; i < argc; ++i) {
    if (g_cli.empty() && argv[i][0] != '-')
      g_cli = argv[i];
    else
      args.push_back(argv[i]);
  }
  if (g_cli.empty()) {
    std::fprintf(stderr, "usage: test_cli <path-to-powpart-binary> [doctest options]\n");
    return 1;
  }
  ctx.applyCommandLine(static_cast<int>(args.size()), args.data());
  return ctx.run();
}

int main(int argc, char** argv) { return run_all(argc, argv); }
