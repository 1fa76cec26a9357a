#include "cache.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

namespace powpart {

namespace {

class sha256_stream {
 public:
  sha256_stream() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1)
      fail(errc::internal, "SHA-256 init failed");
  }
  ~sha256_stream() { EVP_MD_CTX_free(ctx_); }
  sha256_stream(const sha256_stream&) = delete;
  sha256_stream& operator=(const sha256_stream&) = delete;

  void update(const void* data, size_t len) {
    if (EVP_DigestUpdate(ctx_, data, len) != 1) fail(errc::internal, "SHA-256 update failed");
  }

  std::string hex() {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx_, digest, &len) != 1)
      fail(errc::internal, "SHA-256 final failed");
    static const char* k = "0123456789abcdef";
    std::string out(2 * len, '0');
    for (unsigned int i = 0; i < len; ++i) {
      out[2 * i] = k[digest[i] >> 4];
      out[2 * i + 1] = k[digest[i] & 0xf];
    }
    return out;
  }

 private:
  EVP_MD_CTX* ctx_;
};

std::string header_line(const cache_metadata& meta) {
  std::ostringstream h;
  h << "powpart-table v1 d=" << meta.d << " N=" << meta.order
    << " ring=" << (meta.modulus ? "mod" : "exact");
  if (meta.modulus) h << " modulus=" << meta.modulus;
  h << " method=" << meta.method;
  if (meta.method == "staged-partial") h << " stage=" << meta.stage;
  return h.str();
}

uint64_t parse_u64_field(const std::string& file, const std::string& key,
                         const std::string& text) {
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size())
    fail(errc::cache_corrupt, file + ": bad " + key + " value '" + text + "'");
  return v;
}

cache_metadata parse_header(const std::string& file, const std::string& line) {
  std::istringstream in(line);
  std::string magic, version;
  in >> magic >> version;
  if (magic != "powpart-table")
    fail(errc::cache_corrupt, file + ": not a powpart table file");
  if (version != "v1")
    fail(errc::cache_corrupt, file + ": unsupported format version '" + version + "'");
  cache_metadata meta;
  std::string ring_kind;
  bool saw_d = false, saw_n = false, saw_ring = false, saw_mod = false, saw_stage = false;
  std::string tok;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos)
      fail(errc::cache_corrupt, file + ": malformed header token '" + tok + "'");
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "d") {
      meta.d = static_cast<int>(parse_u64_field(file, key, val));
      saw_d = true;
    } else if (key == "N") {
      meta.order = parse_u64_field(file, key, val);
      saw_n = true;
    } else if (key == "ring") {
      ring_kind = val;
      saw_ring = true;
    } else if (key == "modulus") {
      meta.modulus = parse_u64_field(file, key, val);
      saw_mod = true;
    } else if (key == "method") {
      meta.method = val;
    } else if (key == "stage") {
      meta.stage = parse_u64_field(file, key, val);
      saw_stage = true;
    } else {
      fail(errc::cache_corrupt, file + ": unknown header key '" + key + "'");
    }
  }
  if (!saw_d || !saw_n || !saw_ring || meta.method.empty())
    fail(errc::cache_corrupt, file + ": header missing required fields");
  if (ring_kind == "exact") {
    if (saw_mod) fail(errc::cache_corrupt, file + ": exact ring with modulus field");
  } else if (ring_kind == "mod") {
    if (!saw_mod || meta.modulus < 2)
      fail(errc::cache_corrupt, file + ": mod ring needs modulus >= 2");
  } else {
    fail(errc::cache_corrupt, file + ": unknown ring kind '" + ring_kind + "'");
  }
  if ((meta.method == "staged-partial") != saw_stage)
    fail(errc::cache_corrupt, file + ": stage field is for staged-partial checkpoints only");
  return meta;
}

bool canonical_decimal(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return s.size() == 1 || s[0] != '0';
}

void parse_value(const std::string& file, const std::string& text, const exact_ring&,
                 mpz_class& out) {
  if (!canonical_decimal(text))
    fail(errc::cache_corrupt, file + ": non-canonical value '" + text + "'");
  out.set_str(text, 10);
}

void parse_value(const std::string& file, const std::string& text, const mod_ring& ring,
                 uint32_t& out) {
  if (!canonical_decimal(text))
    fail(errc::cache_corrupt, file + ": non-canonical value '" + text + "'");
  uint64_t v = parse_u64_field(file, "payload", text);
  if (v >= ring.modulus())
    fail(errc::cache_corrupt, file + ": residue " + text + " out of range for modulus " +
                                  std::to_string(ring.modulus()));
  out = static_cast<uint32_t>(v);
}

std::string slurp(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) fail(errc::io, "cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(errc::io, "read error on " + file.string());
  return std::move(buf).str();
}

template <class Ring>
void check_ring_match(const std::string& file, const cache_metadata& meta, const Ring& ring) {
  if (meta.modulus != ring.modulus())
    fail(errc::invalid_argument,
         file + ": holds " +
             (meta.modulus ? "mod-" + std::to_string(meta.modulus) : std::string("exact")) +
             " values, requested " +
             (ring.modulus() ? "mod-" + std::to_string(ring.modulus()) : std::string("exact")));
}

}  // namespace

std::string sha256_hex(const void* data, size_t len) {
  sha256_stream s;
  s.update(data, len);
  return s.hex();
}

std::string cache_file_name(int d, uint64_t order, uint64_t modulus) {
  std::ostringstream name;
  name << "pd" << d << "_n" << order << "_";
  if (modulus)
    name << "mod" << modulus;
  else
    name << "exact";
  name << ".tbl";
  return name.str();
}

std::filesystem::path cache_path(const std::filesystem::path& dir, int d, uint64_t order,
                                 uint64_t modulus) {
  return dir / cache_file_name(d, order, modulus);
}

cache_metadata read_cache_header(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) fail(errc::io, "cannot open " + file.string());
  std::string line;
  if (!std::getline(in, line)) fail(errc::cache_corrupt, file.string() + ": empty file");
  return parse_header(file.string(), line);
}

template <class Ring>
void write_cache_file(const std::filesystem::path& file, const cache_metadata& meta,
                      const Ring& ring, const std::vector<typename Ring::value_type>& values) {
  if (values.size() != meta.order + 1)
    fail(errc::invalid_argument, "value count does not match declared order");
  if (meta.modulus != ring.modulus())
    fail(errc::invalid_argument, "metadata modulus does not match ring");
  if (!file.parent_path().empty()) std::filesystem::create_directories(file.parent_path());

  std::filesystem::path tmp = file;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(errc::io, "cannot create " + tmp.string());
    sha256_stream digest;
    auto emit = [&](const std::string& line) {
      out << line << '\n';
      digest.update(line.data(), line.size());
      digest.update("\n", 1);
    };
    emit(header_line(meta));
    for (const auto& v : values) emit(ring.to_decimal(v));
    out << "sha256=" << digest.hex() << '\n';
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      fail(errc::io, "write error on " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, file, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    fail(errc::io, "cannot move " + tmp.string() + " into place: " + ec.message());
  }
}

template <class Ring>
std::pair<cache_metadata, std::vector<typename Ring::value_type>> read_cache_file(
    const std::filesystem::path& file, const Ring& ring) {
  const std::string name = file.string();
  const std::string buf = slurp(file);

  // Split off the trailing sha256 line first; everything before it is covered
  // by the digest.
  if (buf.empty() || buf.back() != '\n')
    fail(errc::cache_corrupt, name + ": missing final newline");
  size_t last_start = buf.rfind('\n', buf.size() - 2);
  last_start = last_start == std::string::npos ? 0 : last_start + 1;
  const std::string last_line = buf.substr(last_start, buf.size() - 1 - last_start);
  if (last_line.rfind("sha256=", 0) != 0)
    fail(errc::cache_corrupt, name + ": missing sha256 trailer");
  const std::string want = last_line.substr(7);
  const std::string got = sha256_hex(buf.data(), last_start);
  if (want != got)
    fail(errc::cache_corrupt, name + ": checksum mismatch (file says " + want +
                                  ", payload hashes to " + got + ")");

  // Now parse the verified payload.
  size_t pos = 0;
  auto next_line = [&](std::string& out) {
    if (pos >= last_start) return false;
    size_t nl = buf.find('\n', pos);
    out.assign(buf, pos, nl - pos);
    pos = nl + 1;
    return true;
  };
  std::string line;
  if (!next_line(line)) fail(errc::cache_corrupt, name + ": empty file");
  cache_metadata meta = parse_header(name, line);
  check_ring_match(name, meta, ring);

  std::vector<typename Ring::value_type> values;
  values.reserve(meta.order + 1);
  typename Ring::value_type v{};
  while (next_line(line)) {
    parse_value(name, line, ring, v);
    values.push_back(v);
  }
  if (values.size() != meta.order + 1)
    fail(errc::cache_corrupt, name + ": expected " + std::to_string(meta.order + 1) +
                                  " values, found " + std::to_string(values.size()));
  return {std::move(meta), std::move(values)};
}

template <class Ring>
void save_table(const partition_table<Ring>& table, const std::filesystem::path& file) {
  cache_metadata meta{table.d, table.order(), table.ring.modulus(), method_name(table.method), 0};
  write_cache_file(file, meta, table.ring, table.values);
}

template <class Ring>
partition_table<Ring> load_table(const std::filesystem::path& file, const Ring& ring) {
  auto [meta, values] = read_cache_file(file, ring);
  if (meta.method == "staged-partial")
    fail(errc::invalid_argument,
         file.string() + " is an unfinished checkpoint, not a usable table");
  return partition_table<Ring>{meta.d, ring, std::move(values), method_from_name(meta.method)};
}

cache_lock::cache_lock(const std::filesystem::path& target) {
  lock_path_ = target;
  lock_path_ += ".lock";
  int fd = ::open(lock_path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd < 0) {
    if (errno == EEXIST)
      fail(errc::locked, lock_path_.string() +
                             " exists: another writer is active (or crashed; remove the "
                             "lock file if no writer is running)");
    fail(errc::io, "cannot create lock file " + lock_path_.string());
  }
  std::string pid = std::to_string(::getpid()) + "\n";
  // A failed pid write is harmless; the lock is the file's existence.
  if (::write(fd, pid.data(), pid.size()) < 0) {
  }
  ::close(fd);
}

cache_lock::~cache_lock() {
  std::error_code ignored;
  std::filesystem::remove(lock_path_, ignored);
}

template <class Ring>
void save_checkpoint(const std::filesystem::path& file, int d, uint64_t order, const Ring& ring,
                     uint64_t stage, const std::vector<typename Ring::value_type>& values) {
  cache_metadata meta{d, order, ring.modulus(), "staged-partial", stage};
  write_cache_file(file, meta, ring, values);
}

template <class Ring>
std::optional<std::pair<uint64_t, std::vector<typename Ring::value_type>>> try_load_checkpoint(
    const std::filesystem::path& file, int d, uint64_t order, const Ring& ring) {
  if (!std::filesystem::exists(file)) return std::nullopt;
  auto [meta, values] = read_cache_file(file, ring);
  if (meta.method != "staged-partial" || meta.d != d || meta.order != order)
    fail(errc::cache_corrupt, file.string() + ": checkpoint metadata does not match request");
  return std::make_pair(meta.stage, std::move(values));
}

template <class Ring>
partition_table<Ring> cached_staged_table(int d, uint64_t order, const Ring& ring,
                                          const cached_build_options& opts, bool* cache_hit) {
  if (cache_hit) *cache_hit = false;
  const std::filesystem::path file = cache_path(opts.cache_dir, d, order, ring.modulus());
  if (std::filesystem::exists(file)) {
    partition_table<Ring> t = load_table(file, ring);
    if (t.d != d)
      fail(errc::cache_corrupt, file.string() + ": holds d=" + std::to_string(t.d) +
                                    ", requested d=" + std::to_string(d));
    if (cache_hit) *cache_hit = true;
    return t;
  }

  if (!opts.cache_dir.empty()) std::filesystem::create_directories(opts.cache_dir);
  cache_lock lock(file);
  std::filesystem::path ckpt = file;
  ckpt += ".ckpt";

  staged_build_options<Ring> build;
  if (auto resumed = try_load_checkpoint(ckpt, d, order, ring)) {
    build.resume_stage = resumed->first;
    build.resume_values = std::move(resumed->second);
  }
  if (opts.checkpoint_every > 0 || opts.on_progress) {
    const uint64_t every = opts.checkpoint_every;
    build.on_stage = [&](uint64_t stage, uint64_t total,
                         const std::vector<typename Ring::value_type>& values) {
      if (opts.on_progress) opts.on_progress(stage, total);
      if (every > 0 && stage < total && stage % every == 0)
        save_checkpoint(ckpt, d, order, ring, stage, values);
    };
  }
  partition_table<Ring> t = staged_table(d, order, ring, std::move(build));
  save_table(t, file);
  std::error_code ignored;
  std::filesystem::remove(ckpt, ignored);
  return t;
}

template <class Ring>
partition_table<Ring> load_cached_table(const std::filesystem::path& dir, int d, uint64_t order,
                                        const Ring& ring) {
  const std::filesystem::path file = cache_path(dir, d, order, ring.modulus());
  if (!std::filesystem::exists(file))
    fail(errc::io, "no cache file " + file.string() + "; run compute first");
  partition_table<Ring> t = load_table(file, ring);
  if (t.d != d)
    fail(errc::cache_corrupt,
         file.string() + ": holds d=" + std::to_string(t.d) + ", requested d=" + std::to_string(d));
  return t;
}

// The cache is only ever used with these two rings.
template void write_cache_file(const std::filesystem::path&, const cache_metadata&,
                               const exact_ring&, const std::vector<mpz_class>&);
template void write_cache_file(const std::filesystem::path&, const cache_metadata&,
                               const mod_ring&, const std::vector<uint32_t>&);
template std::pair<cache_metadata, std::vector<mpz_class>> read_cache_file(
    const std::filesystem::path&, const exact_ring&);
template std::pair<cache_metadata, std::vector<uint32_t>> read_cache_file(
    const std::filesystem::path&, const mod_ring&);
template void save_table(const partition_table<exact_ring>&, const std::filesystem::path&);
template void save_table(const partition_table<mod_ring>&, const std::filesystem::path&);
template partition_table<exact_ring> load_table(const std::filesystem::path&, const exact_ring&);
template partition_table<mod_ring> load_table(const std::filesystem::path&, const mod_ring&);
template void save_checkpoint(const std::filesystem::path&, int, uint64_t, const exact_ring&,
                              uint64_t, const std::vector<mpz_class>&);
template void save_checkpoint(const std::filesystem::path&, int, uint64_t, const mod_ring&,
                              uint64_t, const std::vector<uint32_t>&);
template std::optional<std::pair<uint64_t, std::vector<mpz_class>>> try_load_checkpoint(
    const std::filesystem::path&, int, uint64_t, const exact_ring&);
template std::optional<std::pair<uint64_t, std::vector<uint32_t>>> try_load_checkpoint(
    const std::filesystem::path&, int, uint64_t, const mod_ring&);
template partition_table<exact_ring> cached_staged_table(int, uint64_t, const exact_ring&,
                                                         const cached_build_options&, bool*);
template partition_table<mod_ring> cached_staged_table(int, uint64_t, const mod_ring&,
                                                       const cached_build_options&, bool*);
template partition_table<exact_ring> load_cached_table(const std::filesystem::path&, int,
                                                       uint64_t, const exact_ring&);
template partition_table<mod_ring> load_cached_table(const std::filesystem::path&, int, uint64_t,
                                                     const mod_ring&);

}  // namespace powpart
