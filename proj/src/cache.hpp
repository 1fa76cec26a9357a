#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "partitions.hpp"

namespace powpart {

// On-disk table format (structured text, bit-exact):
//
//   powpart-table v1 d=<d> N=<N> ring=<exact|mod> [modulus=<m>] method=<name> [stage=<k>]
//   <p_d(0)>
//   ...
//   <p_d(N)>
//   sha256=<64 hex digits>
//
// One canonical decimal per line (no leading zeros, newline-terminated).
// The checksum covers every byte before the sha256 line, so any single-byte
// corruption of header or payload is detected before the data is used.
// method=staged-partial marks a resumable checkpoint; stage= names the last
// completed stage.

std::string sha256_hex(const void* data, size_t len);

struct cache_metadata {
  int d = 0;
  uint64_t order = 0;
  uint64_t modulus = 0;  // 0 = exact ring
  std::string method;
  uint64_t stage = 0;  // only meaningful for method=staged-partial
};

// Canonical file name, e.g. pd2_n100000_exact.tbl or pd3_n1000000_mod2520.tbl.
std::string cache_file_name(int d, uint64_t order, uint64_t modulus);
std::filesystem::path cache_path(const std::filesystem::path& dir, int d, uint64_t order,
                                 uint64_t modulus);

// Parses the first line only; does not verify the checksum.  Used to learn
// the ring kind before a typed load.
cache_metadata read_cache_header(const std::filesystem::path& file);

// Full write/read with checksum.  Writes go to a temp file in the same
// directory, digesting incrementally, then rename into place.
template <class Ring>
void write_cache_file(const std::filesystem::path& file, const cache_metadata& meta,
                      const Ring& ring, const std::vector<typename Ring::value_type>& values);

template <class Ring>
std::pair<cache_metadata, std::vector<typename Ring::value_type>> read_cache_file(
    const std::filesystem::path& file, const Ring& ring);

// Finished-table wrappers around the raw file format.
template <class Ring>
void save_table(const partition_table<Ring>& table, const std::filesystem::path& file);

template <class Ring>
partition_table<Ring> load_table(const std::filesystem::path& file, const Ring& ring);

// Single-writer exclusion per cache file via a companion <file>.lock created
// with O_EXCL; holds until destruction.  A pre-existing lock raises
// errc::locked and names the file so a stale lock can be removed by hand.
class cache_lock {
 public:
  explicit cache_lock(const std::filesystem::path& target);
  ~cache_lock();
  cache_lock(const cache_lock&) = delete;
  cache_lock& operator=(const cache_lock&) = delete;

 private:
  std::filesystem::path lock_path_;
};

template <class Ring>
void save_checkpoint(const std::filesystem::path& file, int d, uint64_t order, const Ring& ring,
                     uint64_t stage, const std::vector<typename Ring::value_type>& values);

// nullopt when no checkpoint file exists; throws errc::cache_corrupt when one
// exists but fails validation (refuse rather than silently rebuild).
template <class Ring>
std::optional<std::pair<uint64_t, std::vector<typename Ring::value_type>>> try_load_checkpoint(
    const std::filesystem::path& file, int d, uint64_t order, const Ring& ring);

struct cached_build_options {
  std::filesystem::path cache_dir;
  // Write a resumable checkpoint after every this-many stages (0 = never).
  uint64_t checkpoint_every = 0;
  std::function<void(uint64_t stage, uint64_t total_stages)> on_progress;
};

// Cache-aware staged build: returns the cached table when a valid file
// exists (cache_hit = true), otherwise builds (resuming from a checkpoint if
// present), saves, and removes the checkpoint.  Corrupt cache files are
// reported, never overwritten.
template <class Ring>
partition_table<Ring> cached_staged_table(int d, uint64_t order, const Ring& ring,
                                          const cached_build_options& opts,
                                          bool* cache_hit = nullptr);

// Load-only path: errc::io with a "run compute" hint when the file is absent.
template <class Ring>
partition_table<Ring> load_cached_table(const std::filesystem::path& dir, int d, uint64_t order,
                                        const Ring& ring);

}  // namespace powpart
