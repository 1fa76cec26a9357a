#pragma once

#include <stdexcept>
#include <string>

namespace powpart {

enum class errc {
  invalid_argument,  // bad parameter (d, modulus, range, ...)
  domain,            // operation not defined for this ring/table
  io,                // file system failure
  cache_corrupt,     // checksum or format mismatch in a cache file
  locked,            // another writer holds the cache lock
  internal
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace powpart
