#include "partitions.hpp"

namespace powpart {

const char* method_name(table_method m) {
  switch (m) {
    case table_method::staged: return "staged";
    case table_method::sigma: return "sigma";
    case table_method::oracle: return "oracle";
  }
  return "?";
}

table_method method_from_name(const std::string& name) {
  if (name == "staged") return table_method::staged;
  if (name == "sigma") return table_method::sigma;
  if (name == "oracle") return table_method::oracle;
  fail(errc::invalid_argument, "unknown table method: " + name);
}

uint64_t sigma_d(uint64_t n, int d) {
  if (d < 1) fail(errc::invalid_argument, "d must be >= 1");
  if (n == 0) return 0;
  uint64_t total = 0;
  for (uint64_t k = 1;; ++k) {
    uint64_t kd = pow_saturating(k, d);
    if (kd > n) break;
    if (n % kd == 0) total += kd;
  }
  return total;
}

std::vector<uint64_t> sigma_d_table(int d, uint64_t order) {
  if (d < 1) fail(errc::invalid_argument, "d must be >= 1");
  std::vector<uint64_t> s(order + 1, 0);
  for (uint64_t k = 1;; ++k) {
    uint64_t kd = pow_saturating(k, d);
    if (kd > order) break;
    for (uint64_t j = kd; j <= order; j += kd) s[j] += kd;
  }
  return s;
}

partition_table<exact_ring> sigma_recurrence_table(int d, uint64_t order) {
  if (d < 1) fail(errc::invalid_argument, "d must be >= 1");
  partition_table<exact_ring> t{d, exact_ring{}, {}, table_method::sigma};
  t.values.assign(order + 1, mpz_class(0));
  t.values[0] = 1;
  const std::vector<uint64_t> sig = sigma_d_table(d, order);
  mpz_class acc;
  for (uint64_t n = 1; n <= order; ++n) {
    acc = 0;
    for (uint64_t i = 1; i <= n; ++i)
      if (sig[i] != 0)
        mpz_addmul_ui(acc.get_mpz_t(), t.values[n - i].get_mpz_t(),
                      static_cast<unsigned long>(sig[i]));
    if (mpz_divisible_ui_p(acc.get_mpz_t(), static_cast<unsigned long>(n)) == 0)
      fail(errc::internal, "divisor-sum recurrence produced a non-integer at n=" +
                               std::to_string(n));
    mpz_divexact_ui(t.values[n].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
  }
  return t;
}

namespace {

// count(n, k) = partitions of n into parts {1^d, ..., k^d}
//            = count(n, k-1) + count(n - k^d, k)
class oracle_memo {
 public:
  oracle_memo(int d, uint64_t n) : d_(d), k_max_(integer_root_floor(n, d)), n_max_(n) {
    table_.assign((k_max_ + 1) * (n + 1), mpz_class(-1));
  }

  mpz_class count(uint64_t n, uint64_t k) {
    if (n == 0) return 1;
    if (k == 0) return 0;
    mpz_class& slot = table_[k * (n_max_ + 1) + n];
    if (slot >= 0) return slot;
    mpz_class r = count(n, k - 1);
    uint64_t kd = pow_saturating(k, d_);
    if (kd <= n) r += count(n - kd, k);
    slot = r;
    return slot;
  }

 private:
  int d_;
  uint64_t k_max_;
  uint64_t n_max_;
  std::vector<mpz_class> table_;
};

}  // namespace

mpz_class oracle_pd(int d, uint64_t n) {
  if (d < 1) fail(errc::invalid_argument, "d must be >= 1");
  if (n == 0) return 1;
  oracle_memo memo(d, n);
  return memo.count(n, integer_root_floor(n, d));
}

}  // namespace powpart
