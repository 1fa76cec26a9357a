#include "asymptotic.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace powpart {

double zeta_alternating(double s) {
  if (!(s > 1.0)) fail(errc::invalid_argument, "zeta requires s > 1");
  // eta(s) via Borwein's Chebyshev-weighted partial sums, then
  // zeta = eta / (1 - 2^{1-s}).  Error decays like (3 + sqrt(8))^{-n}.
  const int n = 44;
  long double term = 1.0L / n;  // i = 0 term of the d_k sum, times 1/n
  long double dk = 1.0L;        // d_0 = n * term
  std::vector<long double> d(n + 1);
  d[0] = dk;
  for (int i = 0; i < n; ++i) {
    term *= 4.0L * (n + i) * (n - i) / ((2 * i + 1) * (2 * i + 2));
    dk += n * term;
    d[i + 1] = dk;
  }
  long double sum = 0.0L;
  for (int k = 0; k < n; ++k) {
    long double t = (d[k] - d[n]) / powl(static_cast<long double>(k + 1), s);
    sum += (k % 2 == 0) ? -t : t;
  }
  long double eta = sum / d[n];
  long double z = eta / (1.0L - powl(2.0L, 1.0L - static_cast<long double>(s)));
  return static_cast<double>(z);
}

static long double zeta_euler_maclaurin_impl(long double s) {
  // zeta(s) = sum_{k<M} k^-s + M^{1-s}/(s-1) + M^-s/2 + Bernoulli tail.
  const int M = 24;
  long double sum = 0.0L;
  for (int k = 1; k < M; ++k) sum += powl(static_cast<long double>(k), -s);
  long double Ml = M;
  sum += powl(Ml, 1.0L - s) / (s - 1.0L);
  sum += 0.5L * powl(Ml, -s);
  // B_2, B_4, ..., B_12
  static const long double bern[] = {1.0L / 6,  -1.0L / 30, 1.0L / 42,
                                     -1.0L / 30, 5.0L / 66,  -691.0L / 2730};
  long double rising = s;  // s(s+1)...(s+2j-2), built incrementally
  long double fact = 2.0L; // (2j)!
  long double mpow = powl(Ml, -s - 1.0L);
  for (int j = 1; j <= 6; ++j) {
    sum += bern[j - 1] * rising / fact * mpow;
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    fact *= (2 * j + 1) * (2 * j + 2);
    mpow /= Ml * Ml;
  }
  return sum;
}

double zeta_euler_maclaurin(double s) {
  if (!(s > 1.0)) fail(errc::invalid_argument, "zeta requires s > 1");
  return static_cast<double>(zeta_euler_maclaurin_impl(static_cast<long double>(s)));
}

double gamma_lanczos(double x) {
  if (!(x > 0.0)) fail(errc::invalid_argument, "gamma_lanczos requires x > 0");
  // g = 7, 9-term coefficient set.
  static const double coef[9] = {0.99999999999980993,  676.5203681218851,
                                 -1259.1392167224028,  771.32342877765313,
                                 -176.61502916214059,  12.507343278686905,
                                 -0.13857109526572012, 9.9843695780195716e-6,
                                 1.5056327351493116e-7};
  if (x < 0.5) {
    // reflection; not reached for the 1 + 1/d arguments used here
    return M_PI / (std::sin(M_PI * x) * gamma_lanczos(1.0 - x));
  }
  double z = x - 1.0;
  double a = coef[0];
  for (int i = 1; i < 9; ++i) a += coef[i] / (z + i);
  double t = z + 7.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

double wright_constant(int d) {
  if (d < 2) fail(errc::invalid_argument, "wright_constant requires d >= 2");
  double inv_d = 1.0 / d;
  double base = inv_d * gamma_lanczos(1.0 + inv_d) * zeta_alternating(1.0 + inv_d);
  return (d + 1) * std::pow(base, static_cast<double>(d) / (d + 1));
}

double log_mpz(const mpz_class& v) {
  if (v <= 0) fail(errc::invalid_argument, "log_mpz requires a positive value");
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * M_LN2;
}

}  // namespace powpart
