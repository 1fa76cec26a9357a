#pragma once

#include <gmpxx.h>

namespace powpart {

// Riemann zeta for real s > 1 by Borwein's alternating-series acceleration.
double zeta_alternating(double s);
// Same quantity by Euler-Maclaurin summation; kept as an independent route
// for cross-checking (the two must agree to >= 10 significant digits).
double zeta_euler_maclaurin(double s);

// Gamma(x) for x > 0 via the Lanczos approximation (g = 7, 9 terms).
double gamma_lanczos(double x);

// c_d = (d+1) * ((1/d) * Gamma(1 + 1/d) * zeta(1 + 1/d))^(d/(d+1)),
// the growth constant with log p_d(n) ~ c_d * n^(1/(d+1)).  (Sanity check:
// d = 1 gives 2 * sqrt(zeta(2)) * n^(1/2) = pi * sqrt(2n/3), the classical
// first-order term.)  Requires d >= 2.
double wright_constant(int d);

// Natural log of a positive big integer from its binary mantissa and
// exponent; good to full double precision.
double log_mpz(const mpz_class& v);

}  // namespace powpart
