#ifndef MFARC_TESTS_ORACLES_HPP
#define MFARC_TESTS_ORACLES_HPP

// Brute-force reference computations used to freeze expected values.
// Deliberately naive and independent of the library code paths.

#include <gmpxx.h>

#include <vector>

namespace oracles {

// Coefficients c[0..prec] of Pi_{n>=1} (1 - q^{mn}) by term-at-a-time
// polynomial multiplication.
inline std::vector<mpz_class> euler_product(long m, long prec) {
  std::vector<mpz_class> c(prec + 1, 0);
  c[0] = 1;
  for (long n = 1; n * m <= prec; ++n) {
    // multiply by (1 - q^{mn}) in place, highest exponent first
    for (long e = prec; e >= n * m; --e) c[e] -= c[e - n * m];
  }
  return c;
}

// Plain polynomial product truncated at prec.
inline std::vector<mpz_class> poly_mul(const std::vector<mpz_class>& a,
                                       const std::vector<mpz_class>& b,
                                       long prec) {
  std::vector<mpz_class> c(prec + 1, 0);
  for (long i = 0; i <= prec && i < static_cast<long>(a.size()); ++i) {
    if (a[i] == 0) continue;
    for (long j = 0; j + i <= prec && j < static_cast<long>(b.size()); ++j)
      c[i + j] += a[i] * b[j];
  }
  return c;
}

// Coefficients of q * phi_p, i.e. (Pi (1-q^n) / (1-q^{pn}))^{24/(p-1)},
// expanded by successive multiplication (no repeated squaring).
inline std::vector<mpz_class> eta_quotient_shifted(int p, long prec) {
  long e = 24 / (p - 1);
  std::vector<mpz_class> num = euler_product(1, prec);
  std::vector<mpz_class> den = euler_product(p, prec);
  // invert den by back-substitution (den[0] = 1)
  std::vector<mpz_class> inv(prec + 1, 0);
  inv[0] = 1;
  for (long n = 1; n <= prec; ++n) {
    mpz_class s = 0;
    for (long j = 1; j <= n && j < static_cast<long>(den.size()); ++j)
      s += den[j] * inv[n - j];
    inv[n] = -s;
  }
  std::vector<mpz_class> ratio = poly_mul(num, inv, prec);
  std::vector<mpz_class> acc(prec + 1, 0);
  acc[0] = 1;
  for (long i = 0; i < e; ++i) acc = poly_mul(acc, ratio, prec);
  return acc;
}

inline mpz_class sigma(int k, long n) {
  mpz_class s = 0;
  for (long d = 1; d <= n; ++d) {
    if (n % d) continue;
    mpz_class dk;
    mpz_ui_pow_ui(dk.get_mpz_t(), d, k);
    s += dk;
  }
  return s;
}

inline mpz_class odd_sigma(long n) {
  mpz_class s = 0;
  for (long d = 1; d <= n; d += 2)
    if (n % d == 0) s += d;
  return s;
}

// j-function coefficients from E4^3 / Delta, valuation -1; entry i holds
// the coefficient of q^{i-1}.
inline std::vector<mpz_class> j_function(long prec) {
  long w = prec + 2;
  std::vector<mpz_class> e4(w + 1, 0);
  e4[0] = 1;
  for (long n = 1; n <= w; ++n) e4[n] = 240 * sigma(3, n);
  std::vector<mpz_class> e4cu = poly_mul(poly_mul(e4, e4, w), e4, w);
  // Delta / q = Pi (1-q^n)^24
  std::vector<mpz_class> eta24(w + 1, 0);
  eta24[0] = 1;
  {
    std::vector<mpz_class> ep = euler_product(1, w);
    for (int i = 0; i < 24; ++i) eta24 = poly_mul(eta24, ep, w);
  }
  std::vector<mpz_class> inv(w + 1, 0);
  inv[0] = 1;
  for (long n = 1; n <= w; ++n) {
    mpz_class s = 0;
    for (long j = 1; j <= n; ++j) s += eta24[j] * inv[n - j];
    inv[n] = -s;
  }
  std::vector<mpz_class> j = poly_mul(e4cu, inv, w);
  j.resize(prec + 2);
  return j;
}

}  // namespace oracles

#endif
