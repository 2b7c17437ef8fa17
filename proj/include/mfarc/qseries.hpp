#ifndef MFARC_QSERIES_HPP
#define MFARC_QSERIES_HPP

// Truncated Laurent series in q with exact rational coefficients, plus the
// eta quotients and Eisenstein series everything else is built from.

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfarc {

struct QSeriesError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroLeadingCoefficient : QSeriesError {
  ZeroLeadingCoefficient() : QSeriesError("leading coefficient is zero") {}
};
struct UnsupportedLevel : QSeriesError {
  explicit UnsupportedLevel(int p)
      : QSeriesError("unsupported level " + std::to_string(p)) {}
};
struct PrecisionTooLow : QSeriesError {
  using QSeriesError::QSeriesError;
};

// coeffs[i] is the coefficient of q^{valuation + i}; the series is known
// exactly for exponents valuation .. truncation (inclusive) and unknown
// beyond.  A zero series is represented with empty coeffs and
// valuation = truncation + 1.
class LaurentSeries {
 public:
  LaurentSeries() : valuation_(1), truncation_(0) {}

  static LaurentSeries zero(long truncation) {
    LaurentSeries s;
    s.valuation_ = truncation + 1;
    s.truncation_ = truncation;
    return s;
  }
  static LaurentSeries monomial(const mpq_class& c, long exponent,
                                long truncation);
  static LaurentSeries one(long truncation) {
    return monomial(1, 0, truncation);
  }
  static LaurentSeries from_coeffs(long valuation,
                                   std::vector<mpq_class> coeffs);

  long valuation() const { return valuation_; }
  long truncation() const { return truncation_; }
  bool is_zero() const { return coeffs_.empty(); }

  // Coefficient of q^e; throws if e > truncation.
  const mpq_class& coeff(long e) const;

  bool integral() const;
  // Restrict knowledge to exponents <= t (t may only shrink).
  LaurentSeries truncated(long t) const;
  // Multiply by q^s.
  LaurentSeries shifted(long s) const;
  // Substitute q -> q^m (m >= 1).
  LaurentSeries dilated(long m) const;

  friend LaurentSeries operator+(const LaurentSeries& a,
                                 const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a,
                                 const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a,
                                 const LaurentSeries& b);
  LaurentSeries operator-() const;
  LaurentSeries scaled(const mpq_class& c) const;

  bool operator==(const LaurentSeries& o) const {
    return valuation_ == o.valuation_ && truncation_ == o.truncation_ &&
           coeffs_ == o.coeffs_;
  }

  std::string str(long max_terms = 8) const;

 private:
  void normalize();

  long valuation_;
  long truncation_;
  std::vector<mpq_class> coeffs_;
};

LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b);
// Multiplicative inverse; result truncation is T - 2v for input (v, T).
LaurentSeries invert(const LaurentSeries& a);
// a^n, repeated squaring; n < 0 goes through invert.
LaurentSeries power(const LaurentSeries& a, long n);

// Exact divisor sums with memoization.
class SigmaTable {
 public:
  const mpz_class& sigma(int k, long n);
  // sum of d^k over odd divisors d of n
  const mpz_class& odd_sigma(int k, long n);
  // sigma_k(n) - sigma_k(n/2), zero term when n odd (S_4 coefficients for k=3)
  mpz_class sigma_minus_half(int k, long n);

 private:
  std::map<std::pair<int, long>, mpz_class> values_, odd_values_;
};

SigmaTable& sigma_table();

// Euler product Pi_{n>=1} (1 - q^{mn}) through q^precision.
LaurentSeries euler_product(long m, long precision);

// Hauptmodul phi_p = (eta(z)/eta(pz))^{24/(p-1)} for p in {2, 3}.
LaurentSeries eta_quotient(int level, long precision);

enum class EisensteinName { E2, E4, F2_level2, S4_level2 };
LaurentSeries eisenstein(EisensteinName name, long precision);

// (3 E_2(3z) - E_2(z)) / 2, the weight-2 level-3 Eisenstein form.
LaurentSeries eisenstein2_level3(long precision);

// eta(z)^24 * q^{-1} shifted: Delta = q Pi (1-q^n)^24; used by the j oracle.
LaurentSeries delta_level1(long precision);

}  // namespace mfarc

#endif
