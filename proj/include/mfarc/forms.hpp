#ifndef MFARC_FORMS_HPP
#define MFARC_FORMS_HPP

// Canonical bases of weakly holomorphic modular forms for levels 2 and 3:
// the f and g families, their product decomposition, duality, and the
// generating-function identity.

#include <optional>
#include <string>
#include <vector>

#include "mfarc/qseries.hpp"

namespace mfarc {

struct FormsError : QSeriesError {
  using QSeriesError::QSeriesError;
};
struct IndexBelowRange : FormsError {
  using FormsError::FormsError;
};
struct SeedConstructionFailed : FormsError {
  using FormsError::FormsError;
};

enum class Family { f, g };

struct WeightDecomposition {
  int level = 2;
  long k = 0;       // even weight
  long ell = 0;     // k = 4*ell + kprime (level 2), k = 6*ell + kprime (level 3)
  long kprime = 0;  // {0,2} at level 2, {0,2,4} at level 3

  static WeightDecomposition of(int level, long k);
};

struct BasisSpec {
  int level = 2;
  long k = 0;
  long n = 0;
  Family family = Family::f;
};

struct BasisElement {
  BasisSpec spec;
  WeightDecomposition weight;
  LaurentSeries series;
  // Faber part: exact coefficients of F(x) with f = S^ell * F_{k'} * F(phi),
  // ascending degree.  S = S_4 at level 2, the weight-6 seed at level 3.
  std::vector<mpq_class> faber;
  // exponent range guaranteed zero (gap), inclusive; for reporting
  long gap_lo = 0, gap_hi = -1;
};

// f_{k,n}^{(2)} = q^{-n} + O(q^{ell+1}), built inductively from
// S_4^ell F_{k'} by Hauptmodul multiplication and reduction.
BasisElement build_f2(long k, long n, long precision);

// g_{k,n}^{(2)} = q^{-n} + O(q^{ell}), vanishing at the cusp 0.
BasisElement build_g2(long k, long n, long precision);

// f_{k,n}^{(3)} = q^{-n} + O(q^{2 ell + floor(k'/3) + 1}).
BasisElement build_f3(long k, long n, long precision);

BasisElement build(const BasisSpec& spec, long precision);

// Minimal pole order for the given family/weight.
long min_index(int level, long k, Family family);

// Weight-6 level-3 seed W = q^2 + O(q^3), solved exactly from holomorphic
// generators; nonvanishing away from infinity by the valence count.
LaurentSeries level3_seed6(long precision);
// Weight-k' level-3 seed, k' in {0, 2, 4}.
LaurentSeries level3_seed(long kprime, long precision);

// coeff_m(f_{k,n}) == -coeff_n(g_{2-k,m}), exact.
bool duality_check(long k, long n, long m, long precision);

struct GenFunReport {
  long k = 0;
  long r_terms = 0;   // number of r-powers compared, starting at n = -ell
  long q_prec = 0;    // q-truncation of the comparison
  mpq_class max_discrepancy = 0;  // largest |difference| over all coefficients
  bool exact_match = false;
};

// Verifies sum_n f_{k,n}(z) r^n against the closed form
// (S4^l Fk')(z)/(S4^l Fk')(tau) * phi(tau) F2(tau)/(phi(tau)-phi(z))
// as a double (q, r)-series.
GenFunReport generating_function_check(long k, long r_terms, long q_prec);

}  // namespace mfarc

#endif
