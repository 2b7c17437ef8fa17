#ifndef MFARC_FABER_HPP
#define MFARC_FABER_HPP

// Extraction of the generalized Faber polynomial F(x) with
// f = S^ell F_{k'} F(phi), exact real-root isolation, and pullback of roots
// in the Hauptmodul's image of the boundary arc to the arc itself.

#include <utility>
#include <vector>

#include "mfarc/forms.hpp"
#include "mfarc/rigor.hpp"

namespace mfarc {

struct FaberError : FormsError {
  using FormsError::FormsError;
};
struct NonExactDivision : FaberError {
  using FaberError::FaberError;
};
struct RootOutOfRange : FaberError {
  using FaberError::FaberError;
};

struct FaberPolynomial {
  int level = 2;
  long kprime = 0;
  Family family = Family::f;
  std::vector<mpq_class> coeffs;  // ascending degree

  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
};

struct RootInterval {
  // exact enclosure endpoints, width <= 1e-8
  mpq_class lo, hi;
  int multiplicity = 1;
  bool in_arc_image = false;  // enclosed root lies in [-64, 0]
};

struct RootReport {
  long degree = 0;
  long real_roots_in_arc_image = 0;  // counted with multiplicity
  long complex_pairs = 0;            // degree deficit / 2
  std::vector<RootInterval> real_roots;
  // k'=2 level-2 elements vanish at the elliptic point regardless of F
  bool elliptic_trivial_zero = false;
};

// Divides the series by S^ell F_{k'} exactly and rewrites the quotient in
// powers of phi by back-substitution from the highest pole downward.
FaberPolynomial extract(const BasisElement& elem);

RootReport root_report(const FaberPolynomial& p);

// theta in [0, pi/2] with phi(-1/2 + e^{i theta}/2) = root, by monotone
// bisection against certified evaluations of phi; enclosure width <= 1e-8.
std::pair<double, double> arc_root_pullback(const FaberPolynomial& p,
                                            double root);

// Certified value of phi on the level-2 arc at the given angle.
RInt phi_arc_value(double theta, long terms = 60);

}  // namespace mfarc

#endif
