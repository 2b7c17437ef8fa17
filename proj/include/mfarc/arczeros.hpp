#ifndef MFARC_ARCZEROS_HPP
#define MFARC_ARCZEROS_HPP

// Certified evaluation of basis elements on the lower boundary arc: the
// normalized real-valued restriction, the cosine predictor, and counted
// sign changes against the guaranteed zero-count floor.

#include <vector>

#include "mfarc/forms.hpp"
#include "mfarc/rigor.hpp"

namespace mfarc {

struct ArcZerosError : FormsError {
  using FormsError::FormsError;
};
// imaginary part of the normalized restriction excludes zero
struct RealnessViolation : ArcZerosError {
  using ArcZerosError::ArcZerosError;
};
// no tail certificate covers the requested |q|
struct TailBoundUnavailable : ArcZerosError {
  using ArcZerosError::ArcZerosError;
};
// enclosure straddles zero at the requested precision
struct InconclusiveSample : ArcZerosError {
  using ArcZerosError::ArcZerosError;
};

// z = -1/N + e^{i theta}/N on the lower boundary of the fundamental domain
struct ArcPoint {
  int level = 2;
  double theta = 0;
  CInt z;

  static ArcPoint at(int level, double theta, mpfr_prec_t prec = kDefaultPrec);
};

struct ArcSample {
  double theta = 0;
  double value = 0;      // midpoint of the certified real enclosure
  double radius = 0;     // certified half-width of the enclosure
  double predictor = 0;
  int sign = 0;          // certified sign; 0 when undecided
  bool counted = false;  // lies in the guaranteed counting window
};

struct ArcProfile {
  BasisSpec spec;
  std::vector<ArcSample> samples;
  long sign_changes = 0;
  // floor(sqrt(3)/2 n + k/6) at level 2; not asserted at level 3
  long guaranteed_floor = 0;
  long valence_count = 0;  // total zero count = degree of the Faber part
  // level 3 reports the asymptotic count .9618 n + .2792 k as metadata
  double asymptotic_reference = 0;
  double counted_theta_min = 0, counted_theta_max = 0;
  long precision_bits = 0;  // highest working precision used
};

// Truncated series at q = e^{2 pi i z}, outward rounded and inflated by the
// tail certificate.  Requires Im z > 0, |q| <= tail.t, and a series
// truncation at least tail.N.
CInt evaluate_series(const LaurentSeries& s, const CInt& z,
                     const TailCertificate& tail);

// (-1)^n 2 cos(k theta/2 - pi n cos theta) at level 2; the level-N form is
// 2 cos(k theta/2 + 2 pi n/N - (2 pi n/N) cos theta).
double predictor(int level, long k, long n, double theta);

// floor(sqrt(3)/2 n + k/6), the guaranteed level-2 arc zero count
long guaranteed_floor(long k, long n);

// Re(e^{i k theta/2} e^{-pi n sin theta} f(z)) with certified radius; the
// element is evaluated in factored form with per-factor tail certificates.
RInt normalized_restriction(const BasisElement& elem, double theta,
                            long precision = 200);
// Interval-theta overload; lets exact angles like pi/2 be enclosed so that
// genuine zeros at special points show up as straddling enclosures.
RInt normalized_restriction(const BasisElement& elem, const RInt& theta,
                            long precision = 200);

// Certified sign of the normalized restriction; throws InconclusiveSample
// when the enclosure straddles zero at this precision.
int restriction_sign(const BasisElement& elem, double theta,
                     long precision = 200);
int restriction_sign(const BasisElement& elem, const RInt& theta,
                     long precision = 200);

// Samples the normalized restriction on a uniform theta grid, escalating
// precision up to the cap on undecided samples, and counts certified sign
// changes inside the guaranteed window.  Defaults: [pi/6, pi/2] at level 2,
// the admissible range sin(theta) >= 3/8 at level 3, 4096 grid points.
ArcProfile count_arc_zeros(const BasisElement& elem, double theta_lo = -1,
                           double theta_hi = -1, long grid_size = 0,
                           long precision = 200, long precision_cap = 800);

}  // namespace mfarc

#endif
