#ifndef MFARC_RIGOR_HPP
#define MFARC_RIGOR_HPP

// Certified bounds: series tail certificates from divisor-sum estimates,
// derivative-bounded extremum certification on the boundary arc and the
// integration segment, the D(z,tau) integral bound, and the index
// thresholds of the main theorem.

#include <stdexcept>
#include <string>

#include "mfarc/interval.hpp"
#include "mfarc/qseries.hpp"

namespace mfarc {

struct RigorError : std::runtime_error {
  explicit RigorError(const std::string& m) : std::runtime_error(m) {}
};
struct InvalidRegime : RigorError {
  using RigorError::RigorError;
};
struct CertificationFailed : RigorError {
  using RigorError::RigorError;
};

// E2_level3 is the weight-2 seed (3E_2(3z) - E_2(z))/2; seed4_level3 is
// (E_4(z) - E_4(3z))/240; W_level3 is the weight-6 cusp form (eta(z)eta(3z))^6.
enum class BoundedSeries { S4, F2, E4_2z, phi_level2, E2_level3, seed4_level3,
                           W_level3 };

// arc_level2: z = -1/2 + e^{i theta}/2, theta in [pi/6, pi/2].
// segment_fifth: tau = u + i/5, u in [-1/2, 1/2].
enum class Domain { arc_level2, segment_fifth };

enum class Extremum { min_abs, max_abs };

struct TailCertificate {
  std::string series;
  long N = 0;        // certified: |sum_{n>N} a(n) q^n| <= bound for |q| <= t
  double t = 0;
  double bound = 0;
};

struct CertifiedBound {
  std::string quantity;
  std::string kind;  // "upper" or "lower"
  double value = 0;
  std::string regime;
};

// sigma_k(n) <= n^{(k+1)/2} + n^{k+1}, rounded up.
double sigma_bound(long k, long n);

// |q| and |q^{-1}| upper bounds over the domain.
RInt q_upper(Domain dom);
RInt qinv_upper(Domain dom);

// Tail certificate at a given |q| bound t.  The split is: ten exact tail
// terms, then geometric-derivative closed forms on the divisor-sum bounds.
// phi_level2 requires the Domain overload (its chain bound needs the
// |q^{-1}| bound and a certified min |S4| for the regime).
TailCertificate tail_bound(BoundedSeries s, long N, double t);
TailCertificate tail_bound(BoundedSeries s, long N, Domain dom);

// Majorant tail for the level-2/3 eta quotient: |a(n)| is dominated by the
// coefficients of the reciprocal eta product, whose value at t has a closed
// logarithmic form.  Valid for any t in (0,1); useful when |q| varies.
TailCertificate eta_tail_bound(int level, long N, double t);

// Majorant tail for any series whose coefficients are dominated by those of
// q^shift Pi (1-q^n)^{-e} (1-q^{pn})^{-e}; eta_tail_bound is the case
// (e, p, shift) = (24, 2, -1) or (12, 3, -1).
TailCertificate eta_product_tail_bound(long e, int p, long shift, long N,
                                       double t);

CertifiedBound certify_extremum(BoundedSeries s, Domain dom, Extremum kind,
                                long grid_size = 0);

struct DIntegralReport {
  CertifiedBound sup_d;              // pointwise sup |D(z,tau)|
  CertifiedBound integral_d;         // sup_z of int_{-1/2}^{1/2} |D| du
  CertifiedBound integral_one_plus;  // same for |1+D|
  long pieces = 0;                   // final partition size, for auditing
};
DIntegralReport d_integral_bound(long grid_size = 0);

// 14*ell+8 for ell >= 0, 15*|ell|+8 for ell < 0; re-verifies the decay and
// ratio inequalities the thresholds rest on.
long theorem_threshold(long ell);

// Horner evaluation of the truncated series at a complex box, outward
// rounded; the Laurent part is applied as an exact power of q.
CInt eval_truncated(const LaurentSeries& s, const CInt& q);

}  // namespace mfarc

#endif
