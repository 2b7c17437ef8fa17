#ifndef MFARC_INTERVAL_HPP
#define MFARC_INTERVAL_HPP

// Directed-rounding interval arithmetic over MPFR.  Every operation rounds
// the lower endpoint down and the upper endpoint up, so an RInt always
// encloses the exact result of the same operation on enclosed reals.

#include <gmpxx.h>
#include <mpfr.h>

#include <cassert>
#include <stdexcept>
#include <string>
#include <utility>

namespace mfarc {

inline constexpr mpfr_prec_t kDefaultPrec = 256;

class RInt {
 public:
  mpfr_t lo, hi;

  explicit RInt(mpfr_prec_t prec = kDefaultPrec) {
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_set_zero(lo, 1);
    mpfr_set_zero(hi, 1);
  }
  RInt(const RInt& o) {
    mpfr_init2(lo, mpfr_get_prec(o.lo));
    mpfr_init2(hi, mpfr_get_prec(o.hi));
    mpfr_set(lo, o.lo, MPFR_RNDD);
    mpfr_set(hi, o.hi, MPFR_RNDU);
  }
  RInt(RInt&& o) noexcept {
    mpfr_init2(lo, mpfr_get_prec(o.lo));
    mpfr_init2(hi, mpfr_get_prec(o.hi));
    mpfr_swap(lo, o.lo);
    mpfr_swap(hi, o.hi);
  }
  RInt& operator=(const RInt& o) {
    if (this != &o) {
      mpfr_set_prec(lo, mpfr_get_prec(o.lo));
      mpfr_set_prec(hi, mpfr_get_prec(o.hi));
      mpfr_set(lo, o.lo, MPFR_RNDD);
      mpfr_set(hi, o.hi, MPFR_RNDU);
    }
    return *this;
  }
  RInt& operator=(RInt&& o) noexcept {
    mpfr_swap(lo, o.lo);
    mpfr_swap(hi, o.hi);
    return *this;
  }
  ~RInt() {
    mpfr_clear(lo);
    mpfr_clear(hi);
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(lo); }

  static RInt from_long(long v, mpfr_prec_t p = kDefaultPrec) {
    RInt r(p);
    mpfr_set_si(r.lo, v, MPFR_RNDD);
    mpfr_set_si(r.hi, v, MPFR_RNDU);
    return r;
  }
  static RInt from_double(double v, mpfr_prec_t p = kDefaultPrec) {
    RInt r(p);
    mpfr_set_d(r.lo, v, MPFR_RNDD);
    mpfr_set_d(r.hi, v, MPFR_RNDU);
    return r;
  }
  // Exact decimal literal, outward rounded; for pinned constants like ".73041".
  static RInt from_decimal(const std::string& s, mpfr_prec_t p = kDefaultPrec) {
    RInt r(p);
    if (mpfr_set_str(r.lo, s.c_str(), 10, MPFR_RNDD) != 0 &&
        mpfr_nan_p(r.lo))
      throw std::invalid_argument("RInt::from_decimal: bad literal " + s);
    mpfr_set_str(r.hi, s.c_str(), 10, MPFR_RNDU);
    return r;
  }
  static RInt from_mpq(const mpq_class& v, mpfr_prec_t p = kDefaultPrec) {
    RInt r(p);
    mpfr_set_q(r.lo, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi, v.get_mpq_t(), MPFR_RNDU);
    return r;
  }
  static RInt from_mpz(const mpz_class& v, mpfr_prec_t p = kDefaultPrec) {
    RInt r(p);
    mpfr_set_z(r.lo, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi, v.get_mpz_t(), MPFR_RNDU);
    return r;
  }
  static RInt hull(const RInt& a, const RInt& b) {
    RInt r(std::max(a.prec(), b.prec()));
    mpfr_min(r.lo, a.lo, b.lo, MPFR_RNDD);
    mpfr_max(r.hi, a.hi, b.hi, MPFR_RNDU);
    return r;
  }
  static RInt pi(mpfr_prec_t p = kDefaultPrec) {
    RInt r(p);
    mpfr_const_pi(r.lo, MPFR_RNDD);
    mpfr_const_pi(r.hi, MPFR_RNDU);
    return r;
  }

  bool contains_zero() const {
    return mpfr_sgn(lo) <= 0 && mpfr_sgn(hi) >= 0;
  }
  // Certified sign: -1, +1, or 0 when the enclosure straddles zero.
  int certified_sign() const {
    if (mpfr_sgn(lo) > 0) return 1;
    if (mpfr_sgn(hi) < 0) return -1;
    return 0;
  }
  double lo_d() const { return mpfr_get_d(lo, MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi, MPFR_RNDU); }
  double mid_d() const { return 0.5 * (lo_d() + hi_d()); }
  double width_d() const {
    RInt w(prec());
    mpfr_sub(w.hi, hi, lo, MPFR_RNDU);
    return mpfr_get_d(w.hi, MPFR_RNDU);
  }
  bool is_valid() const {
    return !mpfr_nan_p(lo) && !mpfr_nan_p(hi) && mpfr_cmp(lo, hi) <= 0;
  }
};

namespace iops {

inline mpfr_prec_t pmax(const RInt& a, const RInt& b) {
  return std::max(a.prec(), b.prec());
}

inline RInt add(const RInt& a, const RInt& b) {
  RInt r(pmax(a, b));
  mpfr_add(r.lo, a.lo, b.lo, MPFR_RNDD);
  mpfr_add(r.hi, a.hi, b.hi, MPFR_RNDU);
  return r;
}
inline RInt sub(const RInt& a, const RInt& b) {
  RInt r(pmax(a, b));
  mpfr_sub(r.lo, a.lo, b.hi, MPFR_RNDD);
  mpfr_sub(r.hi, a.hi, b.lo, MPFR_RNDU);
  return r;
}
inline RInt neg(const RInt& a) {
  RInt r(a.prec());
  mpfr_neg(r.lo, a.hi, MPFR_RNDD);
  mpfr_neg(r.hi, a.lo, MPFR_RNDU);
  return r;
}
inline RInt mul(const RInt& a, const RInt& b) {
  RInt r(pmax(a, b));
  mpfr_t t;
  mpfr_init2(t, r.prec());
  // lower endpoint: min of the four downward-rounded products
  mpfr_mul(r.lo, a.lo, b.lo, MPFR_RNDD);
  mpfr_mul(t, a.lo, b.hi, MPFR_RNDD);
  mpfr_min(r.lo, r.lo, t, MPFR_RNDD);
  mpfr_mul(t, a.hi, b.lo, MPFR_RNDD);
  mpfr_min(r.lo, r.lo, t, MPFR_RNDD);
  mpfr_mul(t, a.hi, b.hi, MPFR_RNDD);
  mpfr_min(r.lo, r.lo, t, MPFR_RNDD);
  // upper endpoint: max of the four upward-rounded products
  mpfr_mul(r.hi, a.hi, b.hi, MPFR_RNDU);
  mpfr_mul(t, a.lo, b.hi, MPFR_RNDU);
  mpfr_max(r.hi, r.hi, t, MPFR_RNDU);
  mpfr_mul(t, a.hi, b.lo, MPFR_RNDU);
  mpfr_max(r.hi, r.hi, t, MPFR_RNDU);
  mpfr_mul(t, a.lo, b.lo, MPFR_RNDU);
  mpfr_max(r.hi, r.hi, t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}
// 1/b; throws if b straddles zero.
RInt inv(const RInt& b);
inline RInt div(const RInt& a, const RInt& b) { return mul(a, inv(b)); }

inline RInt abs(const RInt& a) {
  RInt r(a.prec());
  if (mpfr_sgn(a.lo) >= 0) {
    mpfr_set(r.lo, a.lo, MPFR_RNDD);
    mpfr_set(r.hi, a.hi, MPFR_RNDU);
  } else if (mpfr_sgn(a.hi) <= 0) {
    mpfr_neg(r.lo, a.hi, MPFR_RNDD);
    mpfr_neg(r.hi, a.lo, MPFR_RNDU);
  } else {
    mpfr_set_zero(r.lo, 1);
    mpfr_neg(r.hi, a.lo, MPFR_RNDU);
    mpfr_max(r.hi, r.hi, a.hi, MPFR_RNDU);
  }
  return r;
}
RInt sqrt(const RInt& a);
RInt exp(const RInt& a);
// cos/sin over an arbitrary interval; detects enclosed extrema.
RInt cos(const RInt& a);
RInt sin(const RInt& a);
// a^n for integer n; for n < 0 requires a bounded away from zero.
RInt pow_si(const RInt& a, long n);

inline RInt add(const RInt& a, long b) { return add(a, RInt::from_long(b, a.prec())); }
inline RInt sub(const RInt& a, long b) { return sub(a, RInt::from_long(b, a.prec())); }
inline RInt mul(const RInt& a, long b) { return mul(a, RInt::from_long(b, a.prec())); }

}  // namespace iops

// Rectangular complex enclosure.
class CInt {
 public:
  RInt re, im;

  explicit CInt(mpfr_prec_t p = kDefaultPrec) : re(p), im(p) {}
  CInt(RInt r, RInt i) : re(std::move(r)), im(std::move(i)) {}

  static CInt from_real(const RInt& r) {
    CInt c(r.prec());
    c.re = r;
    return c;
  }
  // e^{i t}
  static CInt cis(const RInt& t) { return CInt(iops::cos(t), iops::sin(t)); }

  mpfr_prec_t prec() const { return re.prec(); }

  // Upper bound on |z| over the box.
  RInt abs_upper() const;
  // Lower bound on |z| over the box (0 if the box contains 0).
  RInt abs_lower() const;
  bool is_valid() const { return re.is_valid() && im.is_valid(); }
};

namespace iops {
inline CInt add(const CInt& a, const CInt& b) {
  return CInt(add(a.re, b.re), add(a.im, b.im));
}
inline CInt sub(const CInt& a, const CInt& b) {
  return CInt(sub(a.re, b.re), sub(a.im, b.im));
}
inline CInt mul(const CInt& a, const CInt& b) {
  return CInt(sub(mul(a.re, b.re), mul(a.im, b.im)),
              add(mul(a.re, b.im), mul(a.im, b.re)));
}
inline CInt mul(const CInt& a, const RInt& s) {
  return CInt(mul(a.re, s), mul(a.im, s));
}
CInt inv(const CInt& a);
inline CInt div(const CInt& a, const CInt& b) { return mul(a, inv(b)); }
CInt pow_si(const CInt& a, long n);
// e^{2 pi i z} for z = x + i y.
CInt exp2pii(const RInt& x, const RInt& y);
// Grow the box by radius r in both coordinates.
CInt inflate(const CInt& a, const RInt& r);
}  // namespace iops

}  // namespace mfarc

#endif
