#include "mfarc/interval.hpp"

namespace mfarc {
namespace iops {

RInt inv(const RInt& b) {
  if (b.contains_zero())
    throw std::domain_error("RInt inv: interval straddles zero");
  RInt r(b.prec());
  // monotone decreasing on either sign, endpoints swap
  mpfr_ui_div(r.lo, 1, b.hi, MPFR_RNDD);
  mpfr_ui_div(r.hi, 1, b.lo, MPFR_RNDU);
  return r;
}

RInt sqrt(const RInt& a) {
  if (mpfr_sgn(a.lo) < 0)
    throw std::domain_error("RInt sqrt: negative lower endpoint");
  RInt r(a.prec());
  mpfr_sqrt(r.lo, a.lo, MPFR_RNDD);
  mpfr_sqrt(r.hi, a.hi, MPFR_RNDU);
  return r;
}

RInt exp(const RInt& a) {
  RInt r(a.prec());
  mpfr_exp(r.lo, a.lo, MPFR_RNDD);
  mpfr_exp(r.hi, a.hi, MPFR_RNDU);
  return r;
}

namespace {

// Does [lo, hi] contain a point congruent to c mod 2pi?  Conservative:
// may answer yes spuriously for very wide intervals, never no wrongly.
bool contains_mod_2pi(const RInt& a, int half_turns_offset) {
  // Count multiples of pi in [lo, hi] with parity matching
  // half_turns_offset (0 for even multiples, 1 for odd).
  mpfr_prec_t p = a.prec();
  mpfr_t pi_d, pi_u, t, klo, khi;
  mpfr_inits2(p, pi_d, pi_u, t, klo, khi, (mpfr_ptr) nullptr);
  mpfr_const_pi(pi_d, MPFR_RNDD);
  mpfr_const_pi(pi_u, MPFR_RNDU);
  // smallest integer k with k*pi >= lo:  k >= lo/pi
  mpfr_div(t, a.lo, mpfr_sgn(a.lo) >= 0 ? pi_u : pi_d, MPFR_RNDD);
  mpfr_ceil(klo, t);
  // largest integer k with k*pi <= hi:  k <= hi/pi
  mpfr_div(t, a.hi, mpfr_sgn(a.hi) >= 0 ? pi_d : pi_u, MPFR_RNDU);
  mpfr_floor(khi, t);
  bool found = false;
  if (mpfr_cmp(klo, khi) <= 0) {
    // interval of integers [klo, khi]; contains one of the wanted parity
    // iff it has length >= 1 or its single element has that parity
    if (mpfr_cmp(klo, khi) < 0) {
      found = true;
    } else {
      long k = mpfr_get_si(klo, MPFR_RNDN);
      found = (((k % 2) + 2) % 2) == half_turns_offset;
    }
  }
  mpfr_clears(pi_d, pi_u, t, klo, khi, (mpfr_ptr) nullptr);
  return found;
}

}  // namespace

RInt cos(const RInt& a) {
  RInt r(a.prec());
  mpfr_t c1, c2;
  mpfr_inits2(a.prec(), c1, c2, (mpfr_ptr) nullptr);
  mpfr_cos(c1, a.lo, MPFR_RNDD);
  mpfr_cos(c2, a.hi, MPFR_RNDD);
  mpfr_min(r.lo, c1, c2, MPFR_RNDD);
  mpfr_cos(c1, a.lo, MPFR_RNDU);
  mpfr_cos(c2, a.hi, MPFR_RNDU);
  mpfr_max(r.hi, c1, c2, MPFR_RNDU);
  mpfr_clears(c1, c2, (mpfr_ptr) nullptr);
  // cos attains +1 at even multiples of pi, -1 at odd multiples
  if (contains_mod_2pi(a, 0)) mpfr_set_si(r.hi, 1, MPFR_RNDU);
  if (contains_mod_2pi(a, 1)) mpfr_set_si(r.lo, -1, MPFR_RNDD);
  return r;
}

RInt sin(const RInt& a) {
  // sin(x) = cos(x - pi/2)
  RInt half_pi = RInt::pi(a.prec());
  mpfr_div_ui(half_pi.lo, half_pi.lo, 2, MPFR_RNDD);
  mpfr_div_ui(half_pi.hi, half_pi.hi, 2, MPFR_RNDU);
  return cos(sub(a, half_pi));
}

RInt pow_si(const RInt& a, long n) {
  if (n == 0) return RInt::from_long(1, a.prec());
  bool invert = n < 0;
  unsigned long e = invert ? static_cast<unsigned long>(-n)
                           : static_cast<unsigned long>(n);
  RInt acc = RInt::from_long(1, a.prec());
  RInt base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return invert ? inv(acc) : acc;
}

CInt inv(const CInt& a) {
  // 1/(x+iy) = (x - iy) / (x^2 + y^2)
  RInt n = add(mul(a.re, a.re), mul(a.im, a.im));
  if (n.contains_zero())
    throw std::domain_error("CInt inv: box contains zero");
  RInt ninv = inv(n);
  return CInt(mul(a.re, ninv), neg(mul(a.im, ninv)));
}

CInt pow_si(const CInt& a, long n) {
  if (n == 0) {
    CInt one(a.prec());
    one.re = RInt::from_long(1, a.prec());
    return one;
  }
  bool invert = n < 0;
  unsigned long e = invert ? static_cast<unsigned long>(-n)
                           : static_cast<unsigned long>(n);
  CInt acc(a.prec());
  acc.re = RInt::from_long(1, a.prec());
  CInt base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return invert ? inv(acc) : acc;
}

CInt exp2pii(const RInt& x, const RInt& y) {
  mpfr_prec_t p = std::max(x.prec(), y.prec());
  RInt two_pi = RInt::pi(p);
  two_pi = mul(two_pi, 2);
  RInt radius = exp(neg(mul(two_pi, y)));
  RInt angle = mul(two_pi, x);
  return mul(CInt::cis(angle), radius);
}

CInt inflate(const CInt& a, const RInt& r) {
  if (mpfr_sgn(r.hi) < 0)
    throw std::domain_error("CInt inflate: negative radius");
  CInt out(a.prec());
  mpfr_sub(out.re.lo, a.re.lo, r.hi, MPFR_RNDD);
  mpfr_add(out.re.hi, a.re.hi, r.hi, MPFR_RNDU);
  mpfr_sub(out.im.lo, a.im.lo, r.hi, MPFR_RNDD);
  mpfr_add(out.im.hi, a.im.hi, r.hi, MPFR_RNDU);
  return out;
}

}  // namespace iops

RInt CInt::abs_upper() const {
  RInt ar = iops::abs(re), ai = iops::abs(im);
  RInt s = iops::add(iops::mul(ar, ar), iops::mul(ai, ai));
  RInt r = iops::sqrt(s);
  RInt out(prec());
  mpfr_set(out.lo, r.hi, MPFR_RNDD);
  mpfr_set(out.hi, r.hi, MPFR_RNDU);
  return out;
}

RInt CInt::abs_lower() const {
  // distance from the origin to the box
  mpfr_prec_t p = prec();
  RInt dx(p), dy(p);
  if (mpfr_sgn(re.lo) > 0)
    mpfr_set(dx.lo, re.lo, MPFR_RNDD);
  else if (mpfr_sgn(re.hi) < 0)
    mpfr_neg(dx.lo, re.hi, MPFR_RNDD);
  else
    mpfr_set_zero(dx.lo, 1);
  mpfr_set(dx.hi, dx.lo, MPFR_RNDU);
  if (mpfr_sgn(im.lo) > 0)
    mpfr_set(dy.lo, im.lo, MPFR_RNDD);
  else if (mpfr_sgn(im.hi) < 0)
    mpfr_neg(dy.lo, im.hi, MPFR_RNDD);
  else
    mpfr_set_zero(dy.lo, 1);
  mpfr_set(dy.hi, dy.lo, MPFR_RNDU);
  RInt s = iops::add(iops::mul(dx, dx), iops::mul(dy, dy));
  RInt r = iops::sqrt(s);
  RInt out(p);
  mpfr_set(out.lo, r.lo, MPFR_RNDD);
  mpfr_set(out.hi, r.lo, MPFR_RNDU);
  return out;
}

}  // namespace mfarc
