#include "mfarc/arczeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mfarc {

namespace {

long floordiv(long a, long b) {
  long q = a / b, r = a % b;
  return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

double arc_theta_min(int level) {
  // level 3: contour height A' = 1/8 admits sin(theta) >= 3/8
  return level == 2 ? M_PI / 6 : std::asin(0.375);
}

double arc_theta_max(int level) {
  return level == 2 ? M_PI / 2 : M_PI - std::asin(0.375);
}

// per-precision evaluation context: the factor series at a common
// truncation plus tail certificates valid for every |q| <= t_max
struct EvalContext {
  int level;
  long kprime;
  mpfr_prec_t bits;
  long terms;
  LaurentSeries s_series;  // S4 (level 2) or the weight-6 seed (level 3)
  LaurentSeries seed;      // F_{k'} factor; empty series means the constant 1
  LaurentSeries phi;
  double s_tail = 0, seed_tail = 0, phi_tail = 0;

  EvalContext(int lv, long kp, long precision, double t_max)
      : level(lv), kprime(kp) {
    bits = std::max<long>(precision, 64);
    terms = level == 2 ? std::max<long>(precision, 64)
                       : std::max<long>(2 * precision, 128);
    phi = eta_quotient(level, terms);
    phi_tail = eta_tail_bound(level, terms, t_max).bound;
    if (level == 2) {
      s_series = eisenstein(EisensteinName::S4_level2, terms);
      s_tail = tail_bound(BoundedSeries::S4, terms, t_max).bound;
      if (kprime == 2) {
        seed = eisenstein(EisensteinName::F2_level2, terms);
        seed_tail = tail_bound(BoundedSeries::F2, terms, t_max).bound;
      }
    } else {
      s_series = level3_seed6(terms);
      s_tail = tail_bound(BoundedSeries::W_level3, terms, t_max).bound;
      if (kprime == 2) {
        seed = level3_seed(2, terms);
        seed_tail = tail_bound(BoundedSeries::E2_level3, terms, t_max).bound;
      } else if (kprime == 4) {
        seed = level3_seed(4, terms);
        seed_tail = tail_bound(BoundedSeries::seed4_level3, terms, t_max).bound;
      }
    }
  }

  CInt factor(const LaurentSeries& s, double tail, const CInt& q) const {
    using namespace iops;
    return inflate(eval_truncated(s, q), RInt::from_double(tail, bits));
  }

  // certified box around f(z) = S^ell F_{k'} F(phi) at the arc point
  CInt element_value(const BasisElement& elem, const RInt& th) const {
    using namespace iops;
    long N = level;
    RInt x = add(div(RInt::from_long(-1, bits), RInt::from_long(N, bits)),
                 div(cos(th), RInt::from_long(N, bits)));
    RInt y = div(sin(th), RInt::from_long(N, bits));
    CInt q = exp2pii(x, y);

    CInt val = CInt::from_real(RInt::from_long(1, bits));
    long ell = elem.weight.ell;
    if (ell != 0) val = pow_si(factor(s_series, s_tail, q), ell);
    if (!seed.is_zero()) val = mul(val, factor(seed, seed_tail, q));

    CInt ph = factor(phi, phi_tail, q);
    CInt fab(bits);
    for (size_t i = elem.faber.size(); i-- > 0;) {
      fab = mul(fab, ph);
      fab.re = iops::add(fab.re, RInt::from_mpq(elem.faber[i], bits));
    }
    return mul(val, fab);
  }

  // Re(e^{ik theta/2} e^{-pi n sin theta} f(z)); asserts realness
  RInt restriction(const BasisElement& elem, const RInt& th) const {
    using namespace iops;
    CInt f = element_value(elem, th);
    CInt phase = CInt::cis(div(mul(th, elem.spec.k),
                               RInt::from_long(2, bits)));
    RInt scale =
        exp(neg(mul(mul(RInt::pi(bits), sin(th)), elem.spec.n)));
    CInt norm = mul(mul(f, phase), scale);
    if (!norm.im.contains_zero())
      throw RealnessViolation(
          "imaginary part of the arc restriction excludes zero");
    return norm.re;
  }
};

void check_theta(const BasisElement& elem, double theta) {
  if (!(theta > 0))
    throw TailBoundUnavailable("no tail certificate covers |q| = 1");
  if (theta > arc_theta_max(elem.spec.level) + 1e-12)
    throw ArcZerosError("theta outside the arc range");
}

RInt restriction_at(const BasisElement& elem, const RInt& theta,
                    long precision, double t_max) {
  EvalContext ctx(elem.spec.level, elem.weight.kprime, precision, t_max);
  RInt th(ctx.bits);
  mpfr_set(th.lo, theta.lo, MPFR_RNDD);
  mpfr_set(th.hi, theta.hi, MPFR_RNDU);
  return ctx.restriction(elem, th);
}

double q_abs_at(int level, double theta) {
  // |q| = e^{-2 pi sin(theta)/N}, rounded up
  using namespace iops;
  RInt y = div(sin(RInt::from_double(theta)), RInt::from_long(level));
  return exp(mul(mul(RInt::pi(), y), -2L)).hi_d();
}

}  // namespace

ArcPoint ArcPoint::at(int level, double theta, mpfr_prec_t prec) {
  if (level != 2 && level != 3) throw UnsupportedLevel(level);
  using namespace iops;
  ArcPoint p;
  p.level = level;
  p.theta = theta;
  RInt th = RInt::from_double(theta, prec);
  RInt n = RInt::from_long(level, prec);
  p.z = CInt(add(div(RInt::from_long(-1, prec), n), div(cos(th), n)),
             div(sin(th), n));
  return p;
}

CInt evaluate_series(const LaurentSeries& s, const CInt& z,
                     const TailCertificate& tail) {
  using namespace iops;
  if (!(mpfr_sgn(z.im.lo) > 0))
    throw ArcZerosError("evaluation point must have Im z > 0");
  double q_abs = exp(mul(mul(RInt::pi(z.prec()), z.im), -2L)).hi_d();
  if (q_abs > tail.t)
    throw TailBoundUnavailable("tail certificate does not cover this |q|");
  if (s.truncation() < tail.N)
    throw TailBoundUnavailable("series truncated below the certificate");
  CInt v = eval_truncated(s.truncated(tail.N), exp2pii(z.re, z.im));
  return inflate(v, RInt::from_double(tail.bound, z.prec()));
}

double predictor(int level, long k, long n, double theta) {
  if (level == 2)
    return (n % 2 ? -2.0 : 2.0) *
           std::cos(k * theta / 2 - M_PI * n * std::cos(theta));
  double a = 2 * M_PI * n / level;
  return 2.0 * std::cos(k * theta / 2 + a - a * std::cos(theta));
}

long guaranteed_floor(long k, long n) {
  if (n == 0) return floordiv(k, 6);
  return static_cast<long>(
      std::floor(std::sqrt(3.0) / 2 * double(n) + double(k) / 6));
}

RInt normalized_restriction(const BasisElement& elem, double theta,
                            long precision) {
  return normalized_restriction(elem, RInt::from_double(theta), precision);
}

RInt normalized_restriction(const BasisElement& elem, const RInt& theta,
                            long precision) {
  check_theta(elem, theta.lo_d());
  check_theta(elem, theta.hi_d());
  return restriction_at(elem, theta, precision,
                        q_abs_at(elem.spec.level, theta.lo_d()));
}

int restriction_sign(const BasisElement& elem, double theta, long precision) {
  return restriction_sign(elem, RInt::from_double(theta), precision);
}

int restriction_sign(const BasisElement& elem, const RInt& theta,
                     long precision) {
  int s = normalized_restriction(elem, theta, precision).certified_sign();
  if (s == 0)
    throw InconclusiveSample("enclosure straddles zero; raise precision");
  return s;
}

ArcProfile count_arc_zeros(const BasisElement& elem, double theta_lo,
                           double theta_hi, long grid_size, long precision,
                           long precision_cap) {
  int level = elem.spec.level;
  double win_lo = arc_theta_min(level), win_hi = arc_theta_max(level);
  if (theta_lo < 0) theta_lo = win_lo;
  if (theta_hi < 0) theta_hi = win_hi;
  check_theta(elem, theta_lo);
  check_theta(elem, theta_hi);
  if (theta_lo >= theta_hi) throw ArcZerosError("empty theta range");

  long valence = static_cast<long>(elem.faber.size()) - 1;
  long grid_min = 2 * valence + 16;
  if (grid_size == 0) grid_size = std::max<long>(4096, grid_min);
  if (grid_size < grid_min)
    throw ArcZerosError("grid too coarse for this pole order");

  ArcProfile prof;
  prof.spec = elem.spec;
  prof.valence_count = valence;
  prof.counted_theta_min = std::max(theta_lo, win_lo);
  prof.counted_theta_max = std::min(theta_hi, win_hi);
  prof.precision_bits = precision;
  if (level == 2) {
    prof.guaranteed_floor = guaranteed_floor(elem.spec.k, elem.spec.n);
  } else {
    prof.asymptotic_reference =
        0.9618 * double(elem.spec.n) + 0.2792 * double(elem.spec.k);
  }

  // one context per precision level, shared across samples; certificates
  // are taken at the largest |q| over the sampled range
  double t_max = q_abs_at(level, theta_lo);
  std::vector<EvalContext> ctxs;
  auto context = [&](long bits) -> const EvalContext& {
    for (const auto& c : ctxs)
      if (c.bits >= bits) return c;
    ctxs.emplace_back(level, elem.weight.kprime, bits, t_max);
    return ctxs.back();
  };

  prof.samples.reserve(grid_size);
  for (long i = 0; i < grid_size; ++i) {
    double theta =
        theta_lo + (theta_hi - theta_lo) * double(i) / double(grid_size - 1);
    ArcSample smp;
    smp.theta = theta;
    smp.predictor = predictor(level, elem.spec.k, elem.spec.n, theta);
    smp.counted = theta >= prof.counted_theta_min - 1e-12 &&
                  theta <= prof.counted_theta_max + 1e-12;
    bool evaluated = false;
    for (long bits = precision; bits <= precision_cap; bits *= 2) {
      try {
        const EvalContext& ctx = context(bits);
        RInt v = ctx.restriction(elem, RInt::from_double(theta, ctx.bits));
        smp.value = v.mid_d();
        smp.radius = v.width_d() / 2;
        smp.sign = v.certified_sign();
        evaluated = true;
        prof.precision_bits = std::max(prof.precision_bits, bits);
      } catch (const RealnessViolation&) {
        throw;
      } catch (const std::exception&) {
        // factor enclosure too wide to invert or divide; retry wider
      }
      if (evaluated && smp.sign != 0) break;
    }
    if (!evaluated) {
      smp.value = 0;
      smp.radius = std::numeric_limits<double>::infinity();
    }
    prof.samples.push_back(smp);
  }

  int prev = 0;
  for (const ArcSample& s : prof.samples) {
    if (!s.counted || s.sign == 0) continue;
    if (prev != 0 && s.sign != prev) ++prof.sign_changes;
    prev = s.sign;
  }
  return prof;
}

}  // namespace mfarc
