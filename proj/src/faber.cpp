#include "mfarc/faber.hpp"

#include <algorithm>
#include <cmath>

namespace mfarc {

namespace {

using Poly = std::vector<mpq_class>;  // ascending; empty = zero polynomial

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

long deg(const Poly& p) { return static_cast<long>(p.size()) - 1; }

Poly derivative(const Poly& p) {
  Poly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(mpq_class(long(i)) * p[i]);
  trim(d);
  return d;
}

Poly monic(Poly p) {
  trim(p);
  if (p.empty()) return p;
  mpq_class lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

// remainder of a mod b (b nonzero)
Poly rem(Poly a, const Poly& b) {
  trim(a);
  while (deg(a) >= deg(b) && !a.empty()) {
    mpq_class f = a.back() / b.back();
    long shift = deg(a) - deg(b);
    for (size_t i = 0; i < b.size(); ++i)
      a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

Poly quot(Poly a, const Poly& b) {
  trim(a);
  Poly q(std::max<long>(deg(a) - deg(b) + 1, 0), mpq_class(0));
  while (deg(a) >= deg(b) && !a.empty()) {
    mpq_class f = a.back() / b.back();
    long shift = deg(a) - deg(b);
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i)
      a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return q;
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b);
    a = std::move(b);
    b = monic(std::move(r));
  }
  return monic(std::move(a));
}

mpq_class eval(const Poly& p, const mpq_class& x) {
  mpq_class v = 0;
  for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

int sign_at(const Poly& p, const mpq_class& x) {
  return sgn(eval(p, x));
}

std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain;
  chain.push_back(p);
  chain.push_back(derivative(p));
  while (!chain.back().empty() && deg(chain.back()) > 0) {
    Poly r = rem(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    trim(r);
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  return chain;
}

long sign_variations(const std::vector<Poly>& chain, const mpq_class& x) {
  long v = 0;
  int prev = 0;
  for (const Poly& p : chain) {
    int s = sign_at(p, x);
    if (s != 0) {
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
  }
  return v;
}

// roots in (a, b]
long roots_in(const std::vector<Poly>& chain, const mpq_class& a,
              const mpq_class& b) {
  return sign_variations(chain, a) - sign_variations(chain, b);
}

// split point in (a, b) that is not a root of p
mpq_class split_point(const Poly& p, const mpq_class& a, const mpq_class& b) {
  for (long num = 1; num < 64; ++num) {
    for (long den : {2L, 3L, 5L, 7L}) {
      if (num >= den) continue;
      mpq_class m = a + (b - a) * num / den;
      if (sign_at(p, m) != 0) return m;
    }
  }
  throw FaberError("could not find a root-free split point");
}

// isolate and refine all real roots of the squarefree polynomial p to
// enclosures (a, b] of width <= tol
std::vector<std::pair<mpq_class, mpq_class>> isolate_real_roots(
    const Poly& p, const std::vector<Poly>& chain, const mpq_class& tol) {
  std::vector<std::pair<mpq_class, mpq_class>> out;
  if (deg(p) < 1) return out;
  // Cauchy bound
  mpq_class B = 0;
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    mpq_class r = abs(p[i] / p.back());
    if (r > B) B = r;
  }
  B += 1;
  struct Seg {
    mpq_class a, b;
    long count;
  };
  std::vector<Seg> work{{-B, B, roots_in(chain, -B, B)}};
  while (!work.empty()) {
    Seg s = work.back();
    work.pop_back();
    if (s.count == 0) continue;
    if (s.count == 1 && s.b - s.a <= tol) {
      out.emplace_back(s.a, s.b);
      continue;
    }
    mpq_class m = split_point(p, s.a, s.b);
    long left = roots_in(chain, s.a, m);
    work.push_back({s.a, m, left});
    work.push_back({m, s.b, s.count - left});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Yun's squarefree decomposition: p = prod a_i^i
std::vector<Poly> squarefree_decomposition(const Poly& p0) {
  Poly p = monic(p0);
  std::vector<Poly> factors;  // factors[i-1] has multiplicity i
  if (deg(p) < 1) return factors;
  Poly dp = derivative(p);
  Poly g = gcd(p, dp);
  if (deg(g) == 0) {
    factors.push_back(p);
    return factors;
  }
  Poly b = quot(p, g), c = quot(dp, g);
  Poly db = derivative(b);
  Poly d(c.size());
  d = c;
  {
    Poly t = db;
    t.resize(std::max(t.size(), d.size()), mpq_class(0));
    d.resize(t.size(), mpq_class(0));
    for (size_t i = 0; i < t.size(); ++i) d[i] -= t[i];
    trim(d);
  }
  while (deg(b) > 0) {
    Poly a = gcd(b, d);
    factors.push_back(a);
    b = quot(b, a);
    c = quot(d, a);
    db = derivative(b);
    d = c;
    d.resize(std::max(d.size(), db.size()), mpq_class(0));
    for (size_t i = 0; i < db.size(); ++i) d[i] -= db[i];
    trim(d);
  }
  return factors;
}

}  // namespace

FaberPolynomial extract(const BasisElement& elem) {
  const BasisSpec& spec = elem.spec;
  long prec = elem.series.truncation();
  long work = prec + 2 * std::abs(elem.weight.ell) + 8;

  LaurentSeries phi = eta_quotient(spec.level, work);
  LaurentSeries base;
  if (spec.level == 2) {
    base = power(eisenstein(EisensteinName::S4_level2, work),
                 elem.weight.ell);
    if (elem.weight.kprime == 2)
      base = base * eisenstein(EisensteinName::F2_level2, work);
  } else {
    base = power(level3_seed6(work), elem.weight.ell) *
           level3_seed(elem.weight.kprime, work);
  }

  LaurentSeries q = elem.series * invert(base);
  long d = spec.n + base.valuation();
  if (d < 0) throw NonExactDivision("quotient has no polynomial degree");
  if (q.truncation() < 1)
    throw NonExactDivision("series precision too low for extraction");

  FaberPolynomial out;
  out.level = spec.level;
  out.kprime = elem.weight.kprime;
  out.family = spec.family;
  out.coeffs.assign(d + 1, mpq_class(0));
  std::vector<LaurentSeries> phi_pow{LaurentSeries::one(phi.truncation())};
  for (long j = 1; j <= d; ++j) phi_pow.push_back(phi_pow.back() * phi);
  LaurentSeries r = q;
  for (long j = d; j >= 0; --j) {
    if (-j < r.valuation()) continue;  // coefficient already zero
    mpq_class c = r.coeff(-j);
    out.coeffs[j] = c;
    if (c != 0) r = r - phi_pow[j].scaled(c);
  }
  // the remainder must vanish through the known range
  for (long e = r.valuation(); e <= r.truncation(); ++e)
    if (r.coeff(e) != 0)
      throw NonExactDivision("series is not a polynomial in the Hauptmodul");
  return out;
}

RootReport root_report(const FaberPolynomial& p) {
  RootReport rep;
  rep.degree = p.degree();
  rep.elliptic_trivial_zero = p.level == 2 && p.kprime == 2;
  if (rep.degree < 1) return rep;

  const mpq_class tol(1, 100000000);  // 1e-8
  const mpq_class left(-64), right(0);
  long real_count = 0;
  auto factors = squarefree_decomposition(p.coeffs);
  for (size_t i = 0; i < factors.size(); ++i) {
    int mult = static_cast<int>(i) + 1;
    const Poly& f = factors[i];
    if (deg(f) < 1) continue;
    auto chain = sturm_chain(f);
    for (auto& [lo, hi] : isolate_real_roots(f, chain, tol)) {
      RootInterval ri;
      ri.multiplicity = mult;
      // classify against [-64, 0] exactly: if the enclosure straddles a
      // boundary that is not itself a root, cut it at the boundary
      mpq_class a = lo, b = hi;
      for (const mpq_class& edge : {left, right}) {
        if (a < edge && b > edge && sign_at(f, edge) != 0) {
          if (roots_in(chain, a, edge) == 1)
            b = edge;
          else
            a = edge;
        }
      }
      ri.lo = a;
      ri.hi = b;
      bool on_left_edge = sign_at(f, left) == 0 && a <= left && left <= b;
      bool on_right_edge = sign_at(f, right) == 0 && a <= right && right <= b;
      ri.in_arc_image =
          (a >= left && b <= right) || on_left_edge || on_right_edge;
      if (ri.in_arc_image) real_count += mult;
      rep.real_roots.push_back(std::move(ri));
    }
  }
  long total_real = 0;
  for (const auto& ri : rep.real_roots) total_real += ri.multiplicity;
  rep.real_roots_in_arc_image = real_count;
  rep.complex_pairs = (rep.degree - total_real) / 2;
  return rep;
}

RInt phi_arc_value(double theta, long terms) {
  using namespace iops;
  LaurentSeries phi = eta_quotient(2, terms);
  RInt th = RInt::from_double(theta);
  RInt half = div(RInt::from_long(1), RInt::from_long(2));
  RInt x = add(RInt::from_double(-0.5), mul(cos(th), half));
  RInt y = mul(sin(th), half);
  CInt v = eval_truncated(phi, exp2pii(x, y));
  // |q| = e^{-pi sin theta} at this angle
  double t_up = exp(neg(mul(RInt::pi(), mul(y, 2L)))).hi_d();
  double tail = eta_tail_bound(2, terms, t_up).bound;
  RInt out = v.re;
  RInt pad = RInt::from_double(tail);
  mpfr_sub(out.lo, out.lo, pad.hi, MPFR_RNDD);
  mpfr_add(out.hi, out.hi, pad.hi, MPFR_RNDU);
  return out;
}

std::pair<double, double> arc_root_pullback(const FaberPolynomial& p,
                                            double root) {
  if (p.level != 2)
    throw RootOutOfRange("pullback is defined for the level-2 arc");
  if (!(root >= -64.0 && root <= 0.0))
    throw RootOutOfRange("root outside [-64, 0]");
  if (root == 0.0) return {0.0, 0.0};            // cusp limit
  if (root == -64.0) return {M_PI / 2, M_PI / 2};  // elliptic endpoint

  long terms = 60;
  // phi is strictly decreasing in theta; certified comparison at a point
  auto side = [&](double theta) {
    // +1 if phi(theta) > root, -1 if < root, 0 if undecided
    for (long n = terms; n <= 960; n *= 2) {
      RInt v = phi_arc_value(theta, n);
      if (v.lo_d() > root) return 1;
      if (v.hi_d() < root) return -1;
    }
    return 0;
  };

  double lo = M_PI / 6;
  while (side(lo) < 0) {
    lo /= 2;
    if (lo < 1e-7)
      throw CertificationFailed("root too close to the cusp image");
  }
  double hi = M_PI / 2;
  while (hi - lo > 1e-8) {
    double mid = 0.5 * (lo + hi);
    int s = side(mid);
    if (s > 0)
      lo = mid;
    else if (s < 0)
      hi = mid;
    else
      throw CertificationFailed("phi enclosure cannot separate the root");
  }
  return {lo, hi};
}

}  // namespace mfarc
