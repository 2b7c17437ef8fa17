#include "mfarc/forms.hpp"

#include <cassert>

namespace mfarc {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long mod_pos(long a, long b) { return a - b * floor_div(a, b); }

void check_even(long k) {
  if (mod_pos(k, 2) != 0) throw FormsError("weight must be even");
}

}  // namespace

WeightDecomposition WeightDecomposition::of(int level, long k) {
  check_even(k);
  WeightDecomposition w;
  w.level = level;
  w.k = k;
  long modulus = level == 2 ? 4 : 6;
  w.kprime = mod_pos(k, modulus);
  w.ell = (k - w.kprime) / modulus;
  return w;
}

long min_index(int level, long k, Family family) {
  WeightDecomposition w = WeightDecomposition::of(level, k);
  if (level == 2)
    return family == Family::f ? -w.ell : -w.ell + 1;
  if (family != Family::f)
    throw FormsError("level 3 supports only the f family");
  return -2 * w.ell - w.kprime / 3;
}

namespace {

struct BuildConfig {
  int level;
  Family family;
  long gap_hi_offset;  // gap runs (-n, offset] in exponents
};

// Shared inductive construction: start from the seed at n_min, multiply by
// the Hauptmodul, subtract earlier elements to clear the gap.
BasisElement build_family(long k, long n, long precision,
                          const BuildConfig& cfg) {
  WeightDecomposition w = WeightDecomposition::of(cfg.level, k);
  long n_min = min_index(cfg.level, k, cfg.family);
  if (n < n_min)
    throw IndexBelowRange("n below the family's minimal pole order");
  long steps = n - n_min;
  long gap_hi = cfg.gap_hi_offset;  // independent of n
  precision = std::max({precision, gap_hi + 2, -n + 1});
  long work = precision + steps + 2 * std::abs(w.ell) + 8;

  LaurentSeries phi = eta_quotient(cfg.level, work);
  LaurentSeries seed;
  if (cfg.level == 2) {
    LaurentSeries s4 = eisenstein(EisensteinName::S4_level2, work);
    LaurentSeries base = power(s4, w.ell);
    if (w.kprime == 2)
      base = base * eisenstein(EisensteinName::F2_level2, work);
    seed = cfg.family == Family::g ? base * phi : base;
  } else {
    LaurentSeries w6 = level3_seed6(work);
    seed = power(w6, w.ell) * level3_seed(w.kprime, work);
  }

  std::vector<LaurentSeries> chain;
  std::vector<std::vector<mpq_class>> faber_chain;
  chain.push_back(seed);
  faber_chain.push_back(cfg.family == Family::g
                            ? std::vector<mpq_class>{0, 1}
                            : std::vector<mpq_class>{1});

  for (long m = n_min + 1; m <= n; ++m) {
    LaurentSeries cur = chain.back() * phi;
    std::vector<mpq_class> fab = faber_chain.back();
    fab.insert(fab.begin(), 0);  // multiply F(x) by x
    if (cur.truncation() < gap_hi)
      throw PrecisionTooLow("working precision exhausted during reduction");
    for (long e = -m + 1; e <= gap_hi; ++e) {
      mpq_class c = cur.coeff(e);  // copy: cur is reassigned below
      if (c == 0) continue;
      long idx = -e - n_min;  // index of the element with pole order -e
      if (idx < 0 || idx >= static_cast<long>(chain.size()))
        throw FormsError("reduction refers to an unbuilt element");
      cur = cur - chain[idx].scaled(c);
      const auto& fsub = faber_chain[idx];
      if (fab.size() < fsub.size()) fab.resize(fsub.size(), 0);
      for (size_t i = 0; i < fsub.size(); ++i) fab[i] -= c * fsub[i];
    }
    chain.push_back(std::move(cur));
    faber_chain.push_back(std::move(fab));
  }

  BasisElement elem;
  elem.spec = {cfg.level, k, n, cfg.family};
  elem.weight = w;
  elem.series = chain.back().truncated(
      std::min(chain.back().truncation(), precision));
  elem.faber = faber_chain.back();
  elem.gap_lo = -n + 1;
  elem.gap_hi = gap_hi;

  // contract checks: leading term q^{-n}, gap exactly zero
  if (elem.series.coeff(-n) != 1)
    throw FormsError("constructed element is not monic at q^{-n}");
  for (long e = elem.gap_lo; e <= elem.gap_hi; ++e)
    if (e != -n && elem.series.coeff(e) != 0)
      throw FormsError("gap coefficient is nonzero");
  if (cfg.level == 2 && !elem.series.integral())
    throw FormsError("level-2 coefficients must be integral");
  return elem;
}

}  // namespace

BasisElement build_f2(long k, long n, long precision) {
  WeightDecomposition w = WeightDecomposition::of(2, k);
  return build_family(k, n, precision, {2, Family::f, w.ell});
}

BasisElement build_g2(long k, long n, long precision) {
  WeightDecomposition w = WeightDecomposition::of(2, k);
  return build_family(k, n, precision, {2, Family::g, w.ell - 1});
}

BasisElement build_f3(long k, long n, long precision) {
  WeightDecomposition w = WeightDecomposition::of(3, k);
  return build_family(k, n, precision,
                      {3, Family::f, 2 * w.ell + w.kprime / 3});
}

BasisElement build(const BasisSpec& spec, long precision) {
  if (spec.level == 2)
    return spec.family == Family::f ? build_f2(spec.k, spec.n, precision)
                                    : build_g2(spec.k, spec.n, precision);
  if (spec.level == 3 && spec.family == Family::f)
    return build_f3(spec.k, spec.n, precision);
  throw FormsError("unsupported (level, family) combination");
}

LaurentSeries level3_seed(long kprime, long precision) {
  switch (kprime) {
    case 0:
      return LaurentSeries::one(precision);
    case 2:
      return eisenstein2_level3(precision);
    case 4: {
      LaurentSeries e4 = eisenstein(EisensteinName::E4, precision);
      LaurentSeries e43 =
          eisenstein(EisensteinName::E4, precision / 3 + 1).dilated(3)
              .truncated(precision);
      return (e4 - e43).scaled(mpq_class(1, 240));
    }
    default:
      throw FormsError("level-3 seed weight must be 0, 2, or 4");
  }
}

LaurentSeries level3_seed6(long precision) {
  long work = precision + 2;
  LaurentSeries e23 = eisenstein2_level3(work);
  LaurentSeries e4 = eisenstein(EisensteinName::E4, work);
  LaurentSeries e43 = eisenstein(EisensteinName::E4, work / 3 + 1)
                          .dilated(3).truncated(work);
  // (eta(z) eta(3z))^6 = q * (Pi(1-q^n) Pi(1-q^{3n}))^6
  LaurentSeries cusp6 =
      power(euler_product(1, work) * euler_product(3, work), 6).shifted(1);
  std::vector<LaurentSeries> gens = {power(e23, 3), e23 * e4, e23 * e43,
                                     cusp6};

  // solve sum c_i gens[i] = q^2 + O(q^3): constraints on q^0, q^1, q^2
  const int rows = 3, cols = static_cast<int>(gens.size());
  std::vector<std::vector<mpq_class>> aug(rows,
                                          std::vector<mpq_class>(cols + 1, 0));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) aug[r][c] = gens[c].coeff(r);
  aug[2][cols] = 1;

  std::vector<int> pivot_col(rows, -1);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (aug[i][c] != 0) { pr = i; break; }
    if (pr < 0) continue;
    std::swap(aug[r], aug[pr]);
    mpq_class inv = 1 / aug[r][c];
    for (int j = c; j <= cols; ++j) aug[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || aug[i][c] == 0) continue;
      mpq_class f = aug[i][c];
      for (int j = c; j <= cols; ++j) aug[i][j] -= f * aug[r][j];
    }
    pivot_col[r] = c;
    ++r;
  }
  if (r < rows)
    throw SeedConstructionFailed("weight-6 seed system is singular");

  std::vector<mpq_class> sol(cols, 0);
  for (int i = 0; i < rows; ++i) sol[pivot_col[i]] = aug[i][cols];

  LaurentSeries w6 = LaurentSeries::zero(work);
  for (int c = 0; c < cols; ++c)
    if (sol[c] != 0) w6 = w6 + gens[c].scaled(sol[c]);
  if (w6.valuation() != 2 || w6.coeff(2) != 1)
    throw SeedConstructionFailed("weight-6 seed does not begin q^2");
  return w6.truncated(precision);
}

bool duality_check(long k, long n, long m, long precision) {
  long prec = std::max({precision, n + 2, m + 2});
  BasisElement f = build_f2(k, n, prec);
  BasisElement g = build_g2(2 - k, m, prec);
  return f.series.coeff(m) == -g.series.coeff(n);
}

namespace {

// Laurent series in r whose coefficients are q-series.
struct RSeries {
  long rval = 0;
  std::vector<LaurentSeries> c;

  const LaurentSeries& coeff(long e, const LaurentSeries& zero) const {
    if (e < rval || e >= rval + static_cast<long>(c.size())) return zero;
    return c[e - rval];
  }
};

RSeries from_scalar(const LaurentSeries& s, long r_terms, long qT) {
  RSeries out;
  out.rval = s.valuation();
  for (long j = 0; j < r_terms; ++j) {
    long e = s.valuation() + j;
    if (e > s.truncation()) break;
    out.c.push_back(LaurentSeries::monomial(s.coeff(e), 0, qT));
  }
  return out;
}

RSeries rmul(const RSeries& a, const RSeries& b, long r_terms) {
  RSeries out;
  out.rval = a.rval + b.rval;
  long na = static_cast<long>(a.c.size()), nb = static_cast<long>(b.c.size());
  // r-knowledge of the product is limited by the shorter operand
  long n = std::min(r_terms, std::min(na, nb));
  for (long e = 0; e < n; ++e) {
    LaurentSeries s;
    bool any = false;
    for (long i = std::max(0L, e - nb + 1); i <= std::min(e, na - 1); ++i) {
      LaurentSeries term = a.c[i] * b.c[e - i];
      s = any ? s + term : term;
      any = true;
    }
    out.c.push_back(std::move(s));
  }
  return out;
}

RSeries rinvert(const RSeries& a, long r_terms) {
  if (a.c.empty()) throw FormsError("rinvert of empty series");
  RSeries out;
  out.rval = -a.rval;
  LaurentSeries lead_inv = invert(a.c[0]);
  out.c.push_back(lead_inv);
  long n = std::min(r_terms, static_cast<long>(a.c.size()));
  for (long m = 1; m < n; ++m) {
    LaurentSeries s;
    bool any = false;
    for (long j = 1; j <= m; ++j) {
      LaurentSeries term = a.c[j] * out.c[m - j];
      s = any ? s + term : term;
      any = true;
    }
    out.c.push_back(-(lead_inv * s));
  }
  return out;
}

}  // namespace

GenFunReport generating_function_check(long k, long r_terms, long q_prec) {
  WeightDecomposition w = WeightDecomposition::of(2, k);
  if (r_terms < 1 || q_prec < w.ell + 2)
    throw PrecisionTooLow("generating function check needs more terms");
  long qT = q_prec + 2 * (r_terms + std::abs(w.ell)) + 12;
  long rT = r_terms + static_cast<long>(std::abs(w.ell)) + 3;

  LaurentSeries phi_z = eta_quotient(2, qT);
  LaurentSeries s4_tau = eisenstein(EisensteinName::S4_level2, rT + 4);
  LaurentSeries f2_tau = eisenstein(EisensteinName::F2_level2, rT + 4);
  LaurentSeries phi_tau_scalar = eta_quotient(2, rT + 4);

  LaurentSeries weight_tau_scalar = power(s4_tau, w.ell);
  if (w.kprime == 2) weight_tau_scalar = weight_tau_scalar * f2_tau;

  LaurentSeries weight_z;
  {
    LaurentSeries s4_z = eisenstein(EisensteinName::S4_level2, qT);
    weight_z = power(s4_z, w.ell);
    if (w.kprime == 2)
      weight_z = weight_z * eisenstein(EisensteinName::F2_level2, qT);
  }

  RSeries phi_tau = from_scalar(phi_tau_scalar, rT, qT);
  RSeries numer = from_scalar(phi_tau_scalar * f2_tau, rT, qT);
  RSeries wt_tau = from_scalar(weight_tau_scalar, rT, qT);

  // phi(tau) - phi(z)
  RSeries denom = phi_tau;
  {
    long idx = 0 - denom.rval;
    if (idx < 0 || idx >= static_cast<long>(denom.c.size()))
      throw PrecisionTooLow("r-range too small for phi(tau) - phi(z)");
    denom.c[idx] = denom.c[idx] - phi_z;
  }

  RSeries rhs = rmul(numer, rinvert(denom, rT), rT);
  rhs = rmul(rhs, rinvert(wt_tau, rT), rT);

  GenFunReport rep;
  rep.k = k;
  rep.r_terms = r_terms;
  rep.q_prec = q_prec;
  LaurentSeries zero_q = LaurentSeries::zero(qT);
  for (long j = 0; j < r_terms; ++j) {
    long n = -w.ell + j;
    LaurentSeries lhs_n = build_f2(k, n, q_prec).series;
    LaurentSeries rhs_n = weight_z * rhs.coeff(n, zero_q);
    long t = std::min({lhs_n.truncation(), rhs_n.truncation(),
                       static_cast<long>(q_prec)});
    if (t < w.ell + 1)
      throw PrecisionTooLow("comparison truncation collapsed");
    LaurentSeries diff = lhs_n.truncated(t) - rhs_n.truncated(t);
    for (long e = diff.valuation(); e <= diff.truncation(); ++e) {
      mpq_class a = abs(diff.coeff(e));
      if (a > rep.max_discrepancy) rep.max_discrepancy = a;
    }
  }
  rep.exact_match = rep.max_discrepancy == 0;
  return rep;
}

}  // namespace mfarc
