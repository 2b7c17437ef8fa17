#include "mfarc/qseries.hpp"

#include <algorithm>
#include <sstream>

namespace mfarc {

namespace {
const mpq_class kZero = 0;
}

LaurentSeries LaurentSeries::monomial(const mpq_class& c, long exponent,
                                      long truncation) {
  if (exponent > truncation)
    throw QSeriesError("monomial exponent beyond truncation");
  LaurentSeries s;
  s.valuation_ = exponent;
  s.truncation_ = truncation;
  s.coeffs_.assign(truncation - exponent + 1, 0);
  s.coeffs_[0] = c;
  s.normalize();
  return s;
}

LaurentSeries LaurentSeries::from_coeffs(long valuation,
                                         std::vector<mpq_class> coeffs) {
  LaurentSeries s;
  s.valuation_ = valuation;
  s.truncation_ = valuation + static_cast<long>(coeffs.size()) - 1;
  s.coeffs_ = std::move(coeffs);
  s.normalize();
  return s;
}

void LaurentSeries::normalize() {
  size_t skip = 0;
  while (skip < coeffs_.size() && coeffs_[skip] == 0) ++skip;
  if (skip > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + skip);
    valuation_ += static_cast<long>(skip);
  }
  if (coeffs_.empty()) valuation_ = truncation_ + 1;
}

const mpq_class& LaurentSeries::coeff(long e) const {
  if (e > truncation_)
    throw PrecisionTooLow("coefficient request beyond truncation");
  if (e < valuation_ || coeffs_.empty()) return kZero;
  return coeffs_[e - valuation_];
}

bool LaurentSeries::integral() const {
  for (const auto& c : coeffs_)
    if (c.get_den() != 1) return false;
  return true;
}

LaurentSeries LaurentSeries::truncated(long t) const {
  if (t > truncation_)
    throw PrecisionTooLow("cannot extend truncation");
  LaurentSeries s;
  s.valuation_ = valuation_;
  s.truncation_ = t;
  if (t >= valuation_ && !coeffs_.empty()) {
    size_t n = std::min<size_t>(coeffs_.size(), t - valuation_ + 1);
    s.coeffs_.assign(coeffs_.begin(), coeffs_.begin() + n);
  }
  s.normalize();
  return s;
}

LaurentSeries LaurentSeries::shifted(long sft) const {
  LaurentSeries s = *this;
  s.valuation_ += sft;
  s.truncation_ += sft;
  return s;
}

LaurentSeries LaurentSeries::dilated(long m) const {
  if (m < 1) throw QSeriesError("dilation factor must be >= 1");
  LaurentSeries s;
  s.valuation_ = valuation_ * m;
  // exponents m*e known for e <= truncation_: the gap exponents in between
  // are exactly zero, so knowledge extends to m*truncation_ + m - 1
  s.truncation_ = truncation_ * m + (m - 1);
  if (!coeffs_.empty()) {
    s.coeffs_.assign(coeffs_.size() * m - (m - 1) + (m - 1), 0);
    s.coeffs_.resize((coeffs_.size() - 1) * m + 1 + (m - 1), 0);
    for (size_t i = 0; i < coeffs_.size(); ++i) s.coeffs_[i * m] = coeffs_[i];
  }
  s.normalize();
  return s;
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  long t = std::min(a.truncation_, b.truncation_);
  long v = std::min(a.valuation_, b.valuation_);
  LaurentSeries s;
  s.valuation_ = v;
  s.truncation_ = t;
  if (v <= t) {
    s.coeffs_.assign(t - v + 1, 0);
    for (long e = v; e <= t; ++e) {
      mpq_class c = 0;
      if (e >= a.valuation_ && e <= a.truncation_ && !a.coeffs_.empty() &&
          e - a.valuation_ < static_cast<long>(a.coeffs_.size()))
        c += a.coeffs_[e - a.valuation_];
      if (e >= b.valuation_ && e <= b.truncation_ && !b.coeffs_.empty() &&
          e - b.valuation_ < static_cast<long>(b.coeffs_.size()))
        c += b.coeffs_[e - b.valuation_];
      s.coeffs_[e - v] = c;
    }
  }
  s.normalize();
  return s;
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries s = *this;
  for (auto& c : s.coeffs_) c = -c;
  return s;
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
  return a + (-b);
}

LaurentSeries LaurentSeries::scaled(const mpq_class& c) const {
  if (c == 0) return zero(truncation_);
  LaurentSeries s = *this;
  for (auto& x : s.coeffs_) x *= c;
  return s;
}

LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.is_zero() || b.is_zero()) {
    // zero series carries valuation truncation+1, so the usual rule applies
    long t = std::min(a.truncation() + b.valuation(),
                      b.truncation() + a.valuation());
    return LaurentSeries::zero(t);
  }
  long v = a.valuation() + b.valuation();
  long t = std::min(a.truncation() + b.valuation(),
                    b.truncation() + a.valuation());
  if (t < v) throw PrecisionTooLow("product truncation below valuation");
  std::vector<mpq_class> c(t - v + 1, 0);
  long na = a.truncation() - a.valuation();
  long nb = b.truncation() - b.valuation();
  for (long i = 0; i <= na; ++i) {
    const mpq_class& ai = a.coeff(a.valuation() + i);
    if (ai == 0) continue;
    long jmax = std::min(nb, t - v - i);
    for (long j = 0; j <= jmax; ++j) {
      const mpq_class& bj = b.coeff(b.valuation() + j);
      if (bj == 0) continue;
      c[i + j] += ai * bj;
    }
  }
  return LaurentSeries::from_coeffs(v, std::move(c));
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  return mul(a, b);
}

LaurentSeries invert(const LaurentSeries& a) {
  if (a.is_zero()) throw ZeroLeadingCoefficient();
  long v = a.valuation();
  long D = a.truncation() - v;  // relative terms known
  const mpq_class& lead = a.coeff(v);
  if (lead == 0) throw ZeroLeadingCoefficient();
  std::vector<mpq_class> b(D + 1, 0);
  b[0] = mpq_class(1) / lead;
  for (long m = 1; m <= D; ++m) {
    mpq_class s = 0;
    for (long j = 1; j <= m; ++j) s += a.coeff(v + j) * b[m - j];
    b[m] = -s / lead;
  }
  return LaurentSeries::from_coeffs(-v, std::move(b));
}

LaurentSeries power(const LaurentSeries& a, long n) {
  if (n == 0) {
    long t = a.truncation() - a.valuation() + 0;  // relative knowledge
    return LaurentSeries::one(t);
  }
  const LaurentSeries base = n > 0 ? a : invert(a);
  unsigned long e = n > 0 ? static_cast<unsigned long>(n)
                          : static_cast<unsigned long>(-n);
  LaurentSeries acc = base;
  e -= 1;
  LaurentSeries sq = base;
  while (e) {
    if (e & 1) acc = mul(acc, sq);
    if (e >>= 1) sq = mul(sq, sq);
  }
  return acc;
}

std::string LaurentSeries::str(long max_terms) const {
  std::ostringstream os;
  long shown = 0;
  bool first = true;
  for (long e = valuation_; e <= truncation_ && shown < max_terms; ++e) {
    const mpq_class& c = coeff(e);
    if (c == 0) continue;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    mpq_class a = abs(c);
    if (a != 1 || e == 0) os << a.get_str();
    if (e != 0) {
      if (a != 1) os << "*";
      os << "q";
      if (e != 1) os << "^" << e;
    }
    first = false;
    ++shown;
  }
  if (first) os << "0";
  if (shown == max_terms) os << " + ...";
  os << " + O(q^" << truncation_ + 1 << ")";
  return os.str();
}

const mpz_class& SigmaTable::sigma(int k, long n) {
  auto key = std::make_pair(k, n);
  auto it = values_.find(key);
  if (it != values_.end()) return it->second;
  mpz_class s = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    mpz_class dk, ek;
    mpz_ui_pow_ui(dk.get_mpz_t(), d, k);
    s += dk;
    long e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(ek.get_mpz_t(), e, k);
      s += ek;
    }
  }
  return values_.emplace(key, std::move(s)).first->second;
}

const mpz_class& SigmaTable::odd_sigma(int k, long n) {
  auto key = std::make_pair(k, n);
  auto it = odd_values_.find(key);
  if (it != odd_values_.end()) return it->second;
  mpz_class s = 0;
  for (long d = 1; d <= n; d += 2) {
    if (n % d) continue;
    mpz_class dk;
    mpz_ui_pow_ui(dk.get_mpz_t(), d, k);
    s += dk;
  }
  return odd_values_.emplace(key, std::move(s)).first->second;
}

mpz_class SigmaTable::sigma_minus_half(int k, long n) {
  mpz_class s = sigma(k, n);
  if (n % 2 == 0) s -= sigma(k, n / 2);
  return s;
}

SigmaTable& sigma_table() {
  static SigmaTable table;
  return table;
}

LaurentSeries euler_product(long m, long precision) {
  LaurentSeries p = LaurentSeries::one(precision);
  for (long n = 1; n * m <= precision; ++n) {
    LaurentSeries factor =
        LaurentSeries::one(precision) -
        LaurentSeries::monomial(1, n * m, precision);
    p = mul(p, factor);
  }
  return p;
}

LaurentSeries eta_quotient(int level, long precision) {
  if (precision < 1) throw QSeriesError("precision must be >= 1");
  if (level != 2 && level != 3) throw UnsupportedLevel(level);
  long exponent = level == 2 ? 24 : 12;
  long work = precision + 1;
  LaurentSeries num = euler_product(1, work);
  LaurentSeries den = euler_product(level, work);
  LaurentSeries ratio = mul(num, invert(den));
  LaurentSeries phi = power(ratio, exponent).shifted(-1);
  return phi.truncated(precision);
}

LaurentSeries eisenstein(EisensteinName name, long precision) {
  if (precision < 1) throw QSeriesError("precision must be >= 1");
  SigmaTable& st = sigma_table();
  std::vector<mpq_class> c;
  switch (name) {
    case EisensteinName::E2: {
      c.assign(precision + 1, 0);
      c[0] = 1;
      for (long n = 1; n <= precision; ++n)
        c[n] = mpq_class(-24) * mpq_class(st.sigma(1, n));
      return LaurentSeries::from_coeffs(0, std::move(c));
    }
    case EisensteinName::E4: {
      c.assign(precision + 1, 0);
      c[0] = 1;
      for (long n = 1; n <= precision; ++n)
        c[n] = mpq_class(240) * mpq_class(st.sigma(3, n));
      return LaurentSeries::from_coeffs(0, std::move(c));
    }
    case EisensteinName::F2_level2: {
      c.assign(precision + 1, 0);
      c[0] = 1;
      for (long n = 1; n <= precision; ++n)
        c[n] = mpq_class(24) * mpq_class(st.odd_sigma(1, n));
      return LaurentSeries::from_coeffs(0, std::move(c));
    }
    case EisensteinName::S4_level2: {
      c.assign(precision, 0);
      for (long n = 1; n <= precision; ++n)
        c[n - 1] = mpq_class(st.sigma_minus_half(3, n));
      return LaurentSeries::from_coeffs(1, std::move(c));
    }
  }
  throw QSeriesError("unknown Eisenstein series");
}

LaurentSeries eisenstein2_level3(long precision) {
  SigmaTable& st = sigma_table();
  std::vector<mpq_class> c(precision + 1, 0);
  c[0] = 1;
  for (long n = 1; n <= precision; ++n) {
    mpz_class s = st.sigma(1, n);
    if (n % 3 == 0) s -= 3 * st.sigma(1, n / 3);
    c[n] = mpq_class(12) * mpq_class(s);
  }
  return LaurentSeries::from_coeffs(0, std::move(c));
}

LaurentSeries delta_level1(long precision) {
  LaurentSeries p = euler_product(1, precision);
  return power(p, 24).shifted(1).truncated(precision);
}

}  // namespace mfarc
