#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mfarc/qseries.hpp"
#include "oracles.hpp"

using namespace mfarc;

namespace {

LaurentSeries random_series(std::mt19937& rng) {
  std::uniform_int_distribution<long> val(-3, 3), len(1, 8), coef(-9, 9);
  long v = val(rng);
  std::vector<mpq_class> c;
  long n = len(rng);
  for (long i = 0; i < n; ++i) c.emplace_back(coef(rng));
  if (c[0] == 0) c[0] = 1;
  return LaurentSeries::from_coeffs(v, std::move(c));
}

}  // namespace

TEST_CASE("mul identity and basic products") {
  // (q^-1 - 24 + 276q) * 1
  LaurentSeries a = LaurentSeries::from_coeffs(-1, {1, -24, 276});
  LaurentSeries one = LaurentSeries::one(5);
  LaurentSeries p = a * one;
  CHECK(p.valuation() == -1);
  CHECK(p.coeff(-1) == 1);
  CHECK(p.coeff(0) == -24);
  CHECK(p.coeff(1) == 276);

  // phi*phi begins q^-2 - 48 q^-1 + 1128, frozen from the eta oracle:
  // conv: [1,-24,276,...]^2 -> q^-2: 1, q^-1: -48, q^0: 576+552=1128
  LaurentSeries phi = eta_quotient(2, 10);
  LaurentSeries phi2 = phi * phi;
  CHECK(phi2.valuation() == -2);
  CHECK(phi2.coeff(-2) == 1);
  CHECK(phi2.coeff(-1) == -48);
  CHECK(phi2.coeff(0) == 1128);

  // S4*S4 begins q^2 + 16q^3 + 120q^4 (from S4 = q+8q^2+28q^3+64q^4):
  // q^4 coefficient 2*28 + 64 = 120
  LaurentSeries s4 = eisenstein(EisensteinName::S4_level2, 10);
  LaurentSeries s42 = s4 * s4;
  CHECK(s42.coeff(2) == 1);
  CHECK(s42.coeff(3) == 16);
  CHECK(s42.coeff(4) == 120);
}

TEST_CASE("mul truncation bookkeeping") {
  LaurentSeries a = LaurentSeries::from_coeffs(-1, {1, 2, 3});  // trunc 1
  LaurentSeries b = LaurentSeries::from_coeffs(0, {1, 1, 1, 1, 1});  // trunc 4
  LaurentSeries p = a * b;
  CHECK(p.valuation() == -1);
  CHECK(p.truncation() == 1);  // min(1+0, 4-1)
  CHECK_THROWS_AS((void)p.coeff(2), PrecisionTooLow);
}

TEST_CASE("mul commutative and associative (randomized)") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    LaurentSeries a = random_series(rng), b = random_series(rng),
                  c = random_series(rng);
    CHECK(a * b == b * a);
    LaurentSeries l = (a * b) * c, r = a * (b * c);
    long t = std::min(l.truncation(), r.truncation());
    CHECK(l.truncated(t) == r.truncated(t));
  }
}

TEST_CASE("invert geometric, S4, involution") {
  LaurentSeries g =
      LaurentSeries::from_coeffs(0, {1, -1, 0, 0, 0, 0, 0});
  LaurentSeries gi = invert(g);
  for (long e = 0; e <= 6; ++e) CHECK(gi.coeff(e) == 1);

  LaurentSeries s4 = eisenstein(EisensteinName::S4_level2, 12);
  LaurentSeries s4i = invert(s4);
  // frozen by long division: 1/(q+8q^2+28q^3+...) = q^-1 - 8 + 36q - ...
  CHECK(s4i.valuation() == -1);
  CHECK(s4i.coeff(-1) == 1);
  CHECK(s4i.coeff(0) == -8);
  CHECK(s4i.coeff(1) == 36);
  LaurentSeries check = s4 * s4i;
  CHECK(check.coeff(0) == 1);
  for (long e = 1; e <= check.truncation(); ++e) CHECK(check.coeff(e) == 0);

  LaurentSeries phi = eta_quotient(2, 12);
  LaurentSeries back = invert(invert(phi));
  long t = back.truncation();
  CHECK(back == phi.truncated(t));

  CHECK_THROWS_AS((void)invert(LaurentSeries::zero(5)),
                  ZeroLeadingCoefficient);
}

TEST_CASE("eta quotients match brute-force oracle") {
  const long prec = 50;
  LaurentSeries phi2 = eta_quotient(2, prec);
  auto oracle2 = oracles::eta_quotient_shifted(2, prec + 1);
  CHECK(phi2.valuation() == -1);
  for (long e = -1; e <= prec; ++e) CHECK(phi2.coeff(e) == oracle2[e + 1]);
  CHECK(phi2.coeff(-1) == 1);
  CHECK(phi2.coeff(0) == -24);
  CHECK(phi2.coeff(1) == 276);
  CHECK(phi2.coeff(2) == -2048);
  CHECK(phi2.integral());

  LaurentSeries phi3 = eta_quotient(3, prec);
  auto oracle3 = oracles::eta_quotient_shifted(3, prec + 1);
  for (long e = -1; e <= prec; ++e) CHECK(phi3.coeff(e) == oracle3[e + 1]);
  CHECK(phi3.coeff(-1) == 1);
  CHECK(phi3.coeff(0) == -12);
  CHECK(phi3.coeff(1) == 54);
  CHECK(phi3.integral());

  CHECK_THROWS_AS((void)eta_quotient(5, 10), UnsupportedLevel);
}

TEST_CASE("Eisenstein series coefficients") {
  LaurentSeries s4 = eisenstein(EisensteinName::S4_level2, 20);
  CHECK(s4.coeff(1) == 1);
  CHECK(s4.coeff(2) == 8);
  CHECK(s4.coeff(3) == 28);
  CHECK(s4.coeff(4) == 64);

  LaurentSeries f2 = eisenstein(EisensteinName::F2_level2, 20);
  CHECK(f2.coeff(0) == 1);
  for (long n = 1; n <= 20; ++n)
    CHECK(f2.coeff(n) == 24 * oracles::odd_sigma(n));
  CHECK(f2.coeff(1) == 24);
  CHECK(f2.coeff(2) == 24);
  CHECK(f2.coeff(3) == 96);
  CHECK(f2.coeff(4) == 24);

  LaurentSeries e4_2z = eisenstein(EisensteinName::E4, 10).dilated(2);
  CHECK(e4_2z.coeff(0) == 1);
  CHECK(e4_2z.coeff(1) == 0);
  CHECK(e4_2z.coeff(2) == 240);
  CHECK(e4_2z.coeff(3) == 0);
  CHECK(e4_2z.coeff(4) == 240 * 9);

  // S4 = (E4(z) - E4(2z))/240 route agrees with the divisor-sum route
  LaurentSeries e4 = eisenstein(EisensteinName::E4, 20);
  LaurentSeries s4_alt =
      (e4 - eisenstein(EisensteinName::E4, 10).dilated(2))
          .scaled(mpq_class(1, 240));
  long t = std::min(s4.truncation(), s4_alt.truncation());
  CHECK(s4.truncated(t) == s4_alt.truncated(t));
}

TEST_CASE("sigma table") {
  SigmaTable& st = sigma_table();
  for (long n = 1; n <= 60; ++n) {
    CHECK(st.sigma(1, n) == oracles::sigma(1, n));
    CHECK(st.sigma(3, n) == oracles::sigma(3, n));
    CHECK(st.odd_sigma(1, n) == oracles::odd_sigma(n));
  }
  CHECK(st.sigma_minus_half(3, 2) == 8);
  CHECK(st.sigma_minus_half(3, 3) == 28);
}

TEST_CASE("j-function identities") {
  const long prec = 32;
  LaurentSeries phi = eta_quotient(2, prec + 4);
  auto j = oracles::j_function(prec);
  LaurentSeries jq = LaurentSeries::from_coeffs(
      -1, std::vector<mpq_class>(j.begin(), j.end()));
  CHECK(jq.coeff(-1) == 1);
  CHECK(jq.coeff(0) == 744);
  CHECK(jq.coeff(1) == 196884);

  // (phi+256)^3 / phi^2 = j(z)
  LaurentSeries c256 = LaurentSeries::monomial(256, 0, phi.truncation());
  LaurentSeries lhs1 = power(phi + c256, 3) * power(invert(phi), 2);
  long t1 = std::min(lhs1.truncation(), jq.truncation());
  CHECK(lhs1.truncated(t1) == jq.truncated(t1));
  CHECK(t1 >= 30 - 1);

  // (phi+16)^3 / phi = j(2z)
  LaurentSeries j2z = jq.dilated(2);
  LaurentSeries c16 = LaurentSeries::monomial(16, 0, phi.truncation());
  LaurentSeries lhs2 = power(phi + c16, 3) * invert(phi);
  long t2 = std::min(lhs2.truncation(), j2z.truncation());
  CHECK(lhs2.truncated(t2) == j2z.truncated(t2));
}

TEST_CASE("phi * S4 = E4(2z) - 16 S4") {
  const long prec = 40;
  LaurentSeries phi = eta_quotient(2, prec);
  LaurentSeries s4 = eisenstein(EisensteinName::S4_level2, prec);
  LaurentSeries e4_2z = eisenstein(EisensteinName::E4, prec / 2).dilated(2);
  LaurentSeries lhs = phi * s4;
  LaurentSeries rhs = e4_2z - s4.scaled(16);
  long t = std::min(lhs.truncation(), rhs.truncation());
  CHECK(lhs.truncated(t) == rhs.truncated(t));
}

TEST_CASE("power and dilate") {
  LaurentSeries s4 = eisenstein(EisensteinName::S4_level2, 15);
  CHECK(power(s4, 3) == s4 * s4 * s4);
  LaurentSeries inv2 = power(s4, -2);
  LaurentSeries prod = inv2 * s4 * s4;
  CHECK(prod.coeff(0) == 1);
  for (long e = 1; e <= prod.truncation(); ++e) CHECK(prod.coeff(e) == 0);
}
