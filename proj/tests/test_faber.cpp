#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mfarc/faber.hpp"

using namespace mfarc;

namespace {

FaberPolynomial poly2(std::vector<mpq_class> coeffs, long kprime = 0) {
  FaberPolynomial p;
  p.level = 2;
  p.kprime = kprime;
  p.coeffs = std::move(coeffs);
  return p;
}

}  // namespace

TEST_CASE("extract agrees with the coefficients tracked during the build") {
  for (long k : {-8L, -4L, 0L, 2L, 4L, 10L, 16L}) {
    long n0 = min_index(2, k, Family::f);
    for (long n = n0; n <= n0 + 3; ++n) {
      BasisElement e = build_f2(k, n, 12);
      FaberPolynomial p = extract(e);
      REQUIRE(p.coeffs.size() == e.faber.size());
      for (size_t i = 0; i < p.coeffs.size(); ++i)
        CHECK(p.coeffs[i] == e.faber[i]);
      CHECK(p.degree() == n + e.weight.ell);
    }
  }
  // level 3 goes through the weight-6 seed instead of S4
  for (long k : {0L, 4L, 8L}) {
    long n0 = min_index(3, k, Family::f);
    BasisElement e = build_f3(k, n0 + 2, 12);
    FaberPolynomial p = extract(e);
    REQUIRE(p.coeffs.size() == e.faber.size());
    for (size_t i = 0; i < p.coeffs.size(); ++i)
      CHECK(p.coeffs[i] == e.faber[i]);
  }
}

TEST_CASE("degree-1 polynomials match the closed forms") {
  // k = 4*ell: F(x) = x - (8*ell - 24); k = 4*ell + 2: F(x) = x - 8*ell
  for (long ell = -8; ell <= 8; ++ell) {
    BasisElement e0 = build_f2(4 * ell, 1 - ell, 8);
    FaberPolynomial p0 = extract(e0);
    REQUIRE(p0.degree() == 1);
    CHECK(p0.coeffs[1] == 1);
    CHECK(p0.coeffs[0] == -(8 * ell - 24));

    BasisElement e2 = build_f2(4 * ell + 2, 1 - ell, 8);
    FaberPolynomial p2 = extract(e2);
    REQUIRE(p2.degree() == 1);
    CHECK(p2.coeffs[1] == 1);
    CHECK(p2.coeffs[0] == -8 * ell);
  }
}

TEST_CASE("degree-2 polynomials match the closed form for k = 4*ell") {
  for (long ell = -9; ell <= 9; ++ell) {
    BasisElement e = build_f2(4 * ell, 2 - ell, 8);
    FaberPolynomial p = extract(e);
    REQUIRE(p.degree() == 2);
    CHECK(p.coeffs[2] == 1);
    CHECK(p.coeffs[1] == 48 - 8 * ell);
    CHECK(p.coeffs[0] == 32 * ell * ell - 188 * ell + 24);

    RootReport rep = root_report(p);
    bool complex_expected = ell < -6 || ell >= 6;
    CHECK(rep.complex_pairs == (complex_expected ? 1 : 0));
    long total_real = 0;
    for (const auto& ri : rep.real_roots) total_real += ri.multiplicity;
    CHECK(total_real + 2 * rep.complex_pairs == rep.degree);
  }
}

TEST_CASE("root_report classifies roots against [-64, 0]") {
  // f_{16,-3} = S4^4: F(x) = x - 8 with the root outside the arc image
  FaberPolynomial p8 = extract(build_f2(16, -3, 8));
  REQUIRE(p8.degree() == 1);
  RootReport r8 = root_report(p8);
  REQUIRE(r8.real_roots.size() == 1);
  CHECK(r8.real_roots[0].lo <= 8);
  CHECK(r8.real_roots[0].hi >= 8);
  CHECK_FALSE(r8.real_roots[0].in_arc_image);
  CHECK(r8.real_roots_in_arc_image == 0);
  CHECK_FALSE(r8.elliptic_trivial_zero);

  // f_{0,1}: F(x) = x + 24 with the root inside
  RootReport r24 = root_report(extract(build_f2(0, 1, 8)));
  REQUIRE(r24.real_roots.size() == 1);
  CHECK(r24.real_roots[0].in_arc_image);
  CHECK(r24.real_roots_in_arc_image == 1);
  CHECK(r24.real_roots[0].hi - r24.real_roots[0].lo <= mpq_class(1, 100000000));
  CHECK(r24.real_roots[0].lo <= -24);
  CHECK(r24.real_roots[0].hi >= -24);

  // k' = 2 elements always vanish at the elliptic point
  RootReport re = root_report(extract(build_f2(2, 1, 8)));
  CHECK(re.elliptic_trivial_zero);
}

TEST_CASE("root_report handles multiplicity and boundary roots") {
  // (x + 24)^2
  RootReport rd = root_report(poly2({576, 48, 1}));
  REQUIRE(rd.real_roots.size() == 1);
  CHECK(rd.real_roots[0].multiplicity == 2);
  CHECK(rd.real_roots[0].in_arc_image);
  CHECK(rd.real_roots_in_arc_image == 2);
  CHECK(rd.complex_pairs == 0);

  // x * (x + 64) * (x - 5): boundary roots 0 and -64 count as inside
  RootReport rb = root_report(poly2({0, -320, 59, 1}));
  CHECK(rb.degree == 3);
  CHECK(rb.real_roots_in_arc_image == 2);
  CHECK(rb.complex_pairs == 0);

  // x^2 + 1: no real roots at all
  RootReport rc = root_report(poly2({1, 0, 1}));
  CHECK(rc.real_roots.empty());
  CHECK(rc.complex_pairs == 1);
}

TEST_CASE("phi on the arc takes certified real values in [-64, 0]") {
  RInt at_elliptic = phi_arc_value(M_PI / 2);
  CHECK(at_elliptic.lo_d() <= -64.0);
  CHECK(at_elliptic.hi_d() >= -64.0);
  CHECK(at_elliptic.hi_d() - at_elliptic.lo_d() < 1e-6);

  double prev = -65;
  for (double theta = M_PI / 2; theta > M_PI / 6; theta -= M_PI / 24) {
    RInt v = phi_arc_value(theta);
    CHECK(v.lo_d() >= -64.0 - 1e-6);
    CHECK(v.hi_d() <= 1e-6);
    CHECK(v.lo_d() > prev);  // strictly decreasing in theta
    prev = v.hi_d();
  }
}

TEST_CASE("arc_root_pullback inverts phi on the arc") {
  FaberPolynomial p = extract(build_f2(0, 1, 8));

  auto [a, b] = arc_root_pullback(p, -24.0);
  CHECK(b - a <= 1e-8);
  // cross-check: the certified value of phi at the enclosure brackets -24
  RInt lo_val = phi_arc_value(b, 240);   // larger theta, smaller phi
  RInt hi_val = phi_arc_value(a, 240);
  CHECK(lo_val.lo_d() <= -24.0);
  CHECK(hi_val.hi_d() >= -24.0);

  auto end = arc_root_pullback(p, -64.0);
  CHECK(end.first == doctest::Approx(M_PI / 2));
  CHECK(end.second == doctest::Approx(M_PI / 2));
  auto cusp = arc_root_pullback(p, 0.0);
  CHECK(cusp.first == 0.0);
  CHECK(cusp.second == 0.0);

  // theta is monotone in the root: more negative root, larger theta
  auto t40 = arc_root_pullback(p, -40.0);
  auto t10 = arc_root_pullback(p, -10.0);
  CHECK(t40.first > t10.second);

  CHECK_THROWS_AS((void)arc_root_pullback(p, 5.0), RootOutOfRange);
  FaberPolynomial p3;
  p3.level = 3;
  p3.coeffs = {mpq_class(1), mpq_class(1)};
  CHECK_THROWS_AS((void)arc_root_pullback(p3, -1.0), RootOutOfRange);
}

TEST_CASE("extract rejects series that are not polynomial in phi") {
  BasisElement e = build_f2(0, 1, 8);
  e.series = e.series + LaurentSeries::monomial(mpq_class(1, 3), 2,
                                                e.series.truncation());
  CHECK_THROWS_AS((void)extract(e), NonExactDivision);
}
