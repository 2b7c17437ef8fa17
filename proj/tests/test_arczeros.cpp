#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mfarc/arczeros.hpp"
#include "mfarc/faber.hpp"

using namespace mfarc;

TEST_CASE("ArcPoint lies on the boundary circle") {
  for (int level : {2, 3}) {
    for (double theta : {0.4, 1.0, M_PI / 2}) {
      ArcPoint p = ArcPoint::at(level, theta);
      using namespace iops;
      RInt inv_n = div(RInt::from_long(1), RInt::from_long(level));
      CInt c = add(p.z, CInt::from_real(inv_n));
      RInt r = c.abs_upper();
      CHECK(r.hi_d() == doctest::Approx(1.0 / level).epsilon(1e-12));
      CHECK(p.z.im.lo_d() > 0);
    }
  }
  CHECK_THROWS_AS((void)ArcPoint::at(5, 1.0), UnsupportedLevel);
}

TEST_CASE("evaluate_series with an explicit tail certificate") {
  ArcPoint p = ArcPoint::at(2, M_PI / 2);  // z = -1/2 + i/2

  // constant series: exact value 1
  TailCertificate none{"const", 40, 0.9, 0.0};
  CInt one = evaluate_series(LaurentSeries::one(60), p.z, none);
  CHECK(one.re.lo_d() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(one.im.contains_zero());

  // |S4(-1/2 + i/2)| inside the certified window
  double t4 = std::exp(-M_PI / 2);
  LaurentSeries s4 = eisenstein(EisensteinName::S4_level2, 60);
  CInt v = evaluate_series(s4, p.z, tail_bound(BoundedSeries::S4, 50, t4));
  CHECK(v.abs_lower().lo_d() >= 0.03);
  CHECK(v.abs_upper().hi_d() <= 0.99995);

  // phi at the elliptic point: -64 within the certified radius
  LaurentSeries phi = eta_quotient(2, 120);
  CInt w = evaluate_series(phi, p.z, eta_tail_bound(2, 120, t4));
  CHECK(w.re.lo_d() <= -64.0);
  CHECK(w.re.hi_d() >= -64.0);
  CHECK(w.im.contains_zero());

  // coverage failures
  TailCertificate narrow{"S4", 50, t4 / 10, 1e-30};
  CHECK_THROWS_AS((void)evaluate_series(s4, p.z, narrow),
                  TailBoundUnavailable);
  TailCertificate deep{"S4", 90, t4, 1e-30};
  CHECK_THROWS_AS((void)evaluate_series(s4, p.z, deep), TailBoundUnavailable);
  ArcPoint low = ArcPoint::at(2, 1.0);
  CInt bad(low.z.re, iops::neg(low.z.im));
  CHECK_THROWS_AS((void)evaluate_series(s4, bad, none), ArcZerosError);
}

TEST_CASE("predictor formula") {
  CHECK(predictor(2, 0, 0, 0.7) == doctest::Approx(2.0));
  CHECK(predictor(2, 0, 1, M_PI / 2) == doctest::Approx(-2.0));
  // the level-N form reduces to the level-2 form at N = 2
  for (double theta : {0.6, 1.1, 1.5}) {
    double a = M_PI * 7;
    double general = 2 * std::cos(4 * theta / 2 + a - a * std::cos(theta));
    CHECK(predictor(2, 4, 7, theta) == doctest::Approx(general));
  }
  // k=0, n=8: the phase crosses at least 6 multiples of pi on [pi/6, pi/2]
  int flips = 0;
  double prev = predictor(2, 0, 8, M_PI / 6);
  for (int i = 1; i <= 2000; ++i) {
    double theta = M_PI / 6 + (M_PI / 2 - M_PI / 6) * i / 2000.0;
    double cur = predictor(2, 0, 8, theta);
    if (prev * cur < 0) ++flips;
    prev = cur;
  }
  CHECK(flips >= 6);
}

TEST_CASE("guaranteed floor formula") {
  CHECK(guaranteed_floor(0, 8) == 6);
  CHECK(guaranteed_floor(0, 0) == 0);
  CHECK(guaranteed_floor(12, 0) == 2);
  CHECK(guaranteed_floor(-8, 0) == -2);
  CHECK(guaranteed_floor(16, -3) == 0);
  CHECK(guaranteed_floor(4, 22) == 19);
}

TEST_CASE("normalized restriction is real with tiny certified radius") {
  BasisElement e = build_f2(4, 3, 12);
  for (double theta : {M_PI / 6, 0.8, 1.2, M_PI / 2}) {
    RInt v = normalized_restriction(e, theta);
    CHECK(v.is_valid());
    CHECK(v.width_d() < 1e-30);
  }
  // trivial zero of F2 at the elliptic point: the enclosure of the exact
  // angle pi/2 straddles zero no matter the precision
  BasisElement e2 = build_f2(2, 1, 12);
  RInt half_pi = iops::div(RInt::pi(), RInt::from_long(2));
  RInt z = normalized_restriction(e2, half_pi);
  CHECK(z.contains_zero());
  CHECK(std::abs(z.mid_d()) < 1e-30);
  CHECK_THROWS_AS((void)restriction_sign(e2, half_pi), InconclusiveSample);

  // f_{0,0} = 1: restriction is exactly 1 everywhere
  BasisElement c = build_f2(0, 0, 12);
  CHECK(normalized_restriction(c, 1.0).mid_d() == doctest::Approx(1.0));
}

TEST_CASE("count_arc_zeros on the reference examples") {
  BasisElement e = build_f2(0, 8, 12);
  ArcProfile p = count_arc_zeros(e, -1, -1, 256);
  CHECK(p.guaranteed_floor == 6);
  CHECK(p.valence_count == 8);
  CHECK(p.sign_changes >= 6);
  CHECK(p.sign_changes <= p.valence_count);
  for (const ArcSample& s : p.samples) {
    CHECK(s.counted);
    CHECK(s.radius < 1e-30);
    // predictor proximity for n >= 14*ell + 8 with ell = 0
    CHECK(std::abs(s.value - s.predictor) < 2.0);
  }

  ArcProfile pc = count_arc_zeros(build_f2(0, 0, 12), -1, -1, 64);
  CHECK(pc.sign_changes == 0);

  // single zero of f_{16,-3} sits off the arc (Faber root x = 8)
  ArcProfile ps = count_arc_zeros(build_f2(16, -3, 12), -1, -1, 64);
  CHECK(ps.sign_changes == 0);
  CHECK(ps.valence_count == 1);
}

TEST_CASE("grid precondition and reporting window") {
  BasisElement e = build_f2(0, 8, 12);
  CHECK_THROWS_AS((void)count_arc_zeros(e, -1, -1, 20), ArcZerosError);

  // theta below pi/6 is sampled and reported but never counted
  ArcProfile p = count_arc_zeros(e, 0.30, M_PI / 2, 128);
  CHECK(p.counted_theta_min == doctest::Approx(M_PI / 6));
  bool any_uncounted = false;
  for (const ArcSample& s : p.samples) {
    if (s.theta < M_PI / 6 - 1e-12) {
      CHECK_FALSE(s.counted);
      any_uncounted = true;
    }
  }
  CHECK(any_uncounted);
  CHECK(p.sign_changes >= p.guaranteed_floor);
}

TEST_CASE("level-3 counts are reported with asymptotic metadata") {
  BasisElement e = build_f3(0, 3, 12);
  ArcProfile p = count_arc_zeros(e, -1, -1, 64);
  CHECK(p.valence_count == 3);
  CHECK(p.asymptotic_reference == doctest::Approx(0.9618 * 3));
  CHECK(p.guaranteed_floor == 0);  // no asserted floor at level 3
  CHECK(p.sign_changes == 3);
  // admissible window from the contour height: sin(theta) >= 3/8
  CHECK(p.counted_theta_min == doctest::Approx(std::asin(0.375)));
  CHECK(p.counted_theta_max == doctest::Approx(M_PI - std::asin(0.375)));
  for (const ArcSample& s : p.samples) CHECK(s.radius < 1e-20);
}

TEST_CASE("arc restriction changes sign across a pulled-back Faber root") {
  BasisElement e = build_f2(0, 1, 12);
  FaberPolynomial fp = extract(e);
  auto [a, b] = arc_root_pullback(fp, -24.0);
  int before = restriction_sign(e, a - 0.01);
  int after = restriction_sign(e, b + 0.01);
  CHECK(before * after == -1);
}
