#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mfarc/forms.hpp"
#include "mfarc/rigor.hpp"
#include "oracles.hpp"

using namespace mfarc;

namespace {

const double kT4 = std::exp(-M_PI / 2);       // arc |q| bound
const double kT5 = std::exp(-2 * M_PI / 5);   // segment |q| bound

// exact partial tail sum_{N < n <= M} |a(n)| t^n in doubles (slight
// downward drift from rounding is fine for domination checks)
double partial_tail(const LaurentSeries& s, long N, long M, double t) {
  double sum = 0;
  for (long n = N + 1; n <= M; ++n)
    sum += std::abs(s.coeff(n).get_d()) * std::pow(t, n);
  return sum;
}

}  // namespace

TEST_CASE("sigma_bound dominates exact divisor sums") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<long> pick(1, 10000);
  SigmaTable& st = sigma_table();
  CHECK(sigma_bound(3, 4) == doctest::Approx(272).epsilon(1e-12));
  CHECK(sigma_bound(1, 1) == doctest::Approx(2).epsilon(1e-12));
  for (int i = 0; i < 200; ++i) {
    long n = pick(rng);
    CHECK(sigma_bound(1, n) >= st.sigma(1, n).get_d());
    CHECK(sigma_bound(3, n) >= st.sigma(3, n).get_d());
  }
  for (long n = 1; n <= 300; ++n) {
    CHECK(sigma_bound(3, n) >= st.sigma(3, n).get_d());
    // the F2 bound: odd-divisor sum <= n/2 + n^2
    CHECK(n / 2.0 + double(n) * n >= st.odd_sigma(1, n).get_d());
  }
}

TEST_CASE("S4 tail certificate") {
  TailCertificate c5 = tail_bound(BoundedSeries::S4, 50, kT5);
  CHECK(c5.bound <= 2.86404e-23 * (1 + 1e-5));
  TailCertificate c4 = tail_bound(BoundedSeries::S4, 50, kT4);
  CHECK(c4.bound <= 2.86404e-23);  // far smaller at the arc |q| bound

  LaurentSeries s4 = eisenstein(EisensteinName::S4_level2, 260);
  for (long M = 55; M <= 250; M += 13) {
    CHECK(c5.bound >= partial_tail(s4, 50, M, kT5));
    CHECK(c4.bound >= partial_tail(s4, 50, M, kT4));
  }
  CHECK_THROWS_AS((void)tail_bound(BoundedSeries::S4, 50, 1.5), InvalidRegime);
  CHECK_THROWS_AS((void)tail_bound(BoundedSeries::S4, 5, kT5), RigorError);
}

TEST_CASE("E4(2z) tail certificate") {
  TailCertificate c4 = tail_bound(BoundedSeries::E4_2z, 50, kT4);
  CHECK(c4.bound <= 6.40309e-29 * (1 + 1e-5));
  TailCertificate c5 = tail_bound(BoundedSeries::E4_2z, 50, kT5);
  CHECK(c5.bound <= 2.16794e-22 * (1 + 1e-5));

  LaurentSeries e = eisenstein(EisensteinName::E4, 140).dilated(2);
  for (long M = 60; M <= 250; M += 10) {
    CHECK(c4.bound >= partial_tail(e, 50, M, kT4));
    CHECK(c5.bound >= partial_tail(e, 50, M, kT5));
  }
}

TEST_CASE("F2 tail certificate") {
  TailCertificate c = tail_bound(BoundedSeries::F2, 50, kT5);
  CHECK(c.bound > 0);
  LaurentSeries f2 = eisenstein(EisensteinName::F2_level2, 260);
  for (long M = 55; M <= 250; M += 13)
    CHECK(c.bound >= partial_tail(f2, 50, M, kT5));
}

TEST_CASE("phi tail via the Eisenstein quotient chain") {
  TailCertificate cz = tail_bound(BoundedSeries::phi_level2, 30,
                                  Domain::arc_level2);
  CHECK(cz.bound < 6.46754e-8);
  TailCertificate ct = tail_bound(BoundedSeries::phi_level2, 30,
                                  Domain::segment_fifth);
  CHECK(ct.bound < 0.00142);

  LaurentSeries phi = eta_quotient(2, 240);
  for (long M = 35; M <= 230; M += 13) {
    CHECK(cz.bound >= partial_tail(phi, 30, M, kT4));
    CHECK(ct.bound >= partial_tail(phi, 30, M, kT5));
  }
}

TEST_CASE("eta-majorant tail dominates and shrinks with N") {
  LaurentSeries phi2 = eta_quotient(2, 240);
  TailCertificate c = eta_tail_bound(2, 50, kT4);
  for (long M = 55; M <= 230; M += 13)
    CHECK(c.bound >= partial_tail(phi2, 50, M, kT4));
  TailCertificate c80 = eta_tail_bound(2, 80, kT4);
  CHECK(c80.bound < c.bound);

  LaurentSeries phi3 = eta_quotient(3, 400);
  double t3 = std::exp(-2 * M_PI / 3 * 0.375);  // level-3 arc floor
  TailCertificate c3 = eta_tail_bound(3, 300, t3);
  CHECK(c3.bound < 1e-4);
  for (long M = 305; M <= 395; M += 10)
    CHECK(c3.bound >= partial_tail(phi3, 300, M, t3));
}

TEST_CASE("level-3 factor tails dominate the exact series") {
  // worst |q| on the admissible part of the level-3 arc
  double t3 = std::exp(-2 * M_PI / 3 * 0.375);
  LaurentSeries e23 = level3_seed(2, 220);
  LaurentSeries s4l3 = level3_seed(4, 220);
  LaurentSeries w = level3_seed6(220);
  TailCertificate ce = tail_bound(BoundedSeries::E2_level3, 40, t3);
  TailCertificate cs = tail_bound(BoundedSeries::seed4_level3, 40, t3);
  TailCertificate cw = tail_bound(BoundedSeries::W_level3, 40, t3);
  for (long M = 45; M <= 215; M += 17) {
    CHECK(ce.bound >= partial_tail(e23, 40, M, t3));
    CHECK(cs.bound >= partial_tail(s4l3, 40, M, t3));
    CHECK(cw.bound >= partial_tail(w, 40, M, t3));
  }
  // the certified tails shrink as more terms are kept exactly
  CHECK(tail_bound(BoundedSeries::W_level3, 80, t3).bound < cw.bound);
}

TEST_CASE("certified extrema reproduce the reference window") {
  CertifiedBound min_z = certify_extremum(BoundedSeries::S4,
                                          Domain::arc_level2,
                                          Extremum::min_abs);
  CHECK(min_z.kind == "lower");
  CHECK(min_z.value >= 0.03);

  CertifiedBound min_t = certify_extremum(BoundedSeries::S4,
                                          Domain::segment_fifth,
                                          Extremum::min_abs);
  CHECK(min_t.value >= 0.014);

  CertifiedBound max_z = certify_extremum(BoundedSeries::S4,
                                          Domain::arc_level2,
                                          Extremum::max_abs);
  CHECK(max_z.kind == "upper");
  CHECK(max_z.value <= 0.99995 * (1 + 1e-5));
  CHECK(max_z.value > min_z.value);

  CertifiedBound max_t = certify_extremum(BoundedSeries::S4,
                                          Domain::segment_fifth,
                                          Extremum::max_abs);
  CHECK(max_t.value <= 2.44141 * (1 + 1e-5));

  CHECK(certify_extremum(BoundedSeries::F2, Domain::segment_fifth,
                         Extremum::max_abs)
            .value <= 12.50005 * (1 + 1e-5));
  CHECK(certify_extremum(BoundedSeries::F2, Domain::arc_level2,
                         Extremum::max_abs)
            .value <= 8.00067 * (1 + 1e-5));
}

TEST_CASE("extremum bounds sandwich spot evaluations") {
  LaurentSeries s4 = eisenstein(EisensteinName::S4_level2, 50);
  double tail_z =
      tail_bound(BoundedSeries::S4, 50, kT4).bound;
  double lo = certify_extremum(BoundedSeries::S4, Domain::arc_level2,
                               Extremum::min_abs)
                  .value;
  double hi = certify_extremum(BoundedSeries::S4, Domain::arc_level2,
                               Extremum::max_abs)
                  .value;
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> th(M_PI / 6, M_PI / 2);
  for (int i = 0; i < 100; ++i) {
    double theta = th(rng);
    RInt ti = RInt::from_double(theta);
    using namespace iops;
    RInt x = add(RInt::from_double(-0.5),
                 div(cos(ti), RInt::from_long(2)));
    RInt yy = div(sin(ti), RInt::from_long(2));
    CInt v = eval_truncated(s4, iops::exp2pii(x, yy));
    double a = std::hypot(v.re.mid_d(), v.im.mid_d());
    CHECK(a + tail_z >= lo);
    CHECK(a - tail_z <= hi);
  }
}

TEST_CASE("D(z,tau) integral bounds") {
  DIntegralReport rep = d_integral_bound();
  CHECK(rep.sup_d.value < 1.75344);
  CHECK(rep.integral_d.value <= 1.20992);
  CHECK(rep.integral_one_plus.value < 1.74520);
  CHECK(rep.pieces > 0);
}

TEST_CASE("theorem thresholds and their inequalities") {
  CHECK(theorem_threshold(0) == 8);
  CHECK(theorem_threshold(1) == 22);
  CHECK(theorem_threshold(-1) == 23);
  CHECK(theorem_threshold(4) == 64);
  CHECK(theorem_threshold(-3) == 53);
  // the decay constant at the extremal angle
  CHECK(std::exp(-M_PI * (std::sin(M_PI / 6) - 0.4)) < 0.73041);
  // the n >= 8 budget: .73041^8 * 12.50005 * 1.74520 < 2
  CHECK(std::pow(0.73041, 8) * 12.50005 * 1.74520 < 2.0);
}
