#include "doctest.h"

#include <cmath>

#include "curvature.hpp"
#include "fd_oracle.hpp"
#include "fitting.hpp"
#include "fixtures.hpp"
#include "gauge.hpp"

using namespace ahm;

TEST_CASE("F profile") {
  FProfile f(3);
  CHECK(f.value(1.0) == 0.0);
  // F(r) - ln r tends to F0
  CHECK(f.value(1e3) - std::log(1e3) == doctest::Approx(f.F0()).epsilon(1e-6));
  // coefficient of r^{-n}: fit F - F0 - ln r ~ c r^{-3}
  std::vector<double> rs, ys;
  for (int i = 0; i < 12; ++i) {
    const double r = 10.0 * std::pow(10.0, i / 11.0);
    rs.push_back(r);
    ys.push_back(f.value(r) - f.F0() - std::log(r));
  }
  auto fit = fit_powers(rs, ys, {-3.0, -4.0}, true);
  CHECK(fit.coef[0] == doctest::Approx(-1.0 / 6.0).epsilon(1e-4));
  // solver inverts the profile
  for (double y : {1.0 + 1e-8, 1.2, 3.7, 220.0})
    CHECK(1.0 + f.solve_ym1(f.value(y)) == doctest::Approx(y).epsilon(1e-11));
}

TEST_CASE("identity gauge for a = 0 and trivial u") {
  for (double r0 : {1.0, 2.0}) {
    MetricSpec hm = make_hm(3, r0, {1.0});
    GaugeMap gm(hm);
    CHECK(std::fabs(gm.r_tilde_0() - r0) <= 1e-10);
    const double rp = hm.r_plus();
    for (double rfac : {1.000001, 1.01, 1.9, 12.0, 230.0, 999.0})
      CHECK(std::fabs(gm.r_tilde(rp * rfac) - rp * rfac) <= 1e-10);
  }
  // the identity is independent of the angular content
  SpecBuilder b({3, 0.0, 1.5, {1.0}});
  AngularSeries v = b.angular();
  v.add(1, 0.05, 0.02);
  b.set_v(3, v);
  GaugeMap gm(b.build());
  CHECK(std::fabs(gm.r_tilde_0() - 1.5) <= 1e-10);
  CHECK(std::fabs(gm.r_tilde(7.7) - 7.7) <= 1e-10);
}

TEST_CASE("leading correction of the gauge change") {
  MetricSpec g = make_hm_type(3, 1.0, 1.0, {1.0});
  GaugeMap gm(g);
  const auto e = gm.fit_expansion();
  CHECK(e.lead == doctest::Approx(0.25).epsilon(1e-3 / 0.25));
}

TEST_CASE("transformed coefficients, closed forms") {
  // identity case: a = 0, u_{n-1} = 0 leaves v_{n-1} untouched
  SpecBuilder b0({3, 0.0, 1.0, {1.0}});
  AngularSeries v0 = b0.angular();
  v0.add(1, 0.07, 0.0);
  b0.set_v(2, v0);
  MetricSpec s0 = b0.build();
  GaugeMap gm0(s0);
  const double beta = s0.xi_period();
  CHECK(gm0.v_tilde_nm1().eval(0.3) ==
        doctest::Approx(0.07 * std::cos(2.0 * M_PI * 0.3 / beta)).epsilon(1e-12));

  // n=3, a=1, u_{n-1}=0.5: v shift (1+1)/4 = 0.5, w shift (1-1)/4 = 0
  SpecBuilder b({3, 1.0, 1.0, {1.0}});
  b.set_u(2, 0.5);
  MetricSpec spec = b.build();
  GaugeMap gm(spec);
  CHECK(gm.v_tilde_nm1().eval(0.2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(gm.w_tilde_nm1().value({0.2, 0.1}).max_abs() <= 1e-15);

  // numerical extraction off the rewritten metric agrees
  CHECK(gm.fit_transformed_coeffs() <= 1e-3);
}

TEST_CASE("transformed trace condition") {
  CHECK(l1_condition_tilde(GaugeMap(make_hm_type(3, 1.0, 1.0, {1.0})),
                           make_hm_type(3, 1.0, 1.0, {1.0}))
            .pass);
  SpecBuilder b({3, 0.0, 1.0, {1.0}});
  b.set_u(2, 0.1);
  AngularSeries v = b.angular();
  v.add(0, -0.1, 0.0);
  b.set_v(2, v);
  MetricSpec s = b.build();
  CHECK(l1_condition_tilde(GaugeMap(s), s).pass);

  MetricSpec bad = u_only_spec(3, 0.0, 1.0, {1.0}, 0.1);
  CHECK(!l1_condition_tilde(GaugeMap(bad), bad).pass);
}

TEST_CASE("horizon value of the transformed angular factor") {
  MetricSpec hm = make_hm(3, 1.0, {1.0});
  GaugeMap gm(hm);
  CHECK(horizon_value_check(gm, hm).residual <= 1e-8);

  MetricSpec g = make_hm_type(3, 1.0, 1.0, {1.0});
  GaugeMap gmr(g);
  const HorizonCheck hc = horizon_value_check(gmr, g);
  CHECK(hc.residual <= 1e-6);

  // a deliberately mismatched reference is flagged with the expected gap
  const double rb = g.background().r_breve0();
  const HorizonCheck bad = horizon_value_check(gmr, g, 2.0 * rb);
  CHECK(bad.residual == doctest::Approx(rb / gmr.r_tilde_0()).epsilon(1e-5));

  // the check refuses metrics that are not smooth at the center
  SpecBuilder b({3, 0.0, 1.0, {1.0}});
  AngularSeries v = b.angular();
  v.add(1, 0.05, 0.0);
  b.set_v(2, v);
  MetricSpec irregular = b.build();
  GaugeMap gmi(irregular);
  CHECK_THROWS_AS(horizon_value_check(gmi, irregular), RegularityError);
}

TEST_CASE("gauge table is strictly monotone") {
  MetricSpec g = make_hm_type(4, -0.5, 1.0, {1.0, 0.8});
  GaugeMap gm(g);
  const auto table = gm.table(128);
  for (size_t i = 1; i < table.size(); ++i) {
    CHECK(table[i][0] > table[i - 1][0]);
    CHECK(table[i][1] > table[i - 1][1]);
    CHECK(table[i][2] > 0.0);
  }
}

TEST_CASE("defining relation of the gauge map at midpoints") {
  MetricSpec g = make_hm_type(3, 0.7, 1.0, {1.0});
  GaugeMap gm(g);
  for (double r : {1.2, 2.3, 8.0, 120.0}) {
    const double h = 1e-5 * r;
    const double fd = (gm.r_tilde(r + h) - gm.r_tilde(r - h)) / (2.0 * h);
    CHECK(gm.dr_tilde(r) == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("scalar curvature is invariant under the gauge change") {
  MetricSpec spec = random_l1_spec(3, 0.2, 1.0, {1.0}, 8, 1e-2);
  GaugeMap gm(spec);
  // metric components in the tilde chart
  MetricFn tilde_fn = [&](const std::vector<double>& q) {
    const double rt = q[0];
    const double r = gm.r_of_r_tilde(rt);
    Mat g(3);
    const double dm = gm.r_tilde_minus_rt0(r);
    const double At = std::pow(rt, -1.0) * dm *
                      (rt * rt + rt * gm.r_tilde_0() + sqr(gm.r_tilde_0()));
    g(0, 0) = 1.0 / At;
    const double ev = spec.exp_v_hat(r, q[1]);
    g(1, 1) = spec.background().A(r) * ev * ev;
    g(2, 2) = spec.gamma(Point{r, q[1], {q[2]}})(0, 0);
    return g;
  };
  for (double r : {2.0, 5.0}) {
    const double rt = gm.r_tilde(r);
    FdOptions opt;
    opt.steps = {1e-4 * rt, 1e-4, 1e-4};
    opt.order = 2;
    const double R_tilde = scalar_curvature_fd(tilde_fn, {rt, 0.4, 0.3}, opt);
    const double R_orig = scalar_curvature_warped(spec, Point{r, 0.4, {0.3}});
    CHECK(R_tilde == doctest::Approx(R_orig).epsilon(1e-6));
  }
}
