#include "doctest.h"

#include <cmath>

#include "asymptotics.hpp"
#include "fixtures.hpp"

using namespace ahm;

TEST_CASE("defining function basics") {
  MetricSpec hm = make_hm(3, 1.0, {1.0});
  DefiningFunction df(hm);
  // x > 0 at finite radius, decreasing, x r -> 1
  const double x2 = df.x_of_r(2.0), x5 = df.x_of_r(5.0);
  CHECK(x2 > x5);
  CHECK(x5 > 0);
  CHECK(std::fabs(df.xr_minus_1(1e5)) <= 1e-10);
  // inverse round trip
  for (double r : {8.0, 73.0, 1200.0})
    CHECK(df.r_of_x(df.x_of_r(r)) == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("r(x) expansion coefficients") {
  // reference metric: order n-2 coefficient 0, order n-1 equals r0^n/(2n)
  MetricSpec hm = make_hm(3, 1.0, {1.0});
  auto e = DefiningFunction(hm).fit_expansion();
  CHECK(std::fabs(e.c_nm2) <= 1e-6);
  CHECK(e.c_nm1 == doctest::Approx(1.0 / 6.0).epsilon(1e-4));

  // u_{n-1} = 0.3, a = 0.2, n = 3: order-1 coefficient (0.3 - 0.1)/2 = 0.1
  SpecBuilder b({3, 0.2, 1.0, {1.0}});
  b.set_u(2, 0.3);
  auto e2 = DefiningFunction(b.build()).fit_expansion();
  CHECK(e2.c_nm2 == doctest::Approx(0.1).epsilon(1e-4));
}

TEST_CASE("boundary tensors of the reference metric") {
  const int n = 4;
  const double rb = 1.3;
  MetricSpec hm = make_hm(n, rb, {0.7, 2.1});
  BoundaryData bd = boundary_tensors(hm);
  const double rbn = std::pow(rb, n);
  CHECK(bd.theta_xixi.eval(0.3) == doctest::Approx(0.0));
  CHECK(bd.theta_tt.value({0.3, 0.1, 0.2}).max_abs() == 0.0);
  CHECK(bd.kappa_xixi.eval(0.2) == doctest::Approx(-(n - 1.0) * rbn));
  CHECK(bd.kappa_tt.value({0.2, 0.1, 0.2})(0, 0) == doctest::Approx(rbn));
  CHECK(bd.tr_kappa(0.5, {0.1, 0.9}) == doctest::Approx(-rbn));
  CHECK(bd.fit_deviation <= 1e-3);
}

TEST_CASE("trace of theta") {
  // the exact family is trace-free at order n-1
  MetricSpec g = make_hm_type(4, 0.8, 1.1, {1.0, 0.9});
  BoundaryData bd = boundary_tensors(g, false);
  CHECK(std::fabs(bd.tr_theta(0.2, {0.3, 0.4})) <= 1e-14);

  // u_{n-1}=0.1, v_{n-1}=0.2, n=3: tr theta = 2*2*0.3 = 1.2
  SpecBuilder b({3, 0.0, 1.0, {1.0}});
  b.set_u(2, 0.1);
  AngularSeries v = b.angular();
  v.add(0, 0.2, 0.0);
  b.set_v(2, v);
  BoundaryData bd2 = boundary_tensors(b.build(), false);
  CHECK(bd2.tr_theta(0.7, {0.1}) == doctest::Approx(1.2).epsilon(1e-14));
}

TEST_CASE("total energy closed forms") {
  // E(reference) = -r0^n Vol
  MetricSpec hm = make_hm(3, 1.0, {1.0});
  CHECK(total_energy(hm) == doctest::Approx(hm_energy(hm)).epsilon(1e-12));

  // constant v_n shifts E by 2 n c Vol
  SpecBuilder b({3, 0.0, 1.0, {1.0}});
  AngularSeries v = b.angular();
  v.add(0, 0.05, 0.0);
  b.set_v(3, v);
  MetricSpec s = b.build();
  const double vol = s.background().volume_boundary();
  CHECK(total_energy(s) == doctest::Approx((-1.0 + 6.0 * 0.05) * vol).epsilon(1e-12));

  // an oscillatory v_n integrates away
  SpecBuilder b2({3, 0.0, 1.0, {1.0}});
  AngularSeries v2 = b2.angular();
  v2.add(1, 0.2, 0.1);
  b2.set_v(3, v2);
  MetricSpec s2 = b2.build();
  CHECK(total_energy(s2) == doctest::Approx(-vol).epsilon(1e-8));
}

TEST_CASE("energy difference closed forms") {
  MetricSpec hm = make_hm(4, 1.2, {1.0, 0.8});
  CHECK(std::fabs(energy_difference(hm)) <= 1e-12);

  // w_n = c * identity: difference (rb^n - r0^n + 2n(n-2)c) Vol
  const int n = 4;
  SpecBuilder b({n, 0.0, 1.0, {1.0, 0.8}});
  TorusTensorSeries w = b.tensor();
  w.at(0, 0).add_constant(0.03);
  w.at(1, 1).add_constant(0.03);
  b.set_w(n, w);
  MetricSpec s = b.build();
  const double vol = s.background().volume_boundary();
  CHECK(energy_difference(s) ==
        doctest::Approx(2.0 * n * (n - 2.0) * 0.03 * vol).epsilon(1e-12));

  // the exact family: (rb^n - r0^n) Vol with the matched radius
  MetricSpec g = make_hm_type(3, 1.0, 1.0, {1.0});
  const double rb = g.background().r_breve0();
  CHECK(energy_difference(g) ==
        doctest::Approx((std::pow(rb, 3.0) - 1.0) *
                        g.background().volume_boundary())
            .epsilon(1e-12));
}

TEST_CASE("energy is linear in the order-n data") {
  const int n = 4;
  auto build = [&](double un, double vn, double wn) {
    SpecBuilder b({n, 0.1, 1.0, {1.0, 0.8}});
    if (un != 0) b.set_u(n, un);
    if (vn != 0) {
      AngularSeries v = b.angular();
      v.add(0, vn, 0.0);
      v.add(1, 0.3 * vn, 0.0);
      b.set_v(n, v);
    }
    if (wn != 0) {
      TorusTensorSeries w = b.tensor();
      w.at(0, 0).add_constant(wn);
      b.set_w(n, w);
    }
    return total_energy(b.build());
  };
  const double e0 = build(0, 0, 0);
  for (auto [un, vn, wn] : {std::tuple{0.04, -0.02, 0.01},
                            std::tuple{-0.07, 0.05, 0.03}}) {
    const double sum = build(un, vn, wn);
    const double parts = build(un, 0, 0) + build(0, vn, 0) + build(0, 0, wn);
    // affine in the data: the background energy is double counted in parts
    CHECK(sum == doctest::Approx(parts - 2.0 * e0).epsilon(1e-10));
  }
}

TEST_CASE("trace condition") {
  CHECK(l1_condition(make_hm(3, 1.0, {1.0})).pass);
  CHECK(l1_condition(make_hm_type(4, -0.4, 1.0, {1.0, 1.0})).pass);

  SpecBuilder b({3, 0.0, 1.0, {1.0}});
  b.set_u(2, 0.1);
  AngularSeries v = b.angular();
  v.add(0, -0.1, 0.0);
  b.set_v(2, v);
  CHECK(l1_condition(b.build()).pass);

  const L1Result bad = l1_condition(u_only_spec(3, 0.0, 1.0, {1.0}, 0.1));
  CHECK(!bad.pass);
  CHECK(bad.sup == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("trace condition implies faster curvature decay") {
  SpecBuilder b({3, 0.0, 1.0, {1.0}});
  b.set_u(2, 0.1);
  AngularSeries v = b.angular();
  v.add(0, -0.1, 0.0);
  b.set_v(2, v);
  const PowerFit pf = scalar_decay_order(b.build());
  CHECK(pf.order >= 4.0 - 0.1);  // n + 1 - 0.1
  CHECK(!pf.below_floor);

  // reference metric: exactly constant curvature, below any floor
  CHECK(scalar_decay_order(make_hm(3, 1.0, {1.0})).below_floor);
}

TEST_CASE("decay order fitting") {
  const PowerFit pf =
      decay_order([](double r) { return std::pow(r, -3.0); }, 10.0, 1000.0);
  CHECK(pf.order == doctest::Approx(3.0).epsilon(1e-4));
  // each r-derivative steepens the law by one order
  REQUIRE(pf.k_orders.size() == 2);
  CHECK(pf.k_orders[0] == doctest::Approx(4.0).epsilon(1e-3));
  CHECK(pf.k_orders[1] == doctest::Approx(5.0).epsilon(1e-3));
  const PowerFit mixed = decay_order(
      [](double r) { return std::pow(r, -3.0) + 5.0 * std::pow(r, -7.0); },
      100.0, 10000.0);
  CHECK(mixed.order == doctest::Approx(3.0).epsilon(0.05 / 3.0));
  CHECK(decay_order([](double) { return 0.0; }, 10.0, 1000.0).below_floor);
}

TEST_CASE("APE diagnostic distinguishes the trace condition") {
  // exact family: asymptotically Einstein at the faster rate
  MetricSpec g = make_hm_type(3, 1.0, 1.0, {1.0});
  const ApeResult ape = ape_deficit(g);
  CHECK(ape.order >= 3.0 - 0.1);
  CHECK(ape.tr_theta_zero);

  const ApeResult ape_hm = ape_deficit(make_hm(3, 1.0, {1.0}));
  CHECK(ape_hm.order >= 3.0 - 0.1);
}
